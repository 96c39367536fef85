#pragma once

// Line-oriented text formats for MDPs and strategies.
//
//   mdp
//   initial <state>
//   state <state>
//     action <action> reward <rational> goto <state>
//     action <action> reward <rational> dist <state>:<rational> [<state>:<rational> ...]
//
//   stationary { <state>: <action>[:<rational>] ... ... }
//   periodic preperiod=<L> period=<q> { phase <k> state <s>: <action>[:<rational>] ... ... }
//
// Strategy entries that are left out play the state's first action.

#include "chargemdp/expr.hpp"
#include "chargemdp/mdp.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace chargemdp {

namespace detail {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

// Whitespace-separated tokens with '#' comments removed; braces always stand alone.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::string cur;
  std::size_t cur_line = 0, cur_col = 0;
  auto flush = [&] {
    if (!cur.empty()) out.push_back({cur, cur_line, cur_col});
    cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '#') {
      flush();
      while (i + 1 < text.size() && text[i + 1] != '\n') {
        ++i;
        ++col;
      }
      ++col;
      continue;
    }
    if (c == '\n') {
      flush();
      ++line;
      col = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '{' || c == '}') {
      flush();
      out.push_back({std::string(1, c), line, col});
    } else {
      if (cur.empty()) {
        cur_line = line;
        cur_col = col;
      }
      cur += c;
    }
    ++col;
  }
  flush();
  return out;
}

inline Rational token_rational(const Token& t, std::string_view text) {
  try {
    return parse_rational(std::string(text));
  } catch (const std::exception& e) {
    throw ParseError(t.line, t.column, e.what());
  }
}

inline std::uint64_t token_nat(const Token& t, std::string_view text) {
  auto q = token_rational(t, text);
  if (q.get_den() != 1 || q < 0) throw ParseError(t.line, t.column, "expected a natural number");
  return q.get_num().get_ui();
}

}  // namespace detail

inline Mdp parse_mdp(std::string_view text) {
  using detail::Token;
  std::vector<std::vector<Token>> lines;
  for (auto& t : detail::tokenize(text)) {
    if (lines.empty() || lines.back().front().line != t.line) lines.emplace_back();
    lines.back().push_back(std::move(t));
  }
  if (lines.empty()) throw ParseError(1, 1, "empty MDP file");
  if (lines[0][0].text != "mdp" || lines[0].size() != 1)
    throw ParseError(lines[0][0].line, lines[0][0].column, "expected 'mdp' header");

  Mdp mdp;
  std::optional<Token> initial;
  std::vector<std::vector<std::vector<std::pair<Token, Rational>>>> targets;  // [state][action]
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& l = lines[li];
    const auto& kw = l[0];
    auto fail = [](const Token& t, const std::string& msg) { return ParseError(t.line, t.column, msg); };
    auto need = [&](std::size_t n) {
      if (l.size() < n) throw fail(l.back(), "incomplete '" + kw.text + "' line");
    };
    if (kw.text == "initial") {
      need(2);
      if (l.size() != 2) throw fail(l[2], "unexpected token '" + l[2].text + "'");
      if (initial) throw fail(kw, "duplicate 'initial' line");
      initial = l[1];
    } else if (kw.text == "state") {
      need(2);
      if (l.size() != 2) throw fail(l[2], "unexpected token '" + l[2].text + "'");
      for (const auto& s : mdp.states)
        if (s == l[1].text) throw fail(l[1], "duplicate state '" + s + "'");
      mdp.states.push_back(l[1].text);
      mdp.actions.emplace_back();
      targets.emplace_back();
    } else if (kw.text == "action") {
      if (mdp.states.empty()) throw fail(kw, "action before any state");
      need(6);
      if (l[2].text != "reward") throw fail(l[2], "expected 'reward'");
      Action a{l[1].text, detail::token_rational(l[3], l[3].text), {}};
      for (const auto& other : mdp.actions.back())
        if (other.name == a.name) throw fail(l[1], "duplicate action '" + a.name + "'");
      std::vector<std::pair<Token, Rational>> tg;
      if (l[4].text == "goto") {
        if (l.size() != 6) throw fail(l[6], "unexpected token '" + l[6].text + "'");
        tg.emplace_back(l[5], Rational(1));
      } else if (l[4].text == "dist") {
        for (std::size_t k = 5; k < l.size(); ++k) {
          auto colon = l[k].text.rfind(':');
          if (colon == std::string::npos || colon == 0) throw fail(l[k], "expected <state>:<probability>");
          Token name = l[k];
          name.text = l[k].text.substr(0, colon);
          tg.emplace_back(name, detail::token_rational(l[k], std::string_view(l[k].text).substr(colon + 1)));
        }
      } else {
        throw fail(l[4], "expected 'goto' or 'dist'");
      }
      mdp.actions.back().push_back(std::move(a));
      targets.back().push_back(std::move(tg));
    } else {
      throw fail(kw, "unknown keyword '" + kw.text + "'");
    }
  }

  auto resolve = [&](const Token& t) {
    for (std::size_t i = 0; i < mdp.states.size(); ++i)
      if (mdp.states[i] == t.text) return i;
    throw ParseError(t.line, t.column, "UnknownState: '" + t.text + "'");
  };
  if (!initial) throw ParseError(lines[0][0].line, lines[0][0].column, "missing 'initial' line");
  if (mdp.states.empty()) throw ParseError(lines[0][0].line, lines[0][0].column, "no states declared");
  mdp.initial = resolve(*initial);
  for (std::size_t s = 0; s < mdp.states.size(); ++s)
    for (std::size_t a = 0; a < mdp.actions[s].size(); ++a) {
      auto& next = mdp.actions[s][a].next;
      next.assign(mdp.states.size(), Rational(0));
      for (const auto& [tok, p] : targets[s][a]) next[resolve(tok)] += p;
    }
  return mdp;
}

using Strategy = std::variant<StationaryStrategy, PeriodicMarkovStrategy>;

inline Strategy parse_strategy(std::string_view text, const Mdp& mdp) {
  using detail::Token;
  auto toks = detail::tokenize(text);
  std::size_t i = 0;
  auto error = [&](const std::string& msg) {
    if (i < toks.size()) return ParseError(toks[i].line, toks[i].column, msg);
    std::size_t line = toks.empty() ? 1 : toks.back().line;
    return ParseError(line, 1, msg + " (at end of input)");
  };
  auto next = [&]() -> const Token& {
    if (i >= toks.size()) throw error("unexpected end of input");
    return toks[i++];
  };
  auto keyed_nat = [&](const std::string& key) {
    const auto& t = next();
    if (t.text.rfind(key + "=", 0) != 0) {
      --i;
      throw error("expected '" + key + "=<n>'");
    }
    return detail::token_nat(t, std::string_view(t.text).substr(key.size() + 1));
  };

  // Reads "<state>: <action>[:p] ..." up to the next state header, phase or '}'.
  auto read_entry = [&](std::size_t state) {
    const auto n_actions = mdp.actions[state].size();
    ActionDistribution d(n_actions, Rational(0));
    std::size_t count = 0;
    bool any_prob = false, any_bare = false;
    const Token* first = nullptr;
    while (i < toks.size() && toks[i].text != "}" && toks[i].text != "phase" && toks[i].text.back() != ':') {
      const auto& t = toks[i];
      if (!first) first = &t;
      auto colon = t.text.find(':');
      std::string name = t.text.substr(0, colon);
      std::size_t a;
      try {
        a = mdp.action_index(state, name);
      } catch (const std::exception& e) {
        throw ParseError(t.line, t.column, e.what());
      }
      if (colon == std::string::npos) {
        d[a] += 1;
        any_bare = true;
      } else {
        d[a] += detail::token_rational(t, std::string_view(t.text).substr(colon + 1));
        any_prob = true;
      }
      ++count;
      ++i;
    }
    if (count == 0) throw error("expected an action");
    if (any_bare && (any_prob || count > 1))
      throw ParseError(first->line, first->column, "randomized entries need an explicit probability per action");
    try {
      detail::check_distribution(d, n_actions, "state " + mdp.states[state]);
    } catch (const std::exception& e) {
      throw ParseError(first->line, first->column, e.what());
    }
    return d;
  };
  auto state_header = [&]() {
    const auto& t = next();
    if (t.text.size() < 2 || t.text.back() != ':') {
      --i;
      throw error("expected '<state>:'");
    }
    try {
      return mdp.state_index(t.text.substr(0, t.text.size() - 1));
    } catch (const std::exception& e) {
      throw ParseError(t.line, t.column, std::string("UnknownState: ") + e.what());
    }
  };
  auto defaults = [&]() {
    std::vector<ActionDistribution> rule;
    for (std::size_t s = 0; s < mdp.num_states(); ++s) rule.push_back(detail::point(mdp.actions[s].size(), 0));
    return rule;
  };
  auto expect = [&](const std::string& what) {
    const auto& t = next();
    if (t.text != what) {
      --i;
      throw error("expected '" + what + "'");
    }
  };

  const auto& kind = next();
  Strategy out;
  if (kind.text == "stationary") {
    expect("{");
    StationaryStrategy st{defaults()};
    while (i < toks.size() && toks[i].text != "}") {
      auto s = state_header();
      st.rule[s] = read_entry(s);
    }
    expect("}");
    out = st;
  } else if (kind.text == "periodic") {
    auto L = keyed_nat("preperiod");
    auto q = keyed_nat("period");
    if (q == 0) {
      --i;
      throw error("period must be >= 1");
    }
    expect("{");
    std::vector<std::vector<ActionDistribution>> rows(L + q, defaults());
    while (i < toks.size() && toks[i].text != "}") {
      expect("phase");
      const auto& kt = next();
      auto k = detail::token_nat(kt, kt.text);
      if (k < 1 || k > L + q) throw ParseError(kt.line, kt.column, "phase must be in 1.." + std::to_string(L + q));
      expect("state");
      auto s = state_header();
      rows[k - 1][s] = read_entry(s);
    }
    expect("}");
    std::vector<std::vector<ActionDistribution>> pre(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(L));
    std::vector<std::vector<ActionDistribution>> cyc(rows.begin() + static_cast<std::ptrdiff_t>(L), rows.end());
    out = PeriodicMarkovStrategy(std::move(pre), std::move(cyc));
  } else {
    --i;
    throw error("expected 'stationary' or 'periodic'");
  }
  if (i != toks.size()) throw error("unexpected trailing input");
  return out;
}

inline std::string to_text(const Mdp& mdp) {
  std::ostringstream os;
  os << "mdp\ninitial " << mdp.states[mdp.initial] << "\n";
  for (std::size_t s = 0; s < mdp.num_states(); ++s) {
    os << "state " << mdp.states[s] << "\n";
    for (const auto& a : mdp.actions[s]) {
      os << "  action " << a.name << " reward " << to_string(a.reward);
      std::size_t nonzero = 0, target = 0;
      for (std::size_t z = 0; z < a.next.size(); ++z)
        if (a.next[z] != 0) ++nonzero, target = z;
      if (nonzero == 1 && a.next[target] == 1) {
        os << " goto " << mdp.states[target] << "\n";
        continue;
      }
      os << " dist";
      for (std::size_t z = 0; z < a.next.size(); ++z)
        if (a.next[z] != 0) os << " " << mdp.states[z] << ":" << to_string(a.next[z]);
      os << "\n";
    }
  }
  return os.str();
}

namespace detail {
inline std::string render_entry(const Mdp& mdp, std::size_t s, const ActionDistribution& d) {
  std::string out;
  for (std::size_t a = 0; a < d.size(); ++a) {
    if (d[a] == 0) continue;
    if (!out.empty()) out += " ";
    out += mdp.actions[s][a].name;
    if (d[a] != 1) out += ":" + to_string(d[a]);
  }
  return out;
}
}  // namespace detail

inline std::string to_text(const Mdp& mdp, const StationaryStrategy& st) {
  std::string out = "stationary {";
  for (std::size_t s = 0; s < mdp.num_states(); ++s)
    out += " " + mdp.states[s] + ": " + detail::render_entry(mdp, s, st.rule[s]);
  return out + " }";
}

/// Entries that play the first action with certainty are left implicit.
inline std::string to_text(const Mdp& mdp, const PeriodicMarkovStrategy& st) {
  std::string out = "periodic preperiod=" + std::to_string(st.preperiod()) + " period=" + std::to_string(st.period()) +
                    " {";
  for (std::size_t k = 1; k <= st.preperiod() + st.period(); ++k)
    for (std::size_t s = 0; s < mdp.num_states(); ++s) {
      const auto& d = st.phase(k)[s];
      if (d == detail::point(d.size(), 0)) continue;
      out += " phase " + std::to_string(k) + " state " + mdp.states[s] + ": " + detail::render_entry(mdp, s, d);
    }
  return out + " }";
}

}  // namespace chargemdp
