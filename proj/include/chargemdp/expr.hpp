#pragma once

// Text forms of sets, charges and streams: recursive-descent parsers with
// line/column diagnostics, and printers whose output re-parses to an equal
// value.
//
//   set    := "odds" | "evens" | "nat" | "empty" | "multiples(" nat ")"
//           | "ap(" nat "," nat ")" | set "|" set | set "&" set | "!" set
//           | "shift(" set "," int ")" | "contract(" set "," nat ")" | "(" set ")"
//   charge := "frequency" | "geometric(" rational ")" | "pointmass(" nat ")"
//           | "restrict(" charge "," set ")" | "dyadiclimit"
//           | "mix(" rational ":" charge { "," rational ":" charge } ")"
//   stream := "stream([" rationals "];[" rationals "])"
//
// Precedence: "!" > "&" > "|". Whitespace is insignificant; '#' starts a
// comment running to the end of the line.

#include "chargemdp/charge.hpp"
#include "chargemdp/periodic_set.hpp"
#include "chargemdp/rational.hpp"
#include "chargemdp/stream.hpp"

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace chargemdp {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool match(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!match(c)) fail(std::string("expected '") + c + "'" + found());
  }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string digits() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t nat(std::uint64_t min = 1) {
    auto where = position();
    auto d = digits();
    if (d.empty()) fail("expected a natural number" + found());
    if (d.size() > 18) fail_at(where, "number too large");
    auto v = std::stoull(d);
    if (v < min) fail_at(where, "expected a natural number >= " + std::to_string(min));
    return v;
  }

  std::int64_t integer() {
    bool neg = match('-');
    if (!neg) match('+');
    return static_cast<std::int64_t>(nat(0)) * (neg ? -1 : 1);
  }

  Rational rational() {
    skip_space();
    bool neg = match('-');
    if (!neg) match('+');
    auto num = digits();
    if (num.empty()) fail("expected a rational number" + found());
    std::string den = "1";
    if (match('/')) {
      auto where = position();
      den = digits();
      if (den.empty()) fail("expected a denominator" + found());
      if (mpz_class(den) == 0) fail_at(where, "zero denominator");
    }
    Rational q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }

  std::size_t position() {
    skip_space();
    return pos_;
  }
  void seek(std::size_t p) { pos_ = p; }

  [[noreturn]] void fail(const std::string& msg) { fail_at(position(), msg); }

  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, msg);
  }

  std::string found() {
    if (at_end()) return ", found end of input";
    return std::string(", found '") + text_[pos_] + "'";
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline PeriodicSet parse_set_or(Cursor& c);

inline PeriodicSet parse_set_primary(Cursor& c) {
  if (c.match('(')) {
    auto s = parse_set_or(c);
    c.expect(')');
    return s;
  }
  auto where = c.position();
  auto w = c.word();
  if (w == "odds") return PeriodicSet::odds();
  if (w == "evens") return PeriodicSet::evens();
  if (w == "nat") return PeriodicSet::all();
  if (w == "empty") return PeriodicSet::empty();
  if (w == "multiples") {
    c.expect('(');
    auto d = c.nat();
    c.expect(')');
    return PeriodicSet::multiples(d);
  }
  if (w == "ap") {
    c.expect('(');
    auto a = c.nat();
    c.expect(',');
    auto d = c.nat();
    c.expect(')');
    return PeriodicSet::arithmetic(a, d);
  }
  if (w == "shift") {
    c.expect('(');
    auto s = parse_set_or(c);
    c.expect(',');
    auto k = c.integer();
    c.expect(')');
    return s.shift(k);
  }
  if (w == "contract") {
    c.expect('(');
    auto s = parse_set_or(c);
    c.expect(',');
    auto d = c.nat();
    c.expect(')');
    return s.contract(d);
  }
  if (w.empty()) c.fail("expected a set expression" + c.found());
  c.fail_at(where, "unknown set '" + w + "'");
}

inline PeriodicSet parse_set_unary(Cursor& c) {
  if (c.match('!')) return !parse_set_unary(c);
  return parse_set_primary(c);
}

inline PeriodicSet parse_set_and(Cursor& c) {
  auto s = parse_set_unary(c);
  while (c.match('&')) s = s & parse_set_unary(c);
  return s;
}

inline PeriodicSet parse_set_or(Cursor& c) {
  auto s = parse_set_and(c);
  while (c.match('|')) s = s | parse_set_and(c);
  return s;
}

inline Charge parse_charge(Cursor& c) {
  auto where = c.position();
  auto w = c.word();
  try {
    if (w == "frequency") return Charge::frequency();
    if (w == "dyadiclimit") return Charge::dyadic_limit();
    if (w == "geometric") {
      c.expect('(');
      auto b = c.rational();
      c.expect(')');
      return Charge::geometric(b);
    }
    if (w == "pointmass") {
      c.expect('(');
      auto t = c.nat();
      c.expect(')');
      return Charge::point_mass(t);
    }
    if (w == "restrict") {
      c.expect('(');
      auto base = parse_charge(c);
      c.expect(',');
      auto s = parse_set_or(c);
      c.expect(')');
      return Charge::restrict(base, s);
    }
    if (w == "mix") {
      c.expect('(');
      std::vector<WeightedCharge> parts;
      do {
        auto weight = c.rational();
        c.expect(':');
        parts.emplace_back(weight, parse_charge(c));
      } while (c.match(','));
      c.expect(')');
      return Charge::mix(std::move(parts));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    c.fail_at(where, e.what());
  }
  if (w.empty()) c.fail("expected a charge expression" + c.found());
  c.fail_at(where, "unknown charge '" + w + "'");
}

inline std::vector<Rational> parse_rational_list(Cursor& c) {
  std::vector<Rational> out;
  c.expect('[');
  if (c.match(']')) return out;
  do {
    out.push_back(c.rational());
  } while (c.match(','));
  c.expect(']');
  return out;
}

template <class T, class F>
T parse_whole(std::string_view text, F f) {
  Cursor c(text);
  T value = f(c);
  if (!c.at_end()) c.fail("unexpected trailing input" + c.found());
  return value;
}

}  // namespace detail

inline PeriodicSet parse_set(std::string_view text) {
  return detail::parse_whole<PeriodicSet>(text, [](detail::Cursor& c) { return detail::parse_set_or(c); });
}

inline Charge parse_charge(std::string_view text) {
  return detail::parse_whole<Charge>(text, [](detail::Cursor& c) { return detail::parse_charge(c); });
}

inline RationalStream parse_stream(std::string_view text) {
  return detail::parse_whole<RationalStream>(text, [](detail::Cursor& c) {
    auto where = c.position();
    if (c.word() != "stream") c.fail_at(where, "expected 'stream('");
    c.expect('(');
    auto pre = detail::parse_rational_list(c);
    c.expect(';');
    auto cyc_at = c.position();
    auto cyc = detail::parse_rational_list(c);
    c.expect(')');
    if (cyc.empty()) c.fail_at(cyc_at, "stream cycle must be nonempty");
    return RationalStream(std::move(pre), std::move(cyc));
  });
}

inline std::string to_expr(const PeriodicSet& s) {
  if (s == PeriodicSet::empty()) return "empty";
  if (s == PeriodicSet::all()) return "nat";
  if (s == PeriodicSet::odds()) return "odds";
  if (s == PeriodicSet::evens()) return "evens";
  const auto m = s.preperiod_length();
  const auto p = s.period();
  if (m == 0 && s.residues() == std::vector<std::uint64_t>{0}) return "multiples(" + std::to_string(p) + ")";
  std::vector<std::string> terms;
  const auto& bits = s.preperiod_bits();
  for (std::uint64_t i = 0; i < m;) {
    if (!bits[i]) {
      ++i;
      continue;
    }
    auto j = i;
    while (j + 1 < m && bits[j + 1]) ++j;
    // stages i+1 .. j+1
    terms.push_back("(ap(" + std::to_string(i + 1) + ",1) & !ap(" + std::to_string(j + 2) + ",1))");
    i = j + 1;
  }
  for (auto r : s.residues())
    terms.push_back("ap(" + std::to_string(PeriodicSet::representative(m, p, r)) + "," + std::to_string(p) + ")");
  if (terms.empty()) return "empty";
  std::string out = terms[0];
  for (std::size_t k = 1; k < terms.size(); ++k) out += " | " + terms[k];
  return out;
}

inline std::string to_expr(const Charge& mu) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Charge::Frequency>) {
          return "frequency";
        } else if constexpr (std::is_same_v<T, Charge::DyadicLimit>) {
          return "dyadiclimit";
        } else if constexpr (std::is_same_v<T, Charge::Geometric>) {
          return "geometric(" + to_string(n.beta) + ")";
        } else if constexpr (std::is_same_v<T, Charge::PointMass>) {
          return "pointmass(" + std::to_string(n.stage) + ")";
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Charge::Restrict>>) {
          return "restrict(" + to_expr(n->base) + ", " + to_expr(n->on) + ")";
        } else {
          std::string s = "mix(";
          for (std::size_t i = 0; i < n->parts.size(); ++i) {
            if (i) s += ", ";
            s += to_string(n->parts[i].first) + ":" + to_expr(n->parts[i].second);
          }
          return s + ")";
        }
      },
      mu.node());
}

inline std::string to_expr(const RationalStream& f) {
  auto list = [](const std::vector<Rational>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += to_string(v[i]);
    }
    return s + "]";
  };
  return "stream(" + list(f.preperiod()) + ";" + list(f.cycle()) + ")";
}

}  // namespace chargemdp
