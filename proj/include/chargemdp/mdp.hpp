#pragma once

// Finite MDPs with exact rational data, stationary and periodic Markov
// strategies, and the exact stream of expected stage rewards.

#include "chargemdp/charge.hpp"
#include "chargemdp/rational.hpp"
#include "chargemdp/sequence.hpp"
#include "chargemdp/stream.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chargemdp {

struct Action {
  std::string name;
  Rational reward;
  std::vector<Rational> next;  // probability of each successor state
};

struct Mdp {
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<std::vector<Action>> actions;  // per state, in declaration order

  std::size_t num_states() const { return states.size(); }

  std::size_t state_index(const std::string& name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return i;
    throw std::out_of_range("unknown state '" + name + "'");
  }

  std::size_t action_index(std::size_t s, const std::string& name) const {
    for (std::size_t a = 0; a < actions[s].size(); ++a)
      if (actions[s][a].name == name) return a;
    throw std::out_of_range("state '" + states[s] + "' has no action '" + name + "'");
  }

  bool is_deterministic() const {
    for (const auto& row : actions)
      for (const auto& a : row) {
        int ones = 0;
        for (const auto& p : a.next) {
          if (p == 1) ++ones;
          else if (p != 0) return false;
        }
        if (ones != 1) return false;
      }
    return true;
  }

  Rational min_reward() const;
  Rational max_reward() const;
};

inline Rational Mdp::min_reward() const {
  Rational r = actions.at(0).at(0).reward;
  for (const auto& row : actions)
    for (const auto& a : row) r = std::min(r, a.reward);
  return r;
}

inline Rational Mdp::max_reward() const {
  Rational r = actions.at(0).at(0).reward;
  for (const auto& row : actions)
    for (const auto& a : row) r = std::max(r, a.reward);
  return r;
}

struct ValidationIssue {
  enum class Kind { RowSumError, MissingAction, UnknownState };
  Kind kind;
  std::string where;
  std::string message;
};

inline const char* kind_name(ValidationIssue::Kind k) {
  switch (k) {
    case ValidationIssue::Kind::RowSumError: return "RowSumError";
    case ValidationIssue::Kind::MissingAction: return "MissingAction";
    case ValidationIssue::Kind::UnknownState: return "UnknownState";
  }
  return "?";
}

/// All invariant violations; empty means the MDP is well formed.
inline std::vector<ValidationIssue> validate(const Mdp& mdp) {
  using K = ValidationIssue::Kind;
  std::vector<ValidationIssue> issues;
  const auto n = mdp.num_states();
  if (n == 0) issues.push_back({K::UnknownState, "mdp", "no states"});
  if (mdp.initial >= n) issues.push_back({K::UnknownState, "initial", "initial state index out of range"});
  if (mdp.actions.size() != n)
    issues.push_back({K::UnknownState, "mdp", "action table has " + std::to_string(mdp.actions.size()) +
                                                   " rows for " + std::to_string(n) + " states"});
  for (std::size_t s = 0; s < std::min(n, mdp.actions.size()); ++s) {
    const std::string at = "state " + mdp.states[s];
    if (mdp.actions[s].empty()) issues.push_back({K::MissingAction, at, "no actions"});
    for (const auto& a : mdp.actions[s]) {
      const std::string where = at + " action " + a.name;
      if (a.next.size() != n) {
        issues.push_back({K::UnknownState, where, "transition row refers to " + std::to_string(a.next.size()) +
                                                      " states, expected " + std::to_string(n)});
        continue;
      }
      Rational sum = 0;
      bool in_range = true;
      for (const auto& p : a.next) {
        sum += p;
        in_range = in_range && p >= 0 && p <= 1;
      }
      if (!in_range) issues.push_back({K::RowSumError, where, "probability outside [0, 1]"});
      if (sum != 1) issues.push_back({K::RowSumError, where, "row sums to " + to_string(sum)});
    }
  }
  return issues;
}

class InvalidMdp : public Error {
 public:
  explicit InvalidMdp(const std::vector<ValidationIssue>& issues) : Error(render(issues)), issues_(issues) {}
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  static std::string render(const std::vector<ValidationIssue>& issues) {
    std::string s = "invalid MDP:";
    for (const auto& i : issues) s += std::string("\n  ") + kind_name(i.kind) + " at " + i.where + ": " + i.message;
    return s;
  }
  std::vector<ValidationIssue> issues_;
};

inline void require_valid(const Mdp& mdp) {
  auto issues = validate(mdp);
  if (!issues.empty()) throw InvalidMdp(issues);
}

using ActionDistribution = std::vector<Rational>;

namespace detail {
inline void check_distribution(const ActionDistribution& d, std::size_t n_actions, const std::string& where) {
  if (d.size() != n_actions) throw std::invalid_argument(where + ": distribution over wrong number of actions");
  Rational sum = 0;
  for (const auto& p : d) {
    if (p < 0) throw std::invalid_argument(where + ": negative probability");
    sum += p;
  }
  if (sum != 1) throw std::invalid_argument(where + ": action probabilities sum to " + to_string(sum));
}

inline ActionDistribution point(std::size_t n_actions, std::size_t a) {
  ActionDistribution d(n_actions, Rational(0));
  d.at(a) = 1;
  return d;
}
}  // namespace detail

struct StationaryStrategy {
  std::vector<ActionDistribution> rule;  // per state

  static StationaryStrategy pure(const Mdp& mdp, const std::vector<std::size_t>& choice) {
    StationaryStrategy s;
    for (std::size_t i = 0; i < mdp.num_states(); ++i)
      s.rule.push_back(detail::point(mdp.actions[i].size(), choice.at(i)));
    return s;
  }

  bool is_pure() const {
    for (const auto& d : rule)
      for (const auto& p : d)
        if (p != 0 && p != 1) return false;
    return true;
  }

  /// Action index per state; requires a pure strategy.
  std::vector<std::size_t> choices() const {
    std::vector<std::size_t> out;
    for (const auto& d : rule) {
      std::size_t a = 0;
      while (a < d.size() && d[a] != 1) ++a;
      if (a == d.size()) throw std::logic_error("strategy is not pure");
      out.push_back(a);
    }
    return out;
  }

  void check(const Mdp& mdp) const {
    if (rule.size() != mdp.num_states()) throw std::invalid_argument("strategy covers wrong number of states");
    for (std::size_t s = 0; s < rule.size(); ++s)
      detail::check_distribution(rule[s], mdp.actions[s].size(), "state " + mdp.states[s]);
  }

  bool operator==(const StationaryStrategy&) const = default;
};

/// Markov strategy whose rule depends on the stage only through its phase:
/// stage t <= L uses phase t, later stages cycle through phases L+1..L+q.
class PeriodicMarkovStrategy {
 public:
  using PhaseRule = std::vector<ActionDistribution>;  // per state

  PeriodicMarkovStrategy(std::vector<PhaseRule> preperiod, std::vector<PhaseRule> cycle)
      : pre_(std::move(preperiod)), cycle_(std::move(cycle)) {
    if (cycle_.empty()) throw std::invalid_argument("strategy period must be >= 1");
    canonicalize_eventually_periodic(pre_, cycle_);
  }

  static PeriodicMarkovStrategy from(const StationaryStrategy& s) { return {{}, {s.rule}}; }

  /// choices[phase][state] = action index, phases 0..L+q-1.
  static PeriodicMarkovStrategy pure(const Mdp& mdp, std::size_t preperiod,
                                     const std::vector<std::vector<std::size_t>>& choices) {
    if (choices.size() <= preperiod) throw std::invalid_argument("pure strategy needs at least one cyclic phase");
    std::vector<PhaseRule> rows;
    for (const auto& phase : choices) {
      PhaseRule r;
      for (std::size_t s = 0; s < mdp.num_states(); ++s) r.push_back(detail::point(mdp.actions[s].size(), phase.at(s)));
      rows.push_back(std::move(r));
    }
    std::vector<PhaseRule> pre(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(preperiod));
    std::vector<PhaseRule> cyc(rows.begin() + static_cast<std::ptrdiff_t>(preperiod), rows.end());
    return {std::move(pre), std::move(cyc)};
  }

  std::size_t preperiod() const { return pre_.size(); }
  std::size_t period() const { return cycle_.size(); }
  const std::vector<PhaseRule>& preperiod_rules() const { return pre_; }
  const std::vector<PhaseRule>& cycle_rules() const { return cycle_; }

  /// Rule for phase k in 1..L+q.
  const PhaseRule& phase(std::size_t k) const {
    if (k == 0 || k > pre_.size() + cycle_.size()) throw std::out_of_range("phase out of range");
    return k <= pre_.size() ? pre_[k - 1] : cycle_[k - pre_.size() - 1];
  }

  /// Phase (1-based) used at stage t.
  std::size_t phase_of_stage(std::uint64_t t) const {
    if (t <= pre_.size()) return static_cast<std::size_t>(t);
    return pre_.size() + 1 + static_cast<std::size_t>((t - pre_.size() - 1) % cycle_.size());
  }

  const PhaseRule& at_stage(std::uint64_t t) const { return phase(phase_of_stage(t)); }

  bool is_pure() const {
    for (std::size_t k = 1; k <= pre_.size() + cycle_.size(); ++k)
      for (const auto& d : phase(k))
        for (const auto& p : d)
          if (p != 0 && p != 1) return false;
    return true;
  }

  void check(const Mdp& mdp) const {
    for (std::size_t k = 1; k <= pre_.size() + cycle_.size(); ++k) {
      const auto& r = phase(k);
      if (r.size() != mdp.num_states()) throw std::invalid_argument("strategy phase covers wrong number of states");
      for (std::size_t s = 0; s < r.size(); ++s)
        detail::check_distribution(r[s], mdp.actions[s].size(),
                                   "phase " + std::to_string(k) + " state " + mdp.states[s]);
    }
  }

  bool operator==(const PeriodicMarkovStrategy&) const = default;

 private:
  std::vector<PhaseRule> pre_;
  std::vector<PhaseRule> cycle_;
};

class CycleNotFound : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kDefaultHorizon = 4096;

/// d_1, ..., d_T: the state distribution at each stage.
inline std::vector<std::vector<Rational>> state_distributions(const Mdp& mdp, const PeriodicMarkovStrategy& sigma,
                                                              std::uint64_t stages) {
  const auto n = mdp.num_states();
  std::vector<Rational> d(n, Rational(0));
  d[mdp.initial] = 1;
  std::vector<std::vector<Rational>> out;
  for (std::uint64_t t = 1; t <= stages; ++t) {
    out.push_back(d);
    const auto& rule = sigma.at_stage(t);
    std::vector<Rational> next(n, Rational(0));
    for (std::size_t s = 0; s < n; ++s) {
      if (d[s] == 0) continue;
      for (std::size_t a = 0; a < rule[s].size(); ++a) {
        if (rule[s][a] == 0) continue;
        Rational w = d[s] * rule[s][a];
        const auto& row = mdp.actions[s][a].next;
        for (std::size_t z = 0; z < n; ++z)
          if (row[z] != 0) next[z] += w * row[z];
      }
    }
    d = std::move(next);
  }
  return out;
}

/// The stream t -> E_sigma[r_t], found by exact recurrence of (phase, distribution).
/// Throws CycleNotFound unless preperiod plus cycle fit within `max_horizon` stages.
inline RationalStream expected_reward_stream(const Mdp& mdp, const PeriodicMarkovStrategy& sigma,
                                             std::uint64_t max_horizon = kDefaultHorizon) {
  if (max_horizon == 0) throw std::invalid_argument("max_horizon must be >= 1");
  const auto n = mdp.num_states();
  const auto L = sigma.preperiod();
  const auto q = sigma.period();
  std::vector<Rational> d(n, Rational(0));
  d[mdp.initial] = 1;
  std::map<std::pair<std::size_t, std::vector<Rational>>, std::uint64_t> seen;
  std::vector<Rational> rewards;
  for (std::uint64_t t = 1; t <= max_horizon + 1; ++t) {
    if (t > L) {
      auto key = std::make_pair(static_cast<std::size_t>((t - L - 1) % q), d);
      auto [it, inserted] = seen.emplace(std::move(key), t);
      if (!inserted) {
        auto t0 = it->second;
        std::vector<Rational> pre(rewards.begin(), rewards.begin() + static_cast<std::ptrdiff_t>(t0 - 1));
        std::vector<Rational> cyc(rewards.begin() + static_cast<std::ptrdiff_t>(t0 - 1), rewards.end());
        return RationalStream(std::move(pre), std::move(cyc));
      }
    }
    if (t == max_horizon + 1) break;
    const auto& rule = sigma.at_stage(t);
    Rational r = 0;
    std::vector<Rational> next(n, Rational(0));
    for (std::size_t s = 0; s < n; ++s) {
      if (d[s] == 0) continue;
      for (std::size_t a = 0; a < rule[s].size(); ++a) {
        if (rule[s][a] == 0) continue;
        const auto& act = mdp.actions[s][a];
        Rational w = d[s] * rule[s][a];
        r += w * act.reward;
        for (std::size_t z = 0; z < n; ++z)
          if (act.next[z] != 0) next[z] += w * act.next[z];
      }
    }
    rewards.push_back(std::move(r));
    d = std::move(next);
  }
  throw CycleNotFound("no exact recurrence of (phase, state distribution) within " + std::to_string(max_horizon) +
                      " stages");
}

inline RationalStream expected_reward_stream(const Mdp& mdp, const StationaryStrategy& sigma,
                                             std::uint64_t max_horizon = kDefaultHorizon) {
  return expected_reward_stream(mdp, PeriodicMarkovStrategy::from(sigma), max_horizon);
}

/// u_mu(sigma): the charge-weighted aggregate of the expected reward stream.
template <class Strategy>
CValue payoff(const Mdp& mdp, const Strategy& sigma, const Charge& mu, std::uint64_t max_horizon = kDefaultHorizon) {
  return integrate(mu, expected_reward_stream(mdp, sigma, max_horizon));
}

}  // namespace chargemdp
