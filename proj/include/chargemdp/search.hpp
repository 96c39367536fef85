#pragma once

// Exhaustive search over pure periodic Markov strategies.

#include "chargemdp/charge.hpp"
#include "chargemdp/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <tuple>
#include <vector>

namespace chargemdp {

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Compact pure periodic strategy: choices[(phase - 1) * |S| + s] = action index.
struct PureEncoding {
  std::size_t preperiod = 0;
  std::size_t period = 1;
  std::vector<std::uint32_t> choices;

  PeriodicMarkovStrategy to_strategy(const Mdp& mdp) const {
    const auto n = mdp.num_states();
    std::vector<std::vector<std::size_t>> rows(preperiod + period, std::vector<std::size_t>(n));
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (std::size_t s = 0; s < n; ++s) rows[k][s] = choices[k * n + s];
    return PeriodicMarkovStrategy::pure(mdp, preperiod, rows);
  }

  auto key() const { return std::tie(preperiod, period, choices); }
  bool operator<(const PureEncoding& o) const { return key() < o.key(); }
  bool operator==(const PureEncoding& o) const { return key() == o.key(); }
};

namespace detail {
// True iff (preperiod, period, choices) is already minimal as a phase sequence.
inline bool is_canonical(const PureEncoding& e, std::size_t n_states) {
  auto row = [&](std::size_t k) {
    return std::vector<std::uint32_t>(e.choices.begin() + static_cast<std::ptrdiff_t>(k * n_states),
                                      e.choices.begin() + static_cast<std::ptrdiff_t>((k + 1) * n_states));
  };
  std::vector<std::vector<std::uint32_t>> pre, cyc;
  for (std::size_t k = 0; k < e.preperiod; ++k) pre.push_back(row(k));
  for (std::size_t k = e.preperiod; k < e.preperiod + e.period; ++k) cyc.push_back(row(k));
  canonicalize_eventually_periodic(pre, cyc);
  return pre.size() == e.preperiod && cyc.size() == e.period;
}
}  // namespace detail

/// Number of raw (preperiod, period, choice table) combinations within bounds.
inline long double enumeration_size(const Mdp& mdp, std::size_t max_period, std::size_t max_preperiod) {
  long double per_phase = 1;
  for (const auto& row : mdp.actions) per_phase *= static_cast<long double>(row.size());
  long double total = 0;
  for (std::size_t L = 0; L <= max_preperiod; ++L)
    for (std::size_t q = 1; q <= max_period; ++q) total += std::pow(per_phase, static_cast<long double>(L + q));
  return total;
}

namespace detail {
// Odometer over the choice table, last position fastest.
inline bool advance(PureEncoding& e, const Mdp& mdp) {
  const auto n = mdp.num_states();
  for (std::size_t i = e.choices.size(); i-- > 0;) {
    if (++e.choices[i] < mdp.actions[i % n].size()) return true;
    e.choices[i] = 0;
  }
  return false;
}
}  // namespace detail

/// Calls `visit` once per distinct pure periodic Markov strategy with
/// period <= max_period and preperiod <= max_preperiod, in canonical form,
/// ordered by (preperiod, period, choices).
inline void for_each_pure_periodic(const Mdp& mdp, std::size_t max_period, std::size_t max_preperiod,
                                   const std::function<void(const PureEncoding&)>& visit) {
  const auto n = mdp.num_states();
  for (std::size_t L = 0; L <= max_preperiod; ++L) {
    for (std::size_t q = 1; q <= max_period; ++q) {
      PureEncoding e{L, q, std::vector<std::uint32_t>((L + q) * n, 0)};
      do {
        if (detail::is_canonical(e, n)) visit(e);
      } while (detail::advance(e, mdp));
    }
  }
}

struct RankedStrategy {
  PureEncoding strategy;
  CValue value;
};

struct SearchResult {
  std::vector<RankedStrategy> ranking;  // best first
  const RankedStrategy& best() const { return ranking.front(); }
};

inline constexpr long double kDefaultSearchBudget = 5e6L;

/// Evaluates every pure periodic Markov strategy within bounds. Ambiguous
/// values rank by their smallest candidate; ties go to the lexicographically
/// smaller encoding.
inline SearchResult best_periodic(const Mdp& mdp, const Charge& mu, std::size_t max_period, std::size_t max_preperiod,
                                  long double budget = kDefaultSearchBudget,
                                  std::uint64_t max_horizon = kDefaultHorizon) {
  if (max_period == 0) throw std::invalid_argument("max_period must be >= 1");
  auto size = enumeration_size(mdp, max_period, max_preperiod);
  if (size > budget)
    throw BudgetExceeded("enumeration of " + std::to_string(static_cast<double>(size)) +
                         " strategies exceeds the budget of " + std::to_string(static_cast<double>(budget)));
  SearchResult result;
  for_each_pure_periodic(mdp, max_period, max_preperiod, [&](const PureEncoding& e) {
    result.ranking.push_back({e, payoff(mdp, e.to_strategy(mdp), mu, max_horizon)});
  });
  std::stable_sort(result.ranking.begin(), result.ranking.end(), [](const RankedStrategy& a, const RankedStrategy& b) {
    if (a.value.min() != b.value.min()) return a.value.min() > b.value.min();
    return a.strategy < b.strategy;
  });
  return result;
}

}  // namespace chargemdp
