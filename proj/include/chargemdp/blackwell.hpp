#pragma once

// Blackwell-optimal pure stationary policies by policy iteration over the
// field Q(b) of rational functions in the discount factor b.

#include "chargemdp/mdp.hpp"
#include "chargemdp/rational_function.hpp"

#include <stdexcept>
#include <vector>

namespace chargemdp {

/// Solves A x = rhs over Q(b) by Gaussian elimination with nonzero pivoting.
inline std::vector<RationalFunction> solve_linear(std::vector<std::vector<RationalFunction>> a,
                                                  std::vector<RationalFunction> rhs) {
  const auto n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("singular system over Q(b)");
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      auto f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] = a[row][k] - f * a[col][k];
      rhs[row] = rhs[row] - f * rhs[col];
    }
  }
  std::vector<RationalFunction> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
  return x;
}

/// v_pi(b) per state, the solution of v = r_pi + b P_pi v.
inline std::vector<RationalFunction> discounted_value(const Mdp& mdp, const StationaryStrategy& pi) {
  const auto n = mdp.num_states();
  const auto choice = pi.choices();
  const Polynomial b = Polynomial::x();
  std::vector<std::vector<RationalFunction>> a(n, std::vector<RationalFunction>(n));
  std::vector<RationalFunction> rhs(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& act = mdp.actions[s].at(choice[s]);
    rhs[s] = RationalFunction(act.reward);
    for (std::size_t z = 0; z < n; ++z) {
      Polynomial entry = (s == z ? Polynomial(Rational(1)) : Polynomial()) - b * Polynomial(act.next[z]);
      a[s][z] = RationalFunction(entry);
    }
  }
  return solve_linear(std::move(a), std::move(rhs));
}

/// r(s,a) + b * sum_z p(z|s,a) v(z)
inline RationalFunction action_value(const Mdp& mdp, std::size_t s, std::size_t a,
                                     const std::vector<RationalFunction>& v) {
  const auto& act = mdp.actions[s][a];
  RationalFunction future;
  for (std::size_t z = 0; z < mdp.num_states(); ++z)
    if (act.next[z] != 0) future = future + RationalFunction(act.next[z]) * v[z];
  return RationalFunction(act.reward) + RationalFunction(Polynomial::x()) * future;
}

/// Policy iteration from the all-first-action policy. Each round every state
/// with an action that beats the current one for all b near 1 switches to
/// the lowest-indexed such action.
inline StationaryStrategy blackwell_policy(const Mdp& mdp) {
  require_valid(mdp);
  std::vector<std::size_t> choice(mdp.num_states(), 0);
  while (true) {
    auto pi = StationaryStrategy::pure(mdp, choice);
    auto v = discounted_value(mdp, pi);
    bool changed = false;
    for (std::size_t s = 0; s < mdp.num_states(); ++s) {
      for (std::size_t a = 0; a < mdp.actions[s].size(); ++a) {
        if (a == choice[s]) continue;
        if ((action_value(mdp, s, a, v) - v[s]).sign_near_one() == Sign::positive) {
          choice[s] = a;
          changed = true;
          break;
        }
      }
    }
    if (!changed) return pi;
  }
}

/// Long-run average reward per state: lim_{b -> 1} (1 - b) v_pi(b).
inline std::vector<Rational> average_value(const Mdp& mdp, const StationaryStrategy& pi) {
  RationalFunction one_minus_b(Polynomial(std::vector<Rational>{1, -1}));
  std::vector<Rational> out;
  for (const auto& v : discounted_value(mdp, pi)) out.push_back((one_minus_b * v).value_at_one());
  return out;
}

/// Every pure stationary policy, in lexicographic order of action choices.
inline std::vector<StationaryStrategy> all_pure_stationary(const Mdp& mdp) {
  std::vector<StationaryStrategy> out;
  std::vector<std::size_t> choice(mdp.num_states(), 0);
  while (true) {
    out.push_back(StationaryStrategy::pure(mdp, choice));
    std::size_t i = choice.size();
    while (i > 0) {
      --i;
      if (++choice[i] < mdp.actions[i].size()) break;
      choice[i] = 0;
      if (i == 0) return out;
    }
    if (choice.empty()) return out;
  }
}

}  // namespace chargemdp
