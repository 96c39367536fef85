#pragma once

// Test-only reference computations, independent of the library's fast paths:
// membership enumeration, truncated sums, and plain Gaussian elimination over Q.

#include "chargemdp/chargemdp.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using chargemdp::Mdp;
using chargemdp::PeriodicSet;
using chargemdp::Rational;
using chargemdp::RationalStream;

/// Membership table of S on 1..horizon.
inline std::vector<bool> members(const PeriodicSet& s, std::uint64_t horizon) {
  std::vector<bool> out(horizon);
  for (std::uint64_t n = 1; n <= horizon; ++n) out[n - 1] = s.contains(n);
  return out;
}

inline std::vector<bool> members(const std::function<bool(std::uint64_t)>& pred, std::uint64_t horizon) {
  std::vector<bool> out(horizon);
  for (std::uint64_t n = 1; n <= horizon; ++n) out[n - 1] = pred(n);
  return out;
}

/// Horizon past which two eventually periodic sets agreeing so far agree forever.
inline std::uint64_t agreement_horizon(const PeriodicSet& a, const PeriodicSet& b) {
  return a.preperiod_length() + b.preperiod_length() + 2 * std::lcm(a.period(), b.period());
}

/// |S & {1..N}| / N as a double.
inline double frequency(const PeriodicSet& s, std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t t = 1; t <= n; ++t) count += s.contains(t);
  return static_cast<double>(count) / static_cast<double>(n);
}

/// (1/N) sum_{t <= N} f(t) in floating point.
inline double cesaro(const RationalStream& f, std::uint64_t n) {
  double sum = 0;
  for (std::uint64_t t = 1; t <= n; ++t) sum += f.at(t).get_d();
  return sum / static_cast<double>(n);
}

/// mu_n(f): Cesaro mean of k -> f(k 2^n), by walking k over one full period window far out.
inline Rational dyadic_term(const RationalStream& f, unsigned n) {
  const std::uint64_t p = f.cycle().size();
  const std::uint64_t scale = std::uint64_t{1} << n;
  const std::uint64_t k0 = f.preperiod().size() + 1;
  Rational sum = 0;
  for (std::uint64_t k = k0; k < k0 + p; ++k) sum += f.at(k * scale);
  return sum / static_cast<unsigned long>(p);
}

/// Solves A x = b over Q.
inline std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const auto n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

/// v = (I - beta P_pi)^{-1} r_pi at a fixed rational beta.
inline std::vector<Rational> discounted_at(const Mdp& mdp, const std::vector<std::size_t>& choice,
                                           const Rational& beta) {
  const auto n = mdp.num_states();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  std::vector<Rational> b(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& act = mdp.actions[s][choice[s]];
    b[s] = act.reward;
    for (std::size_t z = 0; z < n; ++z) a[s][z] = Rational(s == z ? 1 : 0) - beta * act.next[z];
  }
  return solve(std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// Generators

inline PeriodicSet random_set(std::mt19937_64& rng, std::uint64_t max_pre = 6, std::uint64_t max_period = 8) {
  std::uniform_int_distribution<std::uint64_t> pre_len(0, max_pre), per(1, max_period);
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> bits(pre_len(rng));
  for (auto&& b : bits) b = coin(rng);
  auto p = per(rng);
  std::vector<std::uint64_t> residues;
  for (std::uint64_t r = 0; r < p; ++r)
    if (coin(rng)) residues.push_back(r);
  return PeriodicSet::make(std::move(bits), p, residues);
}

inline Rational random_rational(std::mt19937_64& rng, long lo = -4, long hi = 4, unsigned long max_den = 6) {
  std::uniform_int_distribution<long> num(lo * static_cast<long>(max_den), hi * static_cast<long>(max_den));
  std::uniform_int_distribution<unsigned long> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline RationalStream random_stream(std::mt19937_64& rng, std::size_t max_pre = 5, std::size_t max_cycle = 8) {
  std::uniform_int_distribution<std::size_t> pre_len(0, max_pre), cyc_len(1, max_cycle);
  std::vector<Rational> pre(pre_len(rng)), cyc(cyc_len(rng));
  for (auto& v : pre) v = random_rational(rng);
  for (auto& v : cyc) v = random_rational(rng);
  return RationalStream(std::move(pre), std::move(cyc));
}

/// Transition row with small-denominator rational probabilities.
inline std::vector<Rational> random_row(std::mt19937_64& rng, std::size_t n, bool deterministic) {
  std::vector<Rational> row(n, Rational(0));
  if (deterministic) {
    row[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = 1;
    return row;
  }
  std::uniform_int_distribution<long> w(0, 4);
  long total = 0;
  std::vector<long> ws(n);
  for (auto& x : ws) total += (x = w(rng));
  if (total == 0) {
    ws[0] = 1;
    total = 1;
  }
  for (std::size_t z = 0; z < n; ++z) {
    row[z] = Rational(ws[z], static_cast<unsigned long>(total));
    row[z].canonicalize();
  }
  return row;
}

inline Mdp random_mdp(std::mt19937_64& rng, std::size_t states, std::size_t actions, bool deterministic) {
  Mdp m;
  m.initial = 0;
  for (std::size_t s = 0; s < states; ++s) {
    m.states.push_back("s" + std::to_string(s + 1));
    std::vector<chargemdp::Action> row;
    for (std::size_t a = 0; a < actions; ++a)
      row.push_back({"a" + std::to_string(a + 1), random_rational(rng, 0, 3, 4), random_row(rng, states, deterministic)});
    m.actions.push_back(std::move(row));
  }
  return m;
}

}  // namespace oracle
