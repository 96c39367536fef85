#pragma once

// Reference instances and their verifiers:
//
//  * the even-or-odd MDP with the charge 1/2 mu_0 + 1/2 mu_* (mu_0 is the
//    frequency charge conditioned on the odd stages, mu_* the dyadic limit),
//    where the value is 1 but no strategy attains it;
//  * the same MDP under the frequency charge conditioned on
//    Q = {4n-3} u {4n}, where a pure periodic strategy is optimal but no
//    stationary one is;
//  * a two-state "delayed switch" MDP under 1/2 geometric(1/2) + 1/2
//    frequency, where switching one stage later is always strictly better.

#include "chargemdp/blackwell.hpp"
#include "chargemdp/charge.hpp"
#include "chargemdp/mdp.hpp"
#include "chargemdp/periodic_set.hpp"
#include "chargemdp/search.hpp"

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace chargemdp::cases {

inline constexpr std::size_t kTop = 0;     // even-or-odd, state 1: reward 1 now
inline constexpr std::size_t kBottom = 1;  // even-or-odd, state 1: reward 1 next stage

inline Mdp even_or_odd_mdp() {
  Mdp m;
  m.states = {"1", "2", "3"};
  m.initial = 0;
  m.actions = {
      {{"T", 1, {0, 1, 0}}, {"B", 0, {0, 0, 1}}},
      {{"next", 0, {1, 0, 0}}},
      {{"next", 1, {1, 0, 0}}},
  };
  return m;
}

/// Frequency charge conditioned on the odd stages.
inline Charge odd_frequency_charge() { return Charge::restrict(Charge::frequency(), PeriodicSet::odds()); }

inline Charge counterexample_charge() {
  return Charge::mix({{make_rational(1, 2), odd_frequency_charge()}, {make_rational(1, 2), Charge::dyadic_limit()}});
}

/// {k 2^n : k in N}
inline PeriodicSet dyadic_multiples(unsigned n) { return PeriodicSet::multiples(std::uint64_t{1} << n); }

/// {k 2^n - 1 : k in N}
inline PeriodicSet dyadic_predecessors(unsigned n) {
  auto p = std::uint64_t{1} << n;
  return PeriodicSet::arithmetic(p - 1, p);
}

/// Plays B in state 1 at stages k 2^n - 1 and T at every other stage.
inline PeriodicMarkovStrategy sigma_strategy(const Mdp& mdp, unsigned n) {
  if (n == 0) throw std::invalid_argument("sigma_n needs n >= 1");
  const std::size_t period = std::size_t{1} << n;
  std::vector<std::vector<std::size_t>> rows(period, std::vector<std::size_t>(mdp.num_states(), 0));
  rows[period - 2][0] = kBottom;  // phase 2^n - 1
  return PeriodicMarkovStrategy::pure(mdp, 0, rows);
}

/// State 1 plays T with probability q.
inline StationaryStrategy stationary_top(const Mdp& mdp, const Rational& q) {
  StationaryStrategy s;
  for (std::size_t i = 0; i < mdp.num_states(); ++i) s.rule.push_back(detail::point(mdp.actions[i].size(), 0));
  s.rule[0] = {q, 1 - q};
  return s;
}

/// Alternates T and B on successive visits to state 1 (period 4 in stages).
inline PeriodicMarkovStrategy alternating_strategy(const Mdp& mdp) {
  std::vector<std::vector<std::size_t>> rows(4, std::vector<std::size_t>(mdp.num_states(), 0));
  rows[2][0] = kBottom;
  return PeriodicMarkovStrategy::pure(mdp, 0, rows);
}

inline PeriodicSet alternating_support() { return PeriodicSet::arithmetic(1, 4) | PeriodicSet::multiples(4); }

inline Charge alternating_charge() { return Charge::restrict(Charge::frequency(), alternating_support()); }

inline Mdp delayed_switch_mdp() {
  Mdp m;
  m.states = {"1", "2"};
  m.initial = 0;
  m.actions = {
      {{"T", 1, {1, 0}}, {"B", 0, {0, 1}}},
      {{"stay", make_rational(3, 2), {0, 1}}},
  };
  return m;
}

inline Charge delayed_switch_charge() {
  return Charge::mix(
      {{make_rational(1, 2), Charge::geometric(make_rational(1, 2))}, {make_rational(1, 2), Charge::frequency()}});
}

/// T before stage n, B at stage n.
inline PeriodicMarkovStrategy switch_at(const Mdp& mdp, std::size_t n) {
  if (n == 0) throw std::invalid_argument("switch stage must be >= 1");
  std::vector<std::vector<std::size_t>> rows(n, std::vector<std::size_t>(mdp.num_states(), 0));
  rows[n - 1][0] = 1;
  return PeriodicMarkovStrategy::pure(mdp, n - 1, rows);
}

/// 5/4 - 2^-(n+2)
inline Rational switch_at_closed_form(std::size_t n) {
  return make_rational(5, 4) - inverse_pow2(static_cast<unsigned>(n + 2));
}

// ---------------------------------------------------------------------------
// Reports

enum class Source { closed_form, oracle, definition };

inline const char* source_name(Source s) {
  switch (s) {
    case Source::closed_form: return "closed-form";
    case Source::oracle: return "oracle";
    case Source::definition: return "definition";
  }
  return "?";
}

enum class Relation { equal, less };

struct CheckRow {
  std::string description;
  Relation relation;
  CValue expected;
  Source source;
  CValue computed;
  bool pass;
};

struct VerificationReport {
  std::string case_id;
  std::vector<CheckRow> rows;

  bool passed() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }

  void expect_equal(std::string what, const CValue& expected, const CValue& got, Source src) {
    rows.push_back({std::move(what), Relation::equal, expected, src, got, expected == got});
  }
  /// Every candidate of `got` is strictly below `bound`.
  void expect_below(std::string what, const Rational& bound, const CValue& got, Source src) {
    rows.push_back({std::move(what), Relation::less, CValue(bound), src, got, got.max() < bound});
  }
  void expect_true(std::string what, bool ok, Source src) {
    expect_equal(std::move(what), CValue(Rational(1)), CValue(Rational(ok ? 1 : 0)), src);
  }
};

/// "CASE <id> EXPECT <value> GOT <value> <PASS|FAIL>", one line per row.
inline void write_machine_lines(std::ostream& os, const VerificationReport& r) {
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    os << "CASE " << r.case_id << "." << (i + 1) << " EXPECT " << (row.relation == Relation::less ? "<" : "")
       << row.expected.str() << " GOT " << row.computed.str() << " " << (row.pass ? "PASS" : "FAIL") << "\n";
  }
}

inline void write_table(std::ostream& os, const VerificationReport& r) {
  os << "== " << r.case_id << " (" << (r.passed() ? "pass" : "FAIL") << ")\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    os << "  " << (row.pass ? "ok  " : "FAIL") << "  " << r.case_id << "." << (i + 1) << "  " << row.description
       << "  expected " << (row.relation == Relation::less ? "< " : "") << row.expected.str() << " ["
       << source_name(row.source) << "]  got " << row.computed.str() << "\n";
  }
}

// ---------------------------------------------------------------------------
// Verifiers

/// u(sigma_n) = 1 - 2^-n under the counterexample charge, for n = 1..n_max.
inline VerificationReport verify_sigma_family(unsigned n_max) {
  if (n_max == 0) throw std::invalid_argument("n_max must be >= 1");
  VerificationReport rep{"sigma-family", {}};
  const auto mdp = even_or_odd_mdp();
  const auto mu = counterexample_charge();
  const auto mu0 = odd_frequency_charge();
  const auto mu_star = Charge::dyadic_limit();
  Rational previous = -1;
  bool increasing = true;
  for (unsigned n = 1; n <= n_max; ++n) {
    const auto tag = "n=" + std::to_string(n);
    auto sigma = sigma_strategy(mdp, n);
    auto horizon = std::max<std::uint64_t>(kDefaultHorizon, std::uint64_t{1} << n);
    auto stream = expected_reward_stream(mdp, sigma, horizon);
    auto reward_set = stream.where([](const Rational& v) { return v == 1; });
    auto predicted = (PeriodicSet::odds() - dyadic_predecessors(n)) | dyadic_multiples(n);
    rep.expect_true(tag + " reward-1 stages = (odds \\ E_n^-) u E_n", reward_set == predicted, Source::definition);
    rep.expect_equal(tag + " mu_0(odds \\ E_n^-)", Rational(1 - inverse_pow2(n - 1)),
                     value(mu0, PeriodicSet::odds() - dyadic_predecessors(n)), Source::closed_form);
    rep.expect_equal(tag + " mu_*(E_n)", Rational(1), value(mu_star, dyadic_multiples(n)), Source::closed_form);
    auto u = integrate(mu, stream);
    rep.expect_equal(tag + " u(sigma_n)", Rational(1 - inverse_pow2(n)), u, Source::closed_form);
    if (!u.is_exact() || u.exact() <= previous) increasing = false;
    if (u.is_exact()) previous = u.exact();
  }
  rep.expect_true("u(sigma_n) strictly increasing in n", increasing, Source::closed_form);
  rep.expect_below("u(sigma_n) never reaches the value 1", Rational(1), CValue(previous), Source::closed_form);
  return rep;
}

struct ProbeOutcome {
  CValue payoff;
  PeriodicSet high_stages;  // W = {t : E[r_t] > 1/2}
  bool below_one;
  bool shift_lemma;  // (W & E_n) - 1 subset of odds \ W for n = 1..8
  bool dichotomy;
};

/// Checks the steps of the no-optimal-strategy argument on one strategy of
/// the even-or-odd MDP.
template <class Strategy>
ProbeOutcome probe_strategy(const Mdp& mdp, const Strategy& sigma, std::uint64_t horizon = kDefaultHorizon) {
  static const Charge mu = counterexample_charge();
  static const Charge mu0 = odd_frequency_charge();
  auto stream = expected_reward_stream(mdp, sigma, horizon);
  auto w = stream.where([](const Rational& v) { return v > make_rational(1, 2); });
  ProbeOutcome out{integrate(mu, stream), w, false, true, true};
  out.below_one = out.payoff.max() < 1;
  const auto free_odds = PeriodicSet::odds() - w;
  for (unsigned n = 1; n <= 8 && out.shift_lemma; ++n)
    out.shift_lemma = (w & dyadic_multiples(n)).shift(-1).subset_of(free_odds);
  // mu_n(W) over every n up to the end of the first cycle of n -> mu_n(W)
  auto profile = dyadic_profile(RationalStream::indicator(w));
  bool some_positive = false;
  for (std::size_t n = 1; n <= profile.preperiod.size() + profile.cycle.size(); ++n)
    some_positive = some_positive || profile.at(n) > 0;
  if (some_positive) {
    out.dichotomy = value(mu0, w).exact() < 1;
  } else {
    auto star = value(Charge::dyadic_limit(), w);
    out.dichotomy = star.min() == 0 && star.max() == 0;
  }
  return out;
}

template <class Strategy>
VerificationReport probe_report(const std::string& id, const Mdp& mdp, const Strategy& sigma) {
  VerificationReport rep{id, {}};
  auto o = probe_strategy(mdp, sigma);
  rep.expect_below("every payoff candidate below 1", Rational(1), o.payoff, Source::closed_form);
  rep.expect_true("(W & E_n) - 1 subset of odds \\ W, n = 1..8", o.shift_lemma, Source::closed_form);
  rep.expect_true("mu_n(W) > 0 for some n implies mu_0(W) < 1; otherwise mu_*(W) = 0", o.dichotomy,
                  Source::closed_form);
  return rep;
}

/// Probes every pure periodic Markov strategy within bounds and every
/// stationary strategy with P(T) in {0, 1/8, ..., 1}.
inline VerificationReport sweep_no_optimum(std::size_t max_period, std::size_t max_preperiod) {
  VerificationReport rep{"no-optimum-sweep", {}};
  const auto mdp = even_or_odd_mdp();
  long count = 0, below = 0, lemma = 0, dichotomy = 0;
  Rational best = -1;
  auto tally = [&](const ProbeOutcome& o) {
    ++count;
    below += o.below_one;
    lemma += o.shift_lemma;
    dichotomy += o.dichotomy;
    best = std::max(best, o.payoff.max());
  };
  for_each_pure_periodic(mdp, max_period, max_preperiod,
                         [&](const PureEncoding& e) { tally(probe_strategy(mdp, e.to_strategy(mdp))); });
  const long pure = count;
  Rational stationary_best = -1;
  for (int k = 0; k <= 8; ++k) {
    auto o = probe_strategy(mdp, stationary_top(mdp, make_rational(k, 8)));
    tally(o);
    stationary_best = std::max(stationary_best, o.payoff.max());
  }
  const std::string scope = std::to_string(pure) + " pure periodic (period <= " + std::to_string(max_period) +
                            ", preperiod <= " + std::to_string(max_preperiod) + ") + 9 stationary";
  rep.expect_equal(scope + ": strategies with every payoff candidate < 1", Rational(count), Rational(below),
                   Source::closed_form);
  rep.expect_equal(scope + ": shift lemma holds", Rational(count), Rational(lemma), Source::closed_form);
  rep.expect_equal(scope + ": case split holds", Rational(count), Rational(dichotomy), Source::closed_form);
  rep.expect_below("largest payoff candidate found", Rational(1), CValue(best), Source::closed_form);
  rep.expect_equal("best stationary payoff", make_rational(1, 2), CValue(stationary_best), Source::closed_form);
  return rep;
}

/// Pure periodic optimum exists, stationary strategies all get 1/2.
inline VerificationReport verify_no_stationary_optimum() {
  VerificationReport rep{"no-stationary-optimum", {}};
  const auto mdp = even_or_odd_mdp();
  const auto mu = alternating_charge();
  rep.expect_equal("mu'({4n-3})", make_rational(1, 2), value(mu, PeriodicSet::arithmetic(1, 4)), Source::closed_form);
  rep.expect_equal("mu'({4n})", make_rational(1, 2), value(mu, PeriodicSet::multiples(4)), Source::closed_form);
  rep.expect_equal("mu'(Q)", Rational(1), value(mu, alternating_support()), Source::closed_form);
  rep.expect_true("mu' is diffuse", mu.is_diffuse(), Source::definition);
  rep.expect_equal("u(alternating)", Rational(1), payoff(mdp, alternating_strategy(mdp), mu), Source::closed_form);
  for (int k = 0; k <= 8; ++k) {
    auto q = make_rational(k, 8);
    rep.expect_equal("u(stationary, P(T) = " + to_string(q) + ")", make_rational(1, 2),
                     payoff(mdp, stationary_top(mdp, q), mu), Source::closed_form);
  }
  return rep;
}

/// u(B^n) increases strictly towards 5/4 without reaching it.
inline VerificationReport verify_delayed_switch(unsigned n_max, std::size_t search_period = 3,
                                                std::size_t search_preperiod = 6) {
  if (n_max == 0) throw std::invalid_argument("n_max must be >= 1");
  VerificationReport rep{"delayed-switch", {}};
  const auto mdp = delayed_switch_mdp();
  const auto mu = delayed_switch_charge();
  rep.expect_equal("u(T^inf)", Rational(1), payoff(mdp, StationaryStrategy::pure(mdp, {0, 0}), mu),
                   Source::closed_form);
  rep.expect_equal("u(B^1)", make_rational(9, 8), payoff(mdp, switch_at(mdp, 1), mu), Source::closed_form);
  CValue prev = payoff(mdp, switch_at(mdp, 1), mu);
  for (unsigned n = 1; n <= n_max; ++n) {
    auto u = payoff(mdp, switch_at(mdp, n), mu);
    rep.expect_equal("u(B^" + std::to_string(n) + ")", switch_at_closed_form(n), u, Source::oracle);
    if (n > 1 && prev.is_exact() && u.is_exact())
      rep.expect_equal("u(B^" + std::to_string(n - 1) + ") - u(B^" + std::to_string(n) + ")",
                       Rational(-inverse_pow2(n + 2)), Rational(prev.exact() - u.exact()), Source::closed_form);
    prev = u;
  }
  auto search = best_periodic(mdp, mu, search_period, search_preperiod);
  rep.expect_below("best enumerated payoff (period <= " + std::to_string(search_period) +
                       ", preperiod <= " + std::to_string(search_preperiod) + ")",
                   make_rational(5, 4), search.best().value, Source::closed_form);
  return rep;
}

/// The Blackwell policy of the even-or-odd MDP falls short under the counterexample charge.
inline VerificationReport verify_blackwell_gap() {
  VerificationReport rep{"blackwell-gap", {}};
  const auto mdp = even_or_odd_mdp();
  auto pi = blackwell_policy(mdp);
  rep.expect_true("Blackwell policy plays T in state 1", pi.choices()[0] == kTop, Source::oracle);
  rep.expect_equal("average reward of the Blackwell policy", make_rational(1, 2),
                   CValue(average_value(mdp, pi)[mdp.initial]), Source::oracle);
  rep.expect_equal("u(Blackwell policy) under the counterexample charge", make_rational(1, 2),
                   payoff(mdp, pi, counterexample_charge()), Source::oracle);
  rep.expect_true("counterexample charge leaves the frequency sandwich on multiples(4)",
                  !sandwich_check(counterexample_charge(), PeriodicSet::multiples(4)), Source::oracle);
  return rep;
}

struct SuiteOptions {
  unsigned n_max = 12;
  std::size_t sweep_period = 8;
  std::size_t sweep_preperiod = 8;
};

inline std::vector<VerificationReport> verify_all(const SuiteOptions& opt = {}) {
  return {verify_sigma_family(opt.n_max), sweep_no_optimum(opt.sweep_period, opt.sweep_preperiod),
          verify_no_stationary_optimum(), verify_delayed_switch(opt.n_max), verify_blackwell_gap()};
}

}  // namespace chargemdp::cases
