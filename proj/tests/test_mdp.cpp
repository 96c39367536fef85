#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace chargemdp;
using cases::even_or_odd_mdp;
using cases::delayed_switch_mdp;

namespace {

Rational q(long n, unsigned long d = 1) { return make_rational(n, d); }

bool has_issue(const Mdp& m, ValidationIssue::Kind k) {
  for (const auto& i : validate(m))
    if (i.kind == k) return true;
  return false;
}

/// Random periodic Markov strategy, possibly randomised, for `mdp`.
PeriodicMarkovStrategy random_strategy(std::mt19937_64& rng, const Mdp& mdp, bool pure) {
  std::uniform_int_distribution<std::size_t> len(0, 4), per(1, 4);
  auto make_phase = [&] {
    PeriodicMarkovStrategy::PhaseRule r;
    for (std::size_t s = 0; s < mdp.num_states(); ++s) {
      const auto k = mdp.actions[s].size();
      if (pure) {
        r.push_back(detail::point(k, std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)));
      } else {
        r.push_back(oracle::random_row(rng, k, false));
      }
    }
    return r;
  };
  std::vector<PeriodicMarkovStrategy::PhaseRule> pre(len(rng)), cyc(per(rng));
  for (auto& r : pre) r = make_phase();
  for (auto& r : cyc) r = make_phase();
  return {pre, cyc};
}

}  // namespace

TEST(Mdp, ValidationExamples) {
  auto m = even_or_odd_mdp();
  EXPECT_TRUE(validate(m).empty());
  EXPECT_TRUE(m.is_deterministic());

  auto bad = m;
  bad.actions[0][0].next = {q(1, 2), q(1, 3), q(0)};
  EXPECT_TRUE(has_issue(bad, ValidationIssue::Kind::RowSumError));
  EXPECT_THROW(require_valid(bad), InvalidMdp);

  auto missing = m;
  missing.actions[1].clear();
  EXPECT_TRUE(has_issue(missing, ValidationIssue::Kind::MissingAction));

  auto unknown = m;
  unknown.initial = 7;
  EXPECT_TRUE(has_issue(unknown, ValidationIssue::Kind::UnknownState));
  auto short_row = m;
  short_row.actions[2][0].next = {q(1)};
  EXPECT_TRUE(has_issue(short_row, ValidationIssue::Kind::UnknownState));

  auto negative = m;
  negative.actions[0][1].next = {q(3, 2), q(-1, 2), q(0)};
  EXPECT_TRUE(has_issue(negative, ValidationIssue::Kind::RowSumError));

  // every problem is reported, not just the first
  auto many = bad;
  many.actions[1].clear();
  EXPECT_EQ(validate(many).size(), 2u);
}

TEST(Mdp, StrategyCanonicalForm) {
  auto m = even_or_odd_mdp();
  // T,B,T,B with period 2 after a redundant preperiod collapses to period 2
  auto s = PeriodicMarkovStrategy::pure(m, 2, {{0, 0, 0}, {1, 0, 0}, {0, 0, 0}, {1, 0, 0}});
  EXPECT_EQ(s.preperiod(), 0u);
  EXPECT_EQ(s.period(), 2u);
  EXPECT_EQ(s.phase_of_stage(5), 1u);
  auto pure_t = PeriodicMarkovStrategy::from(StationaryStrategy::pure(m, {0, 0, 0}));
  EXPECT_EQ(pure_t, PeriodicMarkovStrategy::pure(m, 3, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
  EXPECT_TRUE(pure_t.is_pure());
  EXPECT_FALSE(PeriodicMarkovStrategy::from(cases::stationary_top(m, q(1, 3))).is_pure());
  StationaryStrategy short_sum{{{q(1, 2), q(1, 3)}, {q(1)}, {q(1)}}};
  EXPECT_THROW(short_sum.check(m), std::invalid_argument);
}

TEST(Mdp, RewardStreamExamples) {
  auto m = even_or_odd_mdp();
  EXPECT_EQ(expected_reward_stream(m, StationaryStrategy::pure(m, {0, 0, 0})), RationalStream({}, {q(1), q(0)}));
  for (auto p : {q(0), q(1, 3), q(1, 2), q(5, 7), q(1)}) {
    auto f = expected_reward_stream(m, cases::stationary_top(m, p));
    // hand iteration of the first four stages
    EXPECT_EQ(f.at(1), p);
    EXPECT_EQ(f.at(2), 1 - p);
    EXPECT_EQ(f.at(3), p);
    EXPECT_EQ(f.at(4), 1 - p);
  }
  auto d = delayed_switch_mdp();
  EXPECT_EQ(expected_reward_stream(d, cases::switch_at(d, 1)), RationalStream({q(0)}, {q(3, 2)}));
  EXPECT_EQ(expected_reward_stream(d, cases::switch_at(d, 3)), RationalStream({q(1), q(1), q(0)}, {q(3, 2)}));
}

TEST(Mdp, PayoffExamples) {
  auto m = even_or_odd_mdp();
  auto mu = cases::counterexample_charge();
  EXPECT_EQ(payoff(m, cases::sigma_strategy(m, 3), mu), CValue(q(7, 8)));
  EXPECT_EQ(payoff(m, cases::stationary_top(m, q(1, 3)), mu), CValue(q(1, 2)));
  auto d = delayed_switch_mdp();
  auto nu = cases::delayed_switch_charge();
  EXPECT_EQ(payoff(d, cases::switch_at(d, 1), nu), CValue(q(9, 8)));
  for (std::size_t n = 1; n <= 10; ++n) {
    // sum_{t<n} 2^-t + (3/2) sum_{t>n} 2^-t, averaged with the long-run mean 3/2
    Rational geo = 1 - inverse_pow2(static_cast<unsigned>(n - 1)) + q(3, 2) * inverse_pow2(static_cast<unsigned>(n));
    EXPECT_EQ(payoff(d, cases::switch_at(d, n), nu), CValue(q(1, 2) * geo + q(3, 4))) << n;
  }
}

TEST(Mdp, CycleNotFoundIsReported) {
  // stochastic chain whose distribution converges without ever repeating
  Mdp m;
  m.states = {"a", "b"};
  m.actions = {{{"go", q(1), {q(1, 2), q(1, 2)}}}, {{"go", q(0), {q(1, 3), q(2, 3)}}}};
  ASSERT_TRUE(validate(m).empty());
  EXPECT_THROW(expected_reward_stream(m, StationaryStrategy::pure(m, {0, 0}), 64), CycleNotFound);
  EXPECT_THROW(expected_reward_stream(m, StationaryStrategy::pure(m, {0, 0}), 0), std::invalid_argument);
  // a sigma_n stream needs 2^n stages
  auto e = even_or_odd_mdp();
  EXPECT_THROW(expected_reward_stream(e, cases::sigma_strategy(e, 6), 32), CycleNotFound);
  EXPECT_NO_THROW(expected_reward_stream(e, cases::sigma_strategy(e, 6), 64));
}

TEST(MdpProperty, ProbabilityIsConserved) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    auto m = oracle::random_mdp(rng, 3, 2, false);
    auto sigma = random_strategy(rng, m, false);
    for (const auto& d : state_distributions(m, sigma, 30)) {
      Rational total = 0;
      for (const auto& p : d) {
        ASSERT_GE(p, 0);
        total += p;
      }
      ASSERT_EQ(total, 1);
    }
  }
}

TEST(MdpProperty, StreamMatchesDirectIterationAndStaysInRewardRange) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 150; ++i) {
    auto m = oracle::random_mdp(rng, 3, 2, true);
    auto sigma = random_strategy(rng, m, true);
    auto f = expected_reward_stream(m, sigma);
    auto dists = state_distributions(m, sigma, 60);
    for (std::uint64_t t = 1; t <= 60; ++t) {
      Rational r = 0;
      const auto& rule = sigma.at_stage(t);
      for (std::size_t s = 0; s < m.num_states(); ++s)
        for (std::size_t a = 0; a < rule[s].size(); ++a) r += dists[t - 1][s] * rule[s][a] * m.actions[s][a].reward;
      ASSERT_EQ(f.at(t), r) << "t = " << t;
      ASSERT_GE(f.at(t), m.min_reward());
      ASSERT_LE(f.at(t), m.max_reward());
    }
  }
}

TEST(MdpProperty, EvenOrOddRewardsPairUp) {
  // stage t odd is always spent in state 1, so E[r_t] + E[r_{t+1}] = 1
  std::mt19937_64 rng(43);
  auto m = even_or_odd_mdp();
  for (int i = 0; i < 300; ++i) {
    auto sigma = random_strategy(rng, m, i % 2 == 0);
    auto f = expected_reward_stream(m, sigma);
    for (std::uint64_t t = 1; t <= 41; t += 2) ASSERT_EQ(f.at(t) + f.at(t + 1), 1) << t;
  }
}

TEST(MdpProperty, FrequencyPayoffIsTheCycleMean) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 100; ++i) {
    auto m = oracle::random_mdp(rng, 3, 2, true);
    auto sigma = random_strategy(rng, m, true);
    auto f = expected_reward_stream(m, sigma);
    EXPECT_EQ(payoff(m, sigma, Charge::frequency()).exact(), f.cycle_mean());
    EXPECT_NEAR(f.cycle_mean().get_d(), oracle::cesaro(f, 20000), 1e-2);
  }
}
