#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace chargemdp;

namespace {

void expect_same_members(const PeriodicSet& s, const std::function<bool(std::uint64_t)>& pred, std::uint64_t horizon) {
  for (std::uint64_t n = 1; n <= horizon; ++n) ASSERT_EQ(s.contains(n), pred(n)) << "n = " << n;
}

}  // namespace

TEST(PeriodicSet, NamedSetsMatchDefinitions) {
  expect_same_members(PeriodicSet::odds(), [](auto n) { return n % 2 == 1; }, 200);
  expect_same_members(PeriodicSet::evens(), [](auto n) { return n % 2 == 0; }, 200);
  expect_same_members(PeriodicSet::multiples(6), [](auto n) { return n % 6 == 0; }, 200);
  expect_same_members(PeriodicSet::arithmetic(3, 4), [](auto n) { return n >= 3 && n % 4 == 3; }, 200);
  expect_same_members(PeriodicSet::arithmetic(7, 5), [](auto n) { return n >= 7 && n % 5 == 2; }, 200);
  expect_same_members(PeriodicSet::singleton(9), [](auto n) { return n == 9; }, 200);
  EXPECT_TRUE(PeriodicSet::empty().is_empty());
  EXPECT_EQ(PeriodicSet::all().density(), 1);
}

TEST(PeriodicSet, Densities) {
  EXPECT_EQ(PeriodicSet::odds().density(), make_rational(1, 2));
  EXPECT_EQ(PeriodicSet::multiples(8).density(), make_rational(1, 8));
  EXPECT_EQ(PeriodicSet::singleton(5).density(), 0);
  EXPECT_EQ((PeriodicSet::arithmetic(1, 4) | PeriodicSet::multiples(4)).density(), make_rational(1, 2));
}

TEST(PeriodicSet, CanonicalFormIsUnique) {
  // Same set given with a redundant period and redundant preperiod.
  auto a = PeriodicSet::make({true, false, true, false}, 4, {1, 3});
  EXPECT_EQ(a, PeriodicSet::odds());
  EXPECT_EQ(a.period(), 2u);
  EXPECT_EQ(a.preperiod_length(), 0u);
  auto b = PeriodicSet::make({false, false, true}, 3, {0});
  EXPECT_EQ(b, PeriodicSet::multiples(3));
}

TEST(PeriodicSet, RejectsMalformedDescriptions) {
  EXPECT_THROW(PeriodicSet::make({}, 0, {}), std::invalid_argument);
  EXPECT_THROW(PeriodicSet::make({}, 3, {3}), std::invalid_argument);
  EXPECT_THROW(PeriodicSet::odds().contains(0), std::invalid_argument);
}

TEST(PeriodicSet, ShiftAndContractExamples) {
  EXPECT_EQ(PeriodicSet::odds().shift(1), PeriodicSet::evens());
  EXPECT_EQ(PeriodicSet::evens().shift(-1), PeriodicSet::odds());
  EXPECT_EQ(PeriodicSet::multiples(4).contract(2), PeriodicSet::evens());
  EXPECT_EQ(PeriodicSet::multiples(4).contract(4), PeriodicSet::all());
  EXPECT_EQ(PeriodicSet::odds().contract(2), PeriodicSet::empty());
  // shift by a negative amount drops whatever falls below 1
  EXPECT_EQ(PeriodicSet::singleton(2).shift(-3), PeriodicSet::empty());
}

TEST(PeriodicSetProperty, BooleanOperationsAgreeWithMembership) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto a = oracle::random_set(rng), b = oracle::random_set(rng);
    auto h = oracle::agreement_horizon(a, b);
    expect_same_members(a | b, [&](auto n) { return a.contains(n) || b.contains(n); }, h);
    expect_same_members(a & b, [&](auto n) { return a.contains(n) && b.contains(n); }, h);
    expect_same_members(a - b, [&](auto n) { return a.contains(n) && !b.contains(n); }, h);
    expect_same_members(!a, [&](auto n) { return !a.contains(n); }, h);
  }
}

TEST(PeriodicSetProperty, BooleanAlgebraLaws) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    auto a = oracle::random_set(rng), b = oracle::random_set(rng), c = oracle::random_set(rng);
    EXPECT_EQ(a | b, b | a);
    EXPECT_EQ(a & (b | c), (a & b) | (a & c));
    EXPECT_EQ(!(a | b), (!a) & (!b));
    EXPECT_EQ(!!a, a);
    EXPECT_EQ(a | !a, PeriodicSet::all());
    EXPECT_TRUE((a & b).subset_of(a));
    EXPECT_TRUE(a.subset_of(a | b));
  }
}

TEST(PeriodicSetProperty, DensityMatchesCountingAndIsAdditive) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    auto a = oracle::random_set(rng), b = oracle::random_set(rng);
    // exact count over a whole number of periods past the preperiod
    const auto m = a.preperiod_length(), p = a.period();
    std::uint64_t hits = 0;
    for (std::uint64_t n = m + 1; n <= m + p; ++n) hits += a.contains(n);
    EXPECT_EQ(a.density(), make_rational(static_cast<long>(hits), static_cast<unsigned long>(p)));
    EXPECT_NEAR(oracle::frequency(a, 100000), a.density().get_d(), 1e-3);
    EXPECT_EQ((a | b).density() + (a & b).density(), a.density() + b.density());
  }
}

TEST(PeriodicSetProperty, ShiftAndContractAgreeWithMembership) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> k_dist(-7, 7);
  std::uniform_int_distribution<int> d_dist(1, 6);
  for (int i = 0; i < 300; ++i) {
    auto a = oracle::random_set(rng);
    auto k = k_dist(rng);
    auto d = static_cast<std::uint64_t>(d_dist(rng));
    auto h = a.preperiod_length() + 8 + 3 * a.period();
    expect_same_members(a.shift(k), [&](std::uint64_t n) {
      auto src = static_cast<std::int64_t>(n) - k;
      return src >= 1 && a.contains(static_cast<std::uint64_t>(src));
    }, h);
    expect_same_members(a.contract(d), [&](std::uint64_t n) { return a.contains(n * d); }, h);
    EXPECT_EQ(a.shift(k).density(), a.density());
  }
}

TEST(PeriodicSetProperty, RepresentativeIsSmallestAfterPreperiod) {
  for (std::uint64_t m = 0; m < 6; ++m)
    for (std::uint64_t p = 1; p < 7; ++p)
      for (std::uint64_t r = 0; r < p; ++r) {
        auto n = PeriodicSet::representative(m, p, r);
        EXPECT_GT(n, m);
        EXPECT_LE(n, m + p);
        EXPECT_EQ(n % p, r);
      }
}
