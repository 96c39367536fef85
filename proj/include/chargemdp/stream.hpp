#pragma once

// Eventually periodic sequences of exact rationals, indexed from stage 1.

#include "chargemdp/periodic_set.hpp"
#include "chargemdp/rational.hpp"
#include "chargemdp/sequence.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chargemdp {

class RationalStream {
 public:
  RationalStream(std::vector<Rational> preperiod, std::vector<Rational> cycle)
      : pre_(std::move(preperiod)), cycle_(std::move(cycle)) {
    if (cycle_.empty()) throw std::invalid_argument("stream cycle must be nonempty");
    canonicalize();
  }

  static RationalStream constant(const Rational& c) { return RationalStream({}, {c}); }

  /// 0/1 stream of a set.
  static RationalStream indicator(const PeriodicSet& s) {
    std::uint64_t m = s.preperiod_length();
    std::vector<Rational> pre, cyc;
    for (std::uint64_t t = 1; t <= m; ++t) pre.emplace_back(s.contains(t) ? 1 : 0);
    for (std::uint64_t j = 0; j < s.period(); ++j) cyc.emplace_back(s.contains(m + 1 + j) ? 1 : 0);
    return RationalStream(std::move(pre), std::move(cyc));
  }

  const std::vector<Rational>& preperiod() const { return pre_; }
  const std::vector<Rational>& cycle() const { return cycle_; }

  const Rational& at(std::uint64_t t) const {
    if (t == 0) throw std::invalid_argument("stages start at 1");
    if (t <= pre_.size()) return pre_[t - 1];
    return cycle_[(t - pre_.size() - 1) % cycle_.size()];
  }

  /// Mean over one cycle; equals the Cesaro limit.
  Rational cycle_mean() const {
    Rational sum = 0;
    for (const auto& c : cycle_) sum += c;
    return sum / static_cast<unsigned long>(cycle_.size());
  }

  template <class Op>
  RationalStream zip(const RationalStream& o, Op op) const {
    auto m = std::max(pre_.size(), o.pre_.size());
    auto p = lcm_u64(cycle_.size(), o.cycle_.size());
    std::vector<Rational> pre, cyc;
    pre.reserve(m);
    cyc.reserve(p);
    for (std::uint64_t t = 1; t <= m; ++t) pre.push_back(op(at(t), o.at(t)));
    for (std::uint64_t j = 1; j <= p; ++j) cyc.push_back(op(at(m + j), o.at(m + j)));
    return RationalStream(std::move(pre), std::move(cyc));
  }

  template <class Op>
  RationalStream map(Op op) const {
    std::vector<Rational> pre, cyc;
    for (const auto& v : pre_) pre.push_back(op(v));
    for (const auto& v : cycle_) cyc.push_back(op(v));
    return RationalStream(std::move(pre), std::move(cyc));
  }

  RationalStream operator+(const RationalStream& o) const {
    return zip(o, [](const Rational& a, const Rational& b) { return Rational(a + b); });
  }
  RationalStream operator*(const RationalStream& o) const {
    return zip(o, [](const Rational& a, const Rational& b) { return Rational(a * b); });
  }
  RationalStream scaled(const Rational& c) const {
    return map([&c](const Rational& v) { return Rational(v * c); });
  }

  RationalStream restricted_to(const PeriodicSet& s) const { return *this * indicator(s); }

  /// {t : pred(f(t))} as a set.
  template <class Pred>
  PeriodicSet where(Pred pred) const {
    return PeriodicSet::tabulate(pre_.size(), cycle_.size(), [&](std::uint64_t t) { return pred(at(t)); });
  }

  /// Distinct values with their level sets, ordered by value.
  std::vector<std::pair<Rational, PeriodicSet>> level_sets() const {
    std::vector<Rational> values(pre_);
    values.insert(values.end(), cycle_.begin(), cycle_.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<std::pair<Rational, PeriodicSet>> out;
    for (const auto& v : values) out.emplace_back(v, where([&v](const Rational& x) { return x == v; }));
    return out;
  }

  bool operator==(const RationalStream& o) const { return pre_ == o.pre_ && cycle_ == o.cycle_; }

 private:
  void canonicalize() { canonicalize_eventually_periodic(pre_, cycle_); }

  std::vector<Rational> pre_;
  std::vector<Rational> cycle_;
};

}  // namespace chargemdp
