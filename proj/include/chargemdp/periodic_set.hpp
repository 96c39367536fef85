#pragma once

// Eventually periodic subsets of N = {1, 2, ...}.
//
// A set is stored as a finite preperiod (membership of 1..m) followed by a
// periodic tail: for n > m, n is a member iff (n mod p) is a marked residue.
// Residues are absolute (n mod p, not (n - m) mod p), which keeps shifts and
// contractions closed-form. Every value is kept in canonical form: minimal
// period first, then minimal preperiod for that period, so structural
// equality coincides with set equality.

#include "chargemdp/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chargemdp {

class PeriodicSet {
 public:
  /// Builds and canonicalizes. `residues` must be < `period`.
  static PeriodicSet make(std::vector<bool> preperiod_bits, std::uint64_t period,
                          const std::vector<std::uint64_t>& residues) {
    if (period == 0) throw std::invalid_argument("period must be >= 1");
    std::vector<bool> table(period, false);
    for (auto r : residues) {
      if (r >= period)
        throw std::invalid_argument("residue " + std::to_string(r) + " >= period " +
                                    std::to_string(period));
      table[r] = true;
    }
    return PeriodicSet(std::move(preperiod_bits), std::move(table));
  }

  /// Tabulates `pred` on 1..m and on one representative n > m per residue mod p.
  static PeriodicSet tabulate(std::uint64_t m, std::uint64_t p,
                              const std::function<bool(std::uint64_t)>& pred) {
    std::vector<bool> bits(m);
    for (std::uint64_t i = 1; i <= m; ++i) bits[i - 1] = pred(i);
    std::vector<bool> table(p);
    for (std::uint64_t r = 0; r < p; ++r) table[r] = pred(representative(m, p, r));
    return PeriodicSet(std::move(bits), std::move(table));
  }

  static PeriodicSet empty() { return make({}, 1, {}); }
  static PeriodicSet all() { return make({}, 1, {0}); }
  static PeriodicSet odds() { return make({}, 2, {1}); }
  static PeriodicSet evens() { return make({}, 2, {0}); }
  static PeriodicSet multiples(std::uint64_t d) {
    if (d == 0) throw std::invalid_argument("multiples(0)");
    return make({}, d, {0});
  }
  /// {a, a+d, a+2d, ...}
  static PeriodicSet arithmetic(std::uint64_t a, std::uint64_t d) {
    if (a == 0 || d == 0) throw std::invalid_argument("arithmetic progression needs a, d >= 1");
    std::vector<bool> bits(a - 1, false);
    return make(std::move(bits), d, {a % d});
  }
  static PeriodicSet singleton(std::uint64_t a) {
    if (a == 0) throw std::invalid_argument("singleton(0)");
    std::vector<bool> bits(a, false);
    bits[a - 1] = true;
    return make(std::move(bits), 1, {});
  }

  std::uint64_t preperiod_length() const { return bits_.size(); }
  const std::vector<bool>& preperiod_bits() const { return bits_; }
  std::uint64_t period() const { return table_.size(); }
  const std::vector<bool>& residue_table() const { return table_; }
  std::vector<std::uint64_t> residues() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t r = 0; r < table_.size(); ++r)
      if (table_[r]) out.push_back(r);
    return out;
  }

  bool contains(std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument("0 is not a stage; N starts at 1");
    if (n <= bits_.size()) return bits_[n - 1];
    return table_[n % table_.size()];
  }

  bool is_empty() const { return *this == empty(); }

  /// Natural density |residues| / period.
  Rational density() const {
    auto count = std::count(table_.begin(), table_.end(), true);
    Rational q(static_cast<long>(count), static_cast<unsigned long>(table_.size()));
    q.canonicalize();
    return q;
  }

  PeriodicSet operator|(const PeriodicSet& o) const {
    return combine(o, [](bool a, bool b) { return a || b; });
  }
  PeriodicSet operator&(const PeriodicSet& o) const {
    return combine(o, [](bool a, bool b) { return a && b; });
  }
  PeriodicSet operator-(const PeriodicSet& o) const {
    return combine(o, [](bool a, bool b) { return a && !b; });
  }
  PeriodicSet operator!() const {
    return tabulate(preperiod_length(), period(), [this](std::uint64_t n) { return !contains(n); });
  }

  bool subset_of(const PeriodicSet& o) const { return (*this - o).is_empty(); }

  /// {n + k : n in S} restricted to N.
  PeriodicSet shift(std::int64_t k) const {
    std::uint64_t m = bits_.size();
    std::uint64_t new_m = k >= 0 ? m + static_cast<std::uint64_t>(k)
                                 : (m > static_cast<std::uint64_t>(-k) ? m - static_cast<std::uint64_t>(-k) : 0);
    return tabulate(new_m, period(), [this, k](std::uint64_t n) {
      auto src = static_cast<std::int64_t>(n) - k;
      return src >= 1 && contains(static_cast<std::uint64_t>(src));
    });
  }

  /// {k : k*d in S}
  PeriodicSet contract(std::uint64_t d) const {
    if (d == 0) throw std::invalid_argument("contract by 0");
    return tabulate(preperiod_length(), period(), [this, d](std::uint64_t k) { return contains(k * d); });
  }

  bool operator==(const PeriodicSet&) const = default;

  /// Smallest n > m with n = r (mod p).
  static std::uint64_t representative(std::uint64_t m, std::uint64_t p, std::uint64_t r) {
    return m + 1 + mod_floor(static_cast<std::int64_t>(r) - static_cast<std::int64_t>(m + 1), p);
  }

 private:
  PeriodicSet(std::vector<bool> bits, std::vector<bool> table)
      : bits_(std::move(bits)), table_(std::move(table)) {
    canonicalize();
  }

  template <class Op>
  PeriodicSet combine(const PeriodicSet& o, Op op) const {
    auto m = std::max(preperiod_length(), o.preperiod_length());
    auto p = lcm_u64(period(), o.period());
    return tabulate(m, p, [&](std::uint64_t n) { return op(contains(n), o.contains(n)); });
  }

  void canonicalize() {
    const std::uint64_t p = table_.size();
    for (auto d : divisors(p)) {
      bool ok = true;
      for (std::uint64_t r = d; r < p && ok; ++r) ok = table_[r] == table_[r % d];
      if (ok) {
        table_.resize(d);
        break;
      }
    }
    while (!bits_.empty() && bits_.back() == table_[bits_.size() % table_.size()]) bits_.pop_back();
  }

  std::vector<bool> bits_;
  std::vector<bool> table_;
};

}  // namespace chargemdp
