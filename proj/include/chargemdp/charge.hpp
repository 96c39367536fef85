#pragma once

// Symbolic charges (finitely additive probabilities on N) and exact
// integration of eventually periodic streams against them.
//
// Every charge except DyadicLimit evaluates to one exact rational. The
// dyadic limit is an accumulation point of mu_n(W) = density{k : k 2^n in W};
// on eventually periodic data the sequence n -> mu_n is itself eventually
// periodic, and we report the set of values on its eventual cycle.

#include "chargemdp/periodic_set.hpp"
#include "chargemdp/rational.hpp"
#include "chargemdp/stream.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace chargemdp {

class IllFormedRestrict : public Error {
 public:
  using Error::Error;
};

class AmbiguousBase : public Error {
 public:
  using Error::Error;
};

/// Either one exact value or the finite set of values attainable across
/// accumulation-point selections.
class CValue {
 public:
  CValue(Rational exact) : candidates_{std::move(exact)} {}  // NOLINT: implicit by intent
  static CValue from_candidates(std::vector<Rational> c) {
    if (c.empty()) throw std::invalid_argument("CValue needs at least one candidate");
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    CValue v(c.front());
    v.candidates_ = std::move(c);
    return v;
  }

  bool is_exact() const { return candidates_.size() == 1; }
  const Rational& exact() const {
    if (!is_exact()) throw Error("value is ambiguous: " + str());
    return candidates_.front();
  }
  const std::vector<Rational>& candidates() const { return candidates_; }
  const Rational& min() const { return candidates_.front(); }
  const Rational& max() const { return candidates_.back(); }

  std::string str() const {
    if (is_exact()) return to_string(candidates_.front());
    std::string s = "{";
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      if (i) s += ", ";
      s += to_string(candidates_[i]);
    }
    return s + "}";
  }

  bool operator==(const CValue&) const = default;

 private:
  std::vector<Rational> candidates_;  // sorted, unique
};

/// The sequence n -> mu_n(f), n >= 1, split into preperiod and eventual cycle.
struct DyadicProfile {
  std::vector<Rational> preperiod;
  std::vector<Rational> cycle;

  std::vector<Rational> candidates() const {
    auto c = cycle;
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }
  /// Frequency-average of the cycle; the value of one particular accumulation point.
  Rational cycle_mean() const {
    Rational s = 0;
    for (const auto& v : cycle) s += v;
    return s / static_cast<unsigned long>(cycle.size());
  }
  /// mu_n(f) for any n >= 1.
  const Rational& at(std::uint64_t n) const {
    if (n <= preperiod.size()) return preperiod[n - 1];
    return cycle[(n - preperiod.size() - 1) % cycle.size()];
  }
};

/// Cesaro mean of k -> f(k * 2^n), which depends on n only through 2^n mod p.
inline DyadicProfile dyadic_profile(const RationalStream& f) {
  const std::uint64_t m = f.preperiod().size();
  const std::uint64_t p = f.cycle().size();
  const auto& cyc = f.cycle();
  auto mean_for = [&](std::uint64_t r) {
    Rational sum = 0;
    for (std::uint64_t k = 0; k < p; ++k)
      sum += cyc[mod_floor(static_cast<std::int64_t>((k * r) % p) - static_cast<std::int64_t>(m + 1), p)];
    return Rational(sum / static_cast<unsigned long>(p));
  };
  std::map<std::uint64_t, std::size_t> seen;  // residue 2^n mod p -> n - 1
  std::vector<Rational> values;
  std::uint64_t r = 2 % p;
  while (!seen.count(r)) {
    seen[r] = values.size();
    values.push_back(mean_for(r));
    r = (r * 2) % p;
  }
  auto start = seen[r];
  DyadicProfile prof;
  prof.preperiod.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(start));
  prof.cycle.assign(values.begin() + static_cast<std::ptrdiff_t>(start), values.end());
  return prof;
}

class Charge;
using WeightedCharge = std::pair<Rational, Charge>;

class Charge {
 public:
  struct Frequency {};
  struct Geometric {
    Rational beta;
  };
  struct PointMass {
    std::uint64_t stage;
  };
  struct DyadicLimit {};
  struct Restrict;
  struct Mix;
  using Node = std::variant<Frequency, Geometric, PointMass, DyadicLimit, std::shared_ptr<const Restrict>,
                            std::shared_ptr<const Mix>>;

  static Charge frequency() { return Charge(Frequency{}); }
  static Charge geometric(const Rational& beta) {
    if (beta <= 0 || beta >= 1) throw std::invalid_argument("geometric charge needs 0 < beta < 1");
    return Charge(Geometric{beta});
  }
  static Charge point_mass(std::uint64_t t) {
    if (t == 0) throw std::invalid_argument("point mass stage must be >= 1");
    return Charge(PointMass{t});
  }
  static Charge dyadic_limit() { return Charge(DyadicLimit{}); }
  static Charge restrict(const Charge& base, const PeriodicSet& on);
  static Charge mix(std::vector<WeightedCharge> parts);

  const Node& node() const { return node_; }

  bool is_diffuse() const;
  bool has_dyadic_limit() const;

  bool operator==(const Charge& o) const;

 private:
  explicit Charge(Node n) : node_(std::move(n)) {}
  Node node_;
};

struct Charge::Restrict {
  Charge base;
  PeriodicSet on;
  Rational normalizer;  // base(on), exact and positive
};

struct Charge::Mix {
  std::vector<WeightedCharge> parts;
};

namespace detail {

// integral = constant + dyadic_weight * (dyadic limit of f)
struct AffineValue {
  Rational constant = 0;
  Rational dyadic_weight = 0;
};

inline Rational geometric_integral(const Rational& beta, const RationalStream& f) {
  Rational head = 0, b = 1;
  for (const auto& v : f.preperiod()) {
    head += b * v;
    b *= beta;
  }
  Rational tail = 0, c = 1;
  for (const auto& v : f.cycle()) {
    tail += c * v;
    c *= beta;
  }
  // c = beta^p, b = beta^m
  return (1 - beta) * (head + b * tail / (1 - c));
}

inline CValue integrate_impl(const Charge& mu, const RationalStream& f);

inline AffineValue affine(const Charge& mu, const RationalStream& f) {
  return std::visit(
      [&](const auto& n) -> AffineValue {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Charge::Frequency>) {
          return {f.cycle_mean(), 0};
        } else if constexpr (std::is_same_v<T, Charge::Geometric>) {
          return {geometric_integral(n.beta, f), 0};
        } else if constexpr (std::is_same_v<T, Charge::PointMass>) {
          return {f.at(n.stage), 0};
        } else if constexpr (std::is_same_v<T, Charge::DyadicLimit>) {
          return {0, 1};
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Charge::Restrict>>) {
          CValue num = integrate_impl(n->base, f.restricted_to(n->on));
          if (!num.is_exact()) throw AmbiguousBase("restricted base charge is ambiguous: " + num.str());
          return {num.exact() / n->normalizer, 0};
        } else {
          AffineValue out;
          for (const auto& [w, c] : n->parts) {
            auto part = affine(c, f);
            out.constant += w * part.constant;
            out.dyadic_weight += w * part.dyadic_weight;
          }
          return out;
        }
      },
      mu.node());
}

inline CValue integrate_impl(const Charge& mu, const RationalStream& f) {
  auto a = affine(mu, f);
  if (a.dyadic_weight == 0) return CValue(a.constant);
  std::vector<Rational> out;
  for (const auto& x : dyadic_profile(f).candidates()) out.push_back(a.constant + a.dyadic_weight * x);
  return CValue::from_candidates(std::move(out));
}

}  // namespace detail

/// Integral of f with respect to mu.
inline CValue integrate(const Charge& mu, const RationalStream& f) { return detail::integrate_impl(mu, f); }

/// The value under the particular accumulation point that frequency-averages
/// the cycle of n -> mu_n; equals integrate() whenever that is exact.
inline Rational integrate_cycle_mean(const Charge& mu, const RationalStream& f) {
  auto a = detail::affine(mu, f);
  if (a.dyadic_weight == 0) return a.constant;
  return a.constant + a.dyadic_weight * dyadic_profile(f).cycle_mean();
}

/// mu(S)
inline CValue value(const Charge& mu, const PeriodicSet& s) { return integrate(mu, RationalStream::indicator(s)); }

/// Every candidate of mu(S) lies between the lower and upper frequency of S,
/// which on this algebra are both density(S).
inline bool sandwich_check(const Charge& mu, const PeriodicSet& s) {
  auto v = value(mu, s);
  auto d = s.density();
  return std::all_of(v.candidates().begin(), v.candidates().end(), [&](const Rational& c) { return c == d; });
}

inline Charge Charge::restrict(const Charge& base, const PeriodicSet& on) {
  CValue norm = value(base, on);
  if (!norm.is_exact() || norm.exact() <= 0)
    throw IllFormedRestrict("restriction set has charge " + norm.str() + "; need an exact positive value");
  return Charge(std::make_shared<const Restrict>(Restrict{base, on, norm.exact()}));
}

inline Charge Charge::mix(std::vector<WeightedCharge> parts) {
  if (parts.empty()) throw std::invalid_argument("mixture needs at least one component");
  Rational total = 0;
  for (const auto& [w, c] : parts) {
    if (w <= 0) throw std::invalid_argument("mixture weights must be positive");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("mixture weights sum to " + to_string(total) + ", not 1");
  return Charge(std::make_shared<const Mix>(Mix{std::move(parts)}));
}

inline bool Charge::is_diffuse() const {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Frequency> || std::is_same_v<T, DyadicLimit>) {
          return true;
        } else if constexpr (std::is_same_v<T, Geometric> || std::is_same_v<T, PointMass>) {
          return false;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Restrict>>) {
          return n->base.is_diffuse();
        } else {
          return std::all_of(n->parts.begin(), n->parts.end(),
                             [](const WeightedCharge& p) { return p.second.is_diffuse(); });
        }
      },
      node_);
}

inline bool Charge::has_dyadic_limit() const {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DyadicLimit>) {
          return true;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Restrict>>) {
          return n->base.has_dyadic_limit();
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Mix>>) {
          return std::any_of(n->parts.begin(), n->parts.end(),
                             [](const WeightedCharge& p) { return p.second.has_dyadic_limit(); });
        } else {
          return false;
        }
      },
      node_);
}

inline bool Charge::operator==(const Charge& o) const {
  if (node_.index() != o.node_.index()) return false;
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(o.node_);
        if constexpr (std::is_same_v<T, Frequency> || std::is_same_v<T, DyadicLimit>) {
          return true;
        } else if constexpr (std::is_same_v<T, Geometric>) {
          return n.beta == m.beta;
        } else if constexpr (std::is_same_v<T, PointMass>) {
          return n.stage == m.stage;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Restrict>>) {
          return n->base == m->base && n->on == m->on;
        } else {
          return n->parts == m->parts;
        }
      },
      node_);
}

}  // namespace chargemdp
