#pragma once

// Univariate polynomials over Q and reduced fractions of them, in the
// discount factor b.

#include "chargemdp/rational.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chargemdp {

enum class Sign { negative = -1, zero = 0, positive = 1 };

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Rational c) : coeffs_{std::move(c)} { trim(); }  // NOLINT: scalars embed
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// The indeterminate b.
  static Polynomial x() { return Polynomial(std::vector<Rational>{0, 1}); }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& at) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
    return Polynomial(std::move(c));
  }
  Polynomial operator-() const {
    auto c = coeffs_;
    for (auto& v : c) v = -v;
    return Polynomial(std::move(c));
  }
  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }
  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    return Polynomial(std::move(c));
  }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = coeffs_;
    if (degree() < d.degree()) return {Polynomial(), *this};
    std::vector<Rational> quot(coeffs_.size() - d.coeffs_.size() + 1, Rational(0));
    for (int k = degree() - d.degree(); k >= 0; --k) {
      Rational f = rem[static_cast<std::size_t>(k + d.degree())] / d.leading();
      quot[static_cast<std::size_t>(k)] = f;
      if (f == 0) continue;
      for (int j = 0; j <= d.degree(); ++j) rem[static_cast<std::size_t>(k + j)] -= f * d.coeffs_[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    auto c = coeffs_;
    Rational lead = leading();
    for (auto& v : c) v /= lead;
    return Polynomial(std::move(c));
  }

  /// Monic gcd; gcd(0, 0) = 0.
  static Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      auto r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// p(1 - e), as a polynomial in e.
  Polynomial at_one_minus() const {
    Polynomial one_minus(std::vector<Rational>{1, -1});
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * one_minus + Polynomial(*it);
    return acc;
  }

  bool operator==(const Polynomial&) const = default;

  /// "c0 + c1*b + c2*b^2", zero terms omitted.
  std::string str(const std::string& var = "b") const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += to_string(coeffs_[i]);
      if (i >= 1) s += "*" + var;
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;  // low to high degree
};

class PoleAtOne : public Error {
 public:
  using Error::Error;
};

/// num/den with gcd(num, den) = 1 and den monic.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Rational(1)) {}
  RationalFunction(Rational c) : num_(std::move(c)), den_(Rational(1)) {}  // NOLINT
  RationalFunction(Polynomial num) : num_(std::move(num)), den_(Rational(1)) {}  // NOLINT
  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Rational operator()(const Rational& at) const {
    Rational d = den_(at);
    if (d == 0) throw std::domain_error("rational function has a pole at " + to_string(at));
    return num_(at) / d;
  }

  RationalFunction operator+(const RationalFunction& o) const {
    return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
  }
  RationalFunction operator-() const { return {-num_, den_}; }
  RationalFunction operator-(const RationalFunction& o) const { return *this + (-o); }
  RationalFunction operator*(const RationalFunction& o) const { return {num_ * o.num_, den_ * o.den_}; }
  RationalFunction operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw std::domain_error("division by the zero rational function");
    return {num_ * o.den_, den_ * o.num_};
  }

  bool operator==(const RationalFunction&) const = default;

  /// Sign of f(1 - e) for all sufficiently small e > 0.
  Sign sign_near_one() const {
    if (is_zero()) return Sign::zero;
    auto lowest = [](const Polynomial& p) {
      const auto shifted = p.at_one_minus();
      for (const auto& c : shifted.coeffs())
        if (c != 0) return sgn(c);
      return 0;
    };
    int s = lowest(num_) * lowest(den_);
    return s > 0 ? Sign::positive : Sign::negative;
  }

  /// lim_{b -> 1-} f(b), requiring f to be finite there.
  Rational value_at_one() const {
    if (den_(1) == 0) throw PoleAtOne("rational function has a pole at b = 1: " + str());
    return num_(1) / den_(1);
  }

  std::string str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

 private:
  void reduce() {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.is_zero()) {
      den_ = Polynomial(Rational(1));
      return;
    }
    auto g = Polynomial::gcd(num_, den_);
    num_ = num_.divmod(g).first;
    den_ = den_.divmod(g).first;
    Rational lead = den_.leading();
    num_ = num_ * Polynomial(Rational(1 / lead));
    den_ = den_.monic();
  }

  Polynomial num_;
  Polynomial den_;
};

}  // namespace chargemdp
