#pragma once

// Exact arithmetic in Q(L), the field of rational functions in the formal
// weight L. Rationals are GMP-backed; the polynomial layer is ours.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "opalg/errors.hpp"

namespace opalg {

using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Dense univariate polynomial over Q in the weight L, lowest degree first.
class RatPoly {
 public:
  RatPoly() = default;
  RatPoly(const Rational& c) {  // NOLINT(implicit)
    if (sgn(c) != 0) coeffs_.push_back(c);
  }
  explicit RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static RatPoly monomial(const Rational& c, std::size_t degree) {
    if (sgn(c) == 0) return {};
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return RatPoly(std::move(v));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& lead() const { return coeffs_.back(); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  /// Index of the lowest nonzero coefficient (0 for the zero polynomial).
  std::size_t valuation() const noexcept {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (sgn(coeffs_[i]) != 0) return i;
    return 0;
  }

  std::size_t term_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) != 0; }));
  }

  bool is_constant() const noexcept { return coeffs_.size() <= 1; }

  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.coeffs_ == b.coeffs_; }

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return RatPoly(std::move(r));
  }
  friend RatPoly operator-(const RatPoly& a) {
    RatPoly r = a;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (sgn(a.coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RatPoly(std::move(r));
  }

  RatPoly scaled(const Rational& c) const {
    if (sgn(c) == 0) return {};
    RatPoly r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
  }

  /// Multiplies by L^k (k may be negative as long as the result stays polynomial).
  RatPoly shifted(long k) const {
    if (is_zero() || k == 0) return *this;
    if (k > 0) {
      std::vector<Rational> r(static_cast<std::size_t>(k));
      r.insert(r.end(), coeffs_.begin(), coeffs_.end());
      return RatPoly(std::move(r));
    }
    auto drop = static_cast<std::size_t>(-k);
    return RatPoly(std::vector<Rational>(coeffs_.begin() + static_cast<long>(drop), coeffs_.end()));
  }

  /// Euclidean division; divisor must be nonzero.
  static std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    if (a.degree() < b.degree()) return {RatPoly{}, a};
    std::vector<Rational> rem = a.coeffs_;
    std::vector<Rational> quot(a.coeffs_.size() - b.coeffs_.size() + 1);
    const Rational inv_lead = 1 / b.lead();
    for (int i = a.degree(); i >= b.degree(); --i) {
      Rational q = rem[static_cast<std::size_t>(i)] * inv_lead;
      if (sgn(q) == 0) continue;
      std::size_t shift = static_cast<std::size_t>(i - b.degree());
      quot[shift] = q;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) rem[shift + j] -= q * b.coeffs_[j];
    }
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
  }

  RatPoly monic() const { return is_zero() ? *this : scaled(1 / lead()); }

  static RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  Rational evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  std::size_t hash() const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& c : coeffs_) {
      h ^= std::hash<std::string>{}(c.get_str()) + 0x9e3779b9 + (h << 6) + (h >> 2);
    }
    return h;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// An element of Q(L), stored as numerator/denominator with gcd 1 and a monic
/// denominator, so equality is structural.
class Scalar {
 public:
  Scalar() : den_(Rational(1)) {}
  Scalar(long v) : Scalar(Rational(v)) {}  // NOLINT(implicit)
  Scalar(const Rational& v) : num_(v), den_(Rational(1)) {}  // NOLINT(implicit)
  Scalar(RatPoly num, RatPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  /// The formal weight L raised to an integer power.
  static Scalar lambda(long power = 1) {
    if (power >= 0) return Scalar(RatPoly::monomial(1, static_cast<std::size_t>(power)), RatPoly(Rational(1)));
    return Scalar(RatPoly(Rational(1)), RatPoly::monomial(1, static_cast<std::size_t>(-power)));
  }

  const RatPoly& numerator() const noexcept { return num_; }
  const RatPoly& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.degree() == 0 && den_.degree() == 0 && num_.lead() == 1; }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  /// Denominator is a power of L: the scalar is a Laurent polynomial.
  bool is_laurent() const noexcept { return den_.term_count() == 1; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
    if (a.is_laurent() && b.is_laurent()) {
      // Both denominators are L^k: bring to the larger power.
      long ka = a.den_.degree(), kb = b.den_.degree();
      long k = std::max(ka, kb);
      return Scalar(a.num_.shifted(k - ka) + b.num_.shifted(k - kb), a.den_.degree() >= b.den_.degree() ? a.den_ : b.den_);
    }
    return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Scalar operator-(const Scalar& a) {
    Scalar r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    return Scalar(a.num_ * b.num_, a.den_ * b.den_);
  }

  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of the zero scalar");
    return Scalar(den_, num_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Exact value at a concrete nonzero weight.
  Rational specialize(const Rational& weight) const {
    if (sgn(weight) == 0) throw Error(ErrorCode::InvalidWeight, "weight must be nonzero");
    Rational d = den_.evaluate(weight);
    if (sgn(d) == 0) throw Error(ErrorCode::PoleAtWeight, "denominator vanishes at L = " + weight.get_str());
    return num_.evaluate(weight) / d;
  }

  std::size_t hash() const noexcept { return num_.hash() * 31 + den_.hash(); }

 private:
  void normalize() {
    if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    if (num_.is_zero()) {
      den_ = RatPoly(Rational(1));
      return;
    }
    if (den_.term_count() == 1) {
      // c * L^k: cancel common powers of L and make the denominator monic.
      Rational c = den_.lead();
      long k = den_.degree();
      long m = std::min<long>(k, static_cast<long>(num_.valuation()));
      num_ = num_.scaled(1 / c).shifted(-m);
      den_ = RatPoly::monomial(1, static_cast<std::size_t>(k - m));
      return;
    }
    RatPoly g = RatPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = RatPoly::divmod(num_, g).first;
      den_ = RatPoly::divmod(den_, g).first;
    }
    Rational c = den_.lead();
    if (c != 1) {
      num_ = num_.scaled(1 / c);
      den_ = den_.scaled(1 / c);
    }
  }

  RatPoly num_;
  RatPoly den_;
};

namespace detail {

inline std::string rational_text(const Rational& q) {
  // Integers bare, fractions parenthesised so they compose with '*'.
  if (q.get_den() == 1) return q.get_str();
  return "(" + q.get_str() + ")";
}

/// c * L^k with c != 0, rendered re-parseably.
inline std::string laurent_term(const Rational& c, long k) {
  std::string lam;
  if (k == 1) lam = "L";
  else if (k != 0) lam = "L^" + std::to_string(k);
  if (lam.empty()) return rational_text(c);
  if (c == 1) return lam;
  if (c == -1) return "-" + lam;
  return rational_text(c) + "*" + lam;
}

inline std::string poly_text(const RatPoly& p, long shift) {
  std::string out;
  bool first = true;
  for (long i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    if (first) {
      out += laurent_term(c, i - shift);
    } else if (sgn(c) < 0) {
      out += " - " + laurent_term(-c, i - shift);
    } else {
      out += " + " + laurent_term(c, i - shift);
    }
    first = false;
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

/// Textual form that the term grammar parses back to the same scalar.
inline std::string to_string(const Scalar& s) {
  if (s.is_zero()) return "0";
  if (s.is_laurent()) return detail::poly_text(s.numerator(), s.denominator().degree());
  return "(" + detail::poly_text(s.numerator(), 0) + ")/(" + detail::poly_text(s.denominator(), 0) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

}  // namespace opalg
