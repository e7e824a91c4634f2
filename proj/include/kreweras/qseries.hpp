#pragma once

#include <vector>

#include "kreweras/winding_poly.hpp"

namespace kreweras {

class TSeries;

/// Truncated Laurent series in r = q^(1/3) with WindingPoly coefficients.
///
/// Exponents are integers in r-units, so every power q^(c/3) the theta
/// series need is representable. The coefficient of r^e is exact for every
/// e <= truncation_order(); nothing above it is stored. Arithmetic follows
/// the usual rules for truncated series and never raises the truncation
/// order: a product is exact up to min(val(a) + trunc(b), val(b) + trunc(a)).
class QSeries {
 public:
  /// The zero series, known up to and including r^truncation_order.
  explicit QSeries(int truncation_order);
  QSeries(int min_exponent, std::vector<WindingPoly> coefficients, int truncation_order);

  static QSeries monomial(const WindingPoly& coefficient, int exponent, int truncation_order);

  int truncation_order() const { return truncation_order_; }
  /// Exponent of the first stored coefficient; never a zero coefficient.
  int min_exponent() const { return min_exponent_; }
  /// Lowest exponent with a nonzero coefficient, or truncation_order() + 1
  /// for the zero series.
  int valuation() const {
    return coefficients_.empty() ? truncation_order_ + 1 : min_exponent_;
  }
  int max_exponent() const {
    return min_exponent_ + static_cast<int>(coefficients_.size()) - 1;
  }
  bool is_zero() const { return coefficients_.empty(); }
  const WindingPoly& coeff(int exponent) const;
  const std::vector<WindingPoly>& coefficients() const { return coefficients_; }

  /// Multiply by r^shift; the truncation order moves with it.
  QSeries shifted(int shift) const;
  /// Forget everything above r^order (only lowers the truncation order).
  QSeries truncated(int order) const;

  QSeries operator-() const;
  QSeries& operator*=(const WindingPoly& c);
  QSeries& operator*=(const Rational& c);

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(QSeries a, const WindingPoly& c) { return a *= c; }
  friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
  friend bool operator==(const QSeries&, const QSeries&) = default;

 private:
  void normalize();

  int min_exponent_ = 0;
  std::vector<WindingPoly> coefficients_;
  int truncation_order_ = 0;
};

/// Multiplicative inverse. The lowest nonzero coefficient must be a monomial
/// c*s^j (throws NonUnitLeadingCoefficient otherwise, NotInvertible for the
/// zero series). The result is exact to truncation_order - 2*valuation.
QSeries qs_invert(const QSeries& a);

/// Coefficientwise exact division by a polynomial in s.
QSeries qs_exact_div(const QSeries& a, const WindingPoly& divisor);

/// Composition a(r(t)). r_of_t must have rational coefficients and zero
/// constant term. Throws NegativeTExponent if a has a nonzero coefficient at
/// a negative power of r.
TSeries qs_substitute_t(const QSeries& a, const TSeries& r_of_t);

}  // namespace kreweras
