#pragma once

#include <complex>
#include <vector>

#include "kreweras/winding_poly.hpp"

namespace kreweras {

/// Truncated power series in t with WindingPoly coefficients, indexed from
/// t^0. Coefficients 0..truncation_order() are exact and always stored.
class TSeries {
 public:
  /// The zero series, known up to and including t^truncation_order.
  explicit TSeries(int truncation_order);
  explicit TSeries(std::vector<WindingPoly> coefficients);

  static TSeries from_rationals(const std::vector<Rational>& coefficients);

  int truncation_order() const { return static_cast<int>(coefficients_.size()) - 1; }
  const WindingPoly& operator[](int n) const { return coefficients_.at(n); }
  const std::vector<WindingPoly>& coefficients() const { return coefficients_; }

  /// True when every coefficient is free of s.
  bool is_rational() const;
  /// The s^0 coefficients; throws std::domain_error unless is_rational().
  std::vector<Rational> rational_coefficients() const;

  TSeries truncated(int order) const;
  /// Sum of the series at a numeric (t, s) using the stored coefficients.
  std::complex<long double> evaluate(std::complex<long double> t,
                                     std::complex<long double> s) const;

  TSeries operator-() const;
  friend TSeries operator+(const TSeries& a, const TSeries& b);
  friend TSeries operator-(const TSeries& a, const TSeries& b);
  friend TSeries operator*(const TSeries& a, const TSeries& b);
  friend TSeries operator*(TSeries a, const Rational& c);
  friend bool operator==(const TSeries&, const TSeries&) = default;

 private:
  std::vector<WindingPoly> coefficients_;
};

/// f(g(t)) for rational g with zero constant term. The truncation order is
/// the smaller of the two inputs' orders.
TSeries ts_compose(const TSeries& f, const TSeries& g);

/// Compositional inverse by Newton iteration (precision doubles per step).
/// f must have rational coefficients, zero constant term and nonzero linear
/// term; otherwise throws NotInvertible.
TSeries ts_revert(const TSeries& f);

}  // namespace kreweras
