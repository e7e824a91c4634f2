#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "kreweras/rational.hpp"

namespace kreweras {

/// Laurent polynomial in the winding marker s with rational coefficients.
///
/// Terms are kept sorted by exponent with no zero coefficients, so two equal
/// values always have identical representations.
class WindingPoly {
 public:
  using Term = std::pair<int, Rational>;

  WindingPoly() = default;
  WindingPoly(const Rational& constant);  // NOLINT: constants convert implicitly
  WindingPoly(long constant) : WindingPoly(Rational(constant)) {}  // NOLINT

  static WindingPoly monomial(const Rational& coefficient, int exponent);
  /// Sorts, merges equal exponents and drops zeros.
  static WindingPoly from_terms(std::vector<Term> terms);
  /// The generator s.
  static WindingPoly s() { return monomial(1, 1); }

  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first == 0);
  }
  // Both require a nonzero polynomial.
  int min_exponent() const { return terms_.front().first; }
  int max_exponent() const { return terms_.back().first; }

  Rational coeff(int exponent) const;
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Multiply by s^shift.
  WindingPoly shifted(int shift) const;
  /// Value at s = 1, i.e. the total count when coefficients are counts.
  Rational sum_coefficients() const;
  std::complex<long double> evaluate(std::complex<long double> s) const;

  WindingPoly operator-() const;
  WindingPoly& operator+=(const WindingPoly& other);
  WindingPoly& operator-=(const WindingPoly& other);
  WindingPoly& operator*=(const Rational& c);

  friend WindingPoly operator+(WindingPoly a, const WindingPoly& b) { return a += b; }
  friend WindingPoly operator-(WindingPoly a, const WindingPoly& b) { return a -= b; }
  friend WindingPoly operator*(const WindingPoly& a, const WindingPoly& b);
  friend WindingPoly operator*(WindingPoly a, const Rational& c) { return a *= c; }
  friend WindingPoly operator*(const Rational& c, WindingPoly a) { return a *= c; }
  friend bool operator==(const WindingPoly& a, const WindingPoly& b) = default;

 private:
  std::vector<Term> terms_;
};

/// Exact quotient numerator / divisor. Throws NonExactDivision when the
/// remainder is nonzero and std::invalid_argument for a zero divisor.
WindingPoly wp_exact_div(const WindingPoly& numerator, const WindingPoly& divisor);

std::string to_string(const WindingPoly& p);

/// Dense scratch buffer for sums of products of winding polynomials.
/// Grows on demand in both directions.
class WindingAccumulator {
 public:
  void add(const WindingPoly& p);
  void add_scaled(const WindingPoly& p, const Rational& c);
  void add_product(const WindingPoly& a, const WindingPoly& b);
  /// Returns the canonical polynomial and resets the accumulator.
  WindingPoly take();

 private:
  void reserve_range(int lo, int hi);

  int offset_ = 0;  // exponent of dense_[0]
  std::vector<Rational> dense_;
  Rational scratch_;
};

}  // namespace kreweras
