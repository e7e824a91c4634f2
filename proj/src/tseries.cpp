#include "kreweras/tseries.hpp"

#include <algorithm>
#include <stdexcept>

#include "kreweras/errors.hpp"
#include "rational_series.hpp"

namespace kreweras {

TSeries::TSeries(int truncation_order) {
  if (truncation_order < 0) throw std::invalid_argument("TSeries: negative truncation order");
  coefficients_.resize(truncation_order + 1);
}

TSeries::TSeries(std::vector<WindingPoly> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw std::invalid_argument("TSeries: no coefficients");
}

TSeries TSeries::from_rationals(const std::vector<Rational>& coefficients) {
  std::vector<WindingPoly> coeffs(coefficients.begin(), coefficients.end());
  return TSeries(std::move(coeffs));
}

bool TSeries::is_rational() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(),
                     [](const WindingPoly& p) { return p.is_constant(); });
}

std::vector<Rational> TSeries::rational_coefficients() const {
  if (!is_rational()) throw std::domain_error("TSeries: coefficients depend on s");
  std::vector<Rational> out;
  out.reserve(coefficients_.size());
  for (const auto& c : coefficients_) out.push_back(c.coeff(0));
  return out;
}

TSeries TSeries::truncated(int order) const {
  if (order >= truncation_order()) return *this;
  return TSeries(std::vector<WindingPoly>(coefficients_.begin(),
                                          coefficients_.begin() + order + 1));
}

std::complex<long double> TSeries::evaluate(std::complex<long double> t,
                                            std::complex<long double> s) const {
  std::complex<long double> total = 0;
  for (int n = truncation_order(); n >= 0; --n) total = total * t + coefficients_[n].evaluate(s);
  return total;
}

TSeries TSeries::operator-() const {
  TSeries out = *this;
  for (auto& c : out.coefficients_) c = -c;
  return out;
}

TSeries operator+(const TSeries& a, const TSeries& b) {
  const int order = std::min(a.truncation_order(), b.truncation_order());
  std::vector<WindingPoly> coeffs(order + 1);
  for (int n = 0; n <= order; ++n) coeffs[n] = a[n] + b[n];
  return TSeries(std::move(coeffs));
}

TSeries operator-(const TSeries& a, const TSeries& b) {
  const int order = std::min(a.truncation_order(), b.truncation_order());
  std::vector<WindingPoly> coeffs(order + 1);
  for (int n = 0; n <= order; ++n) coeffs[n] = a[n] - b[n];
  return TSeries(std::move(coeffs));
}

TSeries operator*(const TSeries& a, const TSeries& b) {
  // Valuations are not tracked for TSeries; both inputs start at t^0.
  const int order = std::min(a.truncation_order(), b.truncation_order());
  std::vector<WindingPoly> coeffs(order + 1);
  WindingAccumulator acc;
  for (int n = 0; n <= order; ++n) {
    for (int i = 0; i <= n; ++i) acc.add_product(a[i], b[n - i]);
    coeffs[n] = acc.take();
  }
  return TSeries(std::move(coeffs));
}

TSeries operator*(TSeries a, const Rational& c) {
  for (auto& x : a.coefficients_) x *= c;
  return a;
}

TSeries ts_compose(const TSeries& f, const TSeries& g) {
  const auto inner = g.rational_coefficients();
  if (sgn(inner[0]) != 0) throw std::invalid_argument("ts_compose: g(0) must be 0");
  const int order = std::min(f.truncation_order(), g.truncation_order());
  std::vector<WindingAccumulator> acc(order + 1);
  detail::RationalSeries power(order + 1);
  power[0] = 1;
  for (int m = 0; m <= order; ++m) {
    if (m > 0) power = detail::mul_trunc(power, inner, order);
    if (f[m].is_zero()) continue;
    for (int n = 0; n <= order; ++n) {
      if (sgn(power[n]) != 0) acc[n].add_scaled(f[m], power[n]);
    }
  }
  std::vector<WindingPoly> coeffs(order + 1);
  for (int n = 0; n <= order; ++n) coeffs[n] = acc[n].take();
  return TSeries(std::move(coeffs));
}

TSeries ts_revert(const TSeries& f) {
  if (!f.is_rational()) throw NotInvertible("ts_revert: coefficients must be free of s");
  const int order = f.truncation_order();
  const auto fc = f.rational_coefficients();
  if (sgn(fc[0]) != 0) throw NotInvertible("ts_revert: nonzero constant term");
  if (order < 1 || sgn(fc[1]) == 0) throw NotInvertible("ts_revert: zero linear coefficient");

  const auto fprime = detail::derivative(fc);
  // g is correct modulo t^(precision + 1).
  detail::RationalSeries g(order + 1);
  g[1] = 1 / fc[1];
  int precision = 1;
  while (precision < order) {
    precision = std::min(order, 2 * precision);
    detail::RationalSeries gp(g.begin(), g.begin() + precision + 1);
    auto residual = detail::compose_trunc(fc, gp, precision);
    residual[1] -= 1;
    const auto slope = detail::compose_trunc(fprime, gp, precision);
    const auto step = detail::mul_trunc(residual, detail::inv_trunc(slope, precision), precision);
    for (int n = 0; n <= precision; ++n) g[n] = gp[n] - step[n];
  }
  return TSeries::from_rationals(g);
}

}  // namespace kreweras
