#include "kreweras/qseries.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "kreweras/errors.hpp"
#include "kreweras/tseries.hpp"
#include "rational_series.hpp"

namespace kreweras {

namespace {
const WindingPoly kZero;
}

QSeries::QSeries(int truncation_order) : truncation_order_(truncation_order) {}

QSeries::QSeries(int min_exponent, std::vector<WindingPoly> coefficients, int truncation_order)
    : min_exponent_(min_exponent),
      coefficients_(std::move(coefficients)),
      truncation_order_(truncation_order) {
  normalize();
}

QSeries QSeries::monomial(const WindingPoly& coefficient, int exponent, int truncation_order) {
  return QSeries(exponent, {coefficient}, truncation_order);
}

void QSeries::normalize() {
  const long keep = static_cast<long>(truncation_order_) - min_exponent_ + 1;
  if (keep <= 0) {
    coefficients_.clear();
  } else if (static_cast<long>(coefficients_.size()) > keep) {
    coefficients_.resize(keep);
  }
  while (!coefficients_.empty() && coefficients_.back().is_zero()) coefficients_.pop_back();
  auto first = std::find_if(coefficients_.begin(), coefficients_.end(),
                            [](const WindingPoly& p) { return !p.is_zero(); });
  min_exponent_ += static_cast<int>(first - coefficients_.begin());
  coefficients_.erase(coefficients_.begin(), first);
  if (coefficients_.empty()) min_exponent_ = 0;
}

const WindingPoly& QSeries::coeff(int exponent) const {
  if (coefficients_.empty() || exponent < min_exponent_ || exponent > max_exponent()) {
    return kZero;
  }
  return coefficients_[exponent - min_exponent_];
}

QSeries QSeries::shifted(int shift) const {
  QSeries out = *this;
  if (!out.coefficients_.empty()) out.min_exponent_ += shift;
  out.truncation_order_ += shift;
  return out;
}

QSeries QSeries::truncated(int order) const {
  if (order >= truncation_order_) return *this;
  return QSeries(min_exponent_, coefficients_, order);
}

QSeries QSeries::operator-() const {
  QSeries out = *this;
  for (auto& c : out.coefficients_) c = -c;
  return out;
}

QSeries& QSeries::operator*=(const WindingPoly& c) {
  for (auto& x : coefficients_) x = x * c;
  normalize();
  return *this;
}

QSeries& QSeries::operator*=(const Rational& c) {
  for (auto& x : coefficients_) x *= c;
  normalize();
  return *this;
}

namespace {

QSeries add_impl(const QSeries& a, const QSeries& b, bool subtract) {
  const int order = std::min(a.truncation_order(), b.truncation_order());
  if (a.is_zero() && b.is_zero()) return QSeries(order);
  int lo, hi;
  if (a.is_zero()) {
    lo = b.min_exponent();
    hi = b.max_exponent();
  } else if (b.is_zero()) {
    lo = a.min_exponent();
    hi = a.max_exponent();
  } else {
    lo = std::min(a.min_exponent(), b.min_exponent());
    hi = std::max(a.max_exponent(), b.max_exponent());
  }
  hi = std::min(hi, order);
  if (hi < lo) return QSeries(order);
  std::vector<WindingPoly> coeffs(hi - lo + 1);
  for (int e = lo; e <= hi; ++e) {
    coeffs[e - lo] = subtract ? a.coeff(e) - b.coeff(e) : a.coeff(e) + b.coeff(e);
  }
  return QSeries(lo, std::move(coeffs), order);
}

}  // namespace

QSeries operator+(const QSeries& a, const QSeries& b) { return add_impl(a, b, false); }
QSeries operator-(const QSeries& a, const QSeries& b) { return add_impl(a, b, true); }

QSeries operator*(const QSeries& a, const QSeries& b) {
  const int order = std::min(a.valuation() + b.truncation_order(),
                             b.valuation() + a.truncation_order());
  if (a.is_zero() || b.is_zero()) return QSeries(order);
  const int lo = a.min_exponent() + b.min_exponent();
  const int hi = std::min(order, a.max_exponent() + b.max_exponent());
  if (hi < lo) return QSeries(order);
  std::vector<WindingPoly> coeffs(hi - lo + 1);
  WindingAccumulator acc;
  for (int e = lo; e <= hi; ++e) {
    const int i_lo = std::max(a.min_exponent(), e - b.max_exponent());
    const int i_hi = std::min(a.max_exponent(), e - b.min_exponent());
    for (int i = i_lo; i <= i_hi; ++i) acc.add_product(a.coeff(i), b.coeff(e - i));
    coeffs[e - lo] = acc.take();
  }
  return QSeries(lo, std::move(coeffs), order);
}

QSeries qs_invert(const QSeries& a) {
  if (a.is_zero()) throw NotInvertible("qs_invert: zero series");
  const int v = a.valuation();
  const WindingPoly& lead = a.coeff(v);
  if (!lead.is_monomial()) {
    throw NonUnitLeadingCoefficient("qs_invert: leading coefficient " + to_string(lead) +
                                    " at r^" + std::to_string(v) + " is not a monomial");
  }
  const int lead_exp = lead.min_exponent();
  const Rational lead_inv = 1 / lead.coeff(lead_exp);
  const int order = a.truncation_order() - 2 * v;
  const int count = order + v + 1;  // exponents -v .. order
  if (count <= 0) return QSeries(order);

  // b[n] is the coefficient of r^(n - v).
  std::vector<WindingPoly> b(count);
  b[0] = WindingPoly::monomial(lead_inv, -lead_exp);
  WindingAccumulator acc;
  for (int n = 1; n < count; ++n) {
    const int i_hi = std::min(n, a.max_exponent() - v);
    for (int i = 1; i <= i_hi; ++i) acc.add_product(a.coeff(v + i), b[n - i]);
    WindingPoly sum = acc.take();
    if (!sum.is_zero()) b[n] = (-sum).shifted(-lead_exp) * lead_inv;
  }
  return QSeries(-v, std::move(b), order);
}

QSeries qs_exact_div(const QSeries& a, const WindingPoly& divisor) {
  std::vector<WindingPoly> coeffs;
  coeffs.reserve(a.coefficients().size());
  for (int e = a.min_exponent(); !a.is_zero() && e <= a.max_exponent(); ++e) {
    try {
      coeffs.push_back(wp_exact_div(a.coeff(e), divisor));
    } catch (const NonExactDivision& err) {
      throw NonExactDivision("qs_exact_div at r^" + std::to_string(e) + ": " + err.what());
    }
  }
  return QSeries(a.min_exponent(), std::move(coeffs), a.truncation_order());
}

TSeries qs_substitute_t(const QSeries& a, const TSeries& r_of_t) {
  if (!r_of_t.is_rational()) {
    throw std::invalid_argument("qs_substitute_t: r(t) must have rational coefficients");
  }
  const detail::RationalSeries r = r_of_t.rational_coefficients();
  if (sgn(r[0]) != 0) {
    throw std::invalid_argument("qs_substitute_t: r(t) must have zero constant term");
  }
  if (!a.is_zero() && a.min_exponent() < 0) {
    throw NegativeTExponent("qs_substitute_t: coefficient at r^" +
                            std::to_string(a.min_exponent()) + " gives a pole in t");
  }
  const int r_order = r_of_t.truncation_order();
  int r_val = 1;
  while (r_val <= r_order && sgn(r[r_val]) == 0) ++r_val;
  const long by_a = static_cast<long>(r_val) * (a.truncation_order() + 1) - 1;
  const int order = static_cast<int>(std::min<long>(by_a, r_order));
  if (order < 0) return TSeries(0);

  std::vector<WindingAccumulator> acc(order + 1);
  detail::RationalSeries power(order + 1);
  power[0] = 1;
  const int m_hi = a.is_zero() ? -1 : a.max_exponent();
  for (int m = 0; m <= m_hi; ++m) {
    if (m > 0) power = detail::mul_trunc(power, r, order);
    if (static_cast<long>(m) * r_val > order) break;
    const WindingPoly& c = a.coeff(m);
    if (c.is_zero()) continue;
    for (int n = m * r_val; n <= order; ++n) {
      if (sgn(power[n]) != 0) acc[n].add_scaled(c, power[n]);
    }
  }
  std::vector<WindingPoly> coeffs(order + 1);
  for (int n = 0; n <= order; ++n) coeffs[n] = acc[n].take();
  return TSeries(std::move(coeffs));
}

}  // namespace kreweras
