#include "kreweras/winding_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "kreweras/errors.hpp"

namespace kreweras {

// Public entry points canonicalize, since mpq_class(num, den) does not.
WindingPoly::WindingPoly(const Rational& constant) {
  if (sgn(constant) != 0) {
    terms_.emplace_back(0, constant);
    terms_.back().second.canonicalize();
  }
}

WindingPoly WindingPoly::monomial(const Rational& coefficient, int exponent) {
  WindingPoly p;
  if (sgn(coefficient) != 0) {
    p.terms_.emplace_back(exponent, coefficient);
    p.terms_.back().second.canonicalize();
  }
  return p;
}

WindingPoly WindingPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  WindingPoly p;
  for (auto& [e, c] : terms) {
    c.canonicalize();
    if (!p.terms_.empty() && p.terms_.back().first == e) {
      p.terms_.back().second += c;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().second) == 0) p.terms_.pop_back();
      p.terms_.emplace_back(e, std::move(c));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().second) == 0) p.terms_.pop_back();
  return p;
}

Rational WindingPoly::coeff(int exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == exponent) return it->second;
  return Rational(0);
}

WindingPoly WindingPoly::shifted(int shift) const {
  WindingPoly p = *this;
  for (auto& term : p.terms_) term.first += shift;
  return p;
}

Rational WindingPoly::sum_coefficients() const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) total += c;
  return total;
}

std::complex<long double> WindingPoly::evaluate(std::complex<long double> s) const {
  std::complex<long double> total = 0;
  for (const auto& [e, c] : terms_) total += to_long_double(c) * std::pow(s, e);
  return total;
}

WindingPoly WindingPoly::operator-() const {
  WindingPoly p = *this;
  for (auto& term : p.terms_) term.second = -term.second;
  return p;
}

namespace {

// Merge two sorted term lists, combining with sign +1 or -1.
std::vector<WindingPoly::Term> merge(std::span<const WindingPoly::Term> a,
                                     std::span<const WindingPoly::Term> b, bool subtract) {
  std::vector<WindingPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, subtract ? Rational(-b[j].second) : b[j].second);
      ++j;
    } else {
      Rational c = subtract ? Rational(a[i].second - b[j].second)
                            : Rational(a[i].second + b[j].second);
      if (sgn(c) != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

WindingPoly& WindingPoly::operator+=(const WindingPoly& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  terms_ = merge(terms_, other.terms_, false);
  return *this;
}

WindingPoly& WindingPoly::operator-=(const WindingPoly& other) {
  if (other.is_zero()) return *this;
  terms_ = merge(terms_, other.terms_, true);
  return *this;
}

WindingPoly& WindingPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& term : terms_) term.second *= c;
  return *this;
}

WindingPoly operator*(const WindingPoly& a, const WindingPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_monomial()) {
    WindingPoly p = b.shifted(a.min_exponent());
    return p *= a.terms_.front().second;
  }
  if (b.is_monomial()) {
    WindingPoly p = a.shifted(b.min_exponent());
    return p *= b.terms_.front().second;
  }
  WindingAccumulator acc;
  acc.add_product(a, b);
  return acc.take();
}

WindingPoly wp_exact_div(const WindingPoly& numerator, const WindingPoly& divisor) {
  if (divisor.is_zero()) throw std::invalid_argument("wp_exact_div: zero divisor");
  if (numerator.is_zero()) return {};

  // Strip the s-power units and divide as ordinary polynomials.
  const int num_low = numerator.min_exponent();
  const int div_low = divisor.min_exponent();
  const int num_deg = numerator.max_exponent() - num_low;
  const int div_deg = divisor.max_exponent() - div_low;
  if (num_deg < div_deg) {
    throw NonExactDivision("wp_exact_div: " + to_string(numerator) + " is not divisible by " +
                           to_string(divisor));
  }
  std::vector<Rational> rem(num_deg + 1);
  for (const auto& [e, c] : numerator.terms()) rem[e - num_low] = c;
  std::vector<Rational> d(div_deg + 1);
  for (const auto& [e, c] : divisor.terms()) d[e - div_low] = c;
  const Rational lead_inv = 1 / d.back();

  std::vector<WindingPoly::Term> quotient;
  Rational prod;
  for (int top = num_deg; top >= div_deg; --top) {
    if (sgn(rem[top]) == 0) continue;
    Rational q = rem[top] * lead_inv;
    const int shift = top - div_deg;
    for (int i = 0; i <= div_deg; ++i) {
      if (sgn(d[i]) == 0) continue;
      mpq_mul(prod.get_mpq_t(), q.get_mpq_t(), d[i].get_mpq_t());
      rem[shift + i] -= prod;
    }
    quotient.emplace_back(shift + num_low - div_low, std::move(q));
  }
  for (int i = 0; i < div_deg; ++i) {
    if (sgn(rem[i]) != 0) {
      throw NonExactDivision("wp_exact_div: " + to_string(numerator) +
                             " is not divisible by " + to_string(divisor));
    }
  }
  return WindingPoly::from_terms(std::move(quotient));
}

std::string to_string(const WindingPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) out << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) out << "-";
    first = false;
    Rational mag = abs(c);
    if (e == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "s";
    if (e != 1) out << "^" << e;
  }
  return out.str();
}

void WindingAccumulator::reserve_range(int lo, int hi) {
  if (dense_.empty()) {
    offset_ = lo;
    dense_.resize(hi - lo + 1);
    return;
  }
  if (lo < offset_) {
    dense_.insert(dense_.begin(), offset_ - lo, Rational(0));
    offset_ = lo;
  }
  const int top = offset_ + static_cast<int>(dense_.size()) - 1;
  if (hi > top) dense_.resize(dense_.size() + (hi - top));
}

void WindingAccumulator::add(const WindingPoly& p) {
  if (p.is_zero()) return;
  reserve_range(p.min_exponent(), p.max_exponent());
  for (const auto& [e, c] : p.terms()) dense_[e - offset_] += c;
}

void WindingAccumulator::add_scaled(const WindingPoly& p, const Rational& c) {
  if (p.is_zero() || sgn(c) == 0) return;
  reserve_range(p.min_exponent(), p.max_exponent());
  for (const auto& [e, x] : p.terms()) {
    mpq_mul(scratch_.get_mpq_t(), x.get_mpq_t(), c.get_mpq_t());
    mpq_add(dense_[e - offset_].get_mpq_t(), dense_[e - offset_].get_mpq_t(),
            scratch_.get_mpq_t());
  }
}

void WindingAccumulator::add_product(const WindingPoly& a, const WindingPoly& b) {
  if (a.is_zero() || b.is_zero()) return;
  reserve_range(a.min_exponent() + b.min_exponent(), a.max_exponent() + b.max_exponent());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      mpq_mul(scratch_.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      Rational& slot = dense_[ea + eb - offset_];
      mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), scratch_.get_mpq_t());
    }
  }
}

WindingPoly WindingAccumulator::take() {
  std::vector<WindingPoly::Term> terms;
  for (std::size_t i = 0; i < dense_.size(); ++i) {
    if (sgn(dense_[i]) != 0) terms.emplace_back(offset_ + static_cast<int>(i), std::move(dense_[i]));
  }
  dense_.clear();
  offset_ = 0;
  // Already sorted and zero-free.
  return WindingPoly::from_terms(std::move(terms));
}

}  // namespace kreweras
