#include <doctest.h>

#include <random>

#include "kreweras/errors.hpp"
#include "kreweras/qseries.hpp"
#include "kreweras/tseries.hpp"
#include "kreweras/winding_poly.hpp"

using namespace kreweras;

namespace {

const WindingPoly s = WindingPoly::s();

WindingPoly random_poly(std::mt19937& rng, int max_terms = 4, int span = 4) {
  std::uniform_int_distribution<int> count(1, max_terms);
  std::uniform_int_distribution<int> exponent(-span, span);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<WindingPoly::Term> terms;
  for (int i = count(rng); i > 0; --i) terms.emplace_back(exponent(rng), Rational(num(rng), den(rng)));
  WindingPoly p = WindingPoly::from_terms(std::move(terms));
  return p.is_zero() ? WindingPoly(1) : p;
}

QSeries random_qseries(std::mt19937& rng, int trunc) {
  std::uniform_int_distribution<int> lead(-3, 2);
  const int v = lead(rng);
  std::vector<WindingPoly> c;
  for (int e = v; e <= trunc; ++e) c.push_back(random_poly(rng, 2, 2));
  return QSeries(v, c, trunc);
}

TSeries random_rational_tseries(std::mt19937& rng, int order, bool zero_constant) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::vector<Rational> c(order + 1);
  for (int n = 0; n <= order; ++n) c[n] = Rational(num(rng), 1 + n % 3);
  if (zero_constant) c[0] = 0;
  return TSeries::from_rationals(c);
}

QSeries geometric(int trunc) {
  return QSeries(0, {WindingPoly(1), WindingPoly(-1)}, trunc);
}

}  // namespace

TEST_CASE("exact division examples") {
  const WindingPoly one_minus_s3 = WindingPoly(1) - s * s * s;
  CHECK(wp_exact_div(one_minus_s3 * (WindingPoly(2) + s), one_minus_s3) == WindingPoly(2) + s);
  CHECK(wp_exact_div(s - s, WindingPoly(1) + s + s * s).is_zero());
  const WindingPoly s4_minus_s = s * s * s * s - s;
  const WindingPoly q = wp_exact_div(s4_minus_s, s * s * s - WindingPoly(1));
  CHECK(q == s);
  CHECK(q * (s * s * s - WindingPoly(1)) == s4_minus_s);
  CHECK_THROWS_AS(wp_exact_div(s + WindingPoly(2), s - WindingPoly(1)), NonExactDivision);
  CHECK_THROWS_AS(wp_exact_div(s, WindingPoly()), std::invalid_argument);
}

TEST_CASE("exact division inverts multiplication on random polynomials") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    const WindingPoly a = random_poly(rng, 5, 6);
    const WindingPoly b = random_poly(rng, 4, 3);
    CHECK(wp_exact_div(a * b, b) == a);
  }
}

TEST_CASE("winding polynomials obey ring axioms") {
  std::mt19937 rng(12);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("winding polynomial basics") {
  const WindingPoly p = WindingPoly::from_terms({{2, 3}, {-1, 1}, {2, -3}, {0, Rational(1, 2)}});
  CHECK(p.size() == 2);
  CHECK(p.min_exponent() == -1);
  CHECK(p.max_exponent() == 0);
  CHECK(p.coeff(0) == Rational(1, 2));
  CHECK(p.coeff(7) == 0);
  CHECK(p.sum_coefficients() == Rational(3, 2));
  CHECK(p.shifted(2).min_exponent() == 1);
  const auto v = (s * s + WindingPoly(1)).evaluate({0, 1});
  CHECK(std::abs(v) < 1e-18L);
  CHECK(to_string(WindingPoly(5) + s * s * s) == "5 + s^3");
}

TEST_CASE("accumulator matches direct products") {
  std::mt19937 rng(13);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    WindingAccumulator acc;
    acc.add_product(a, b);
    acc.add_scaled(c, Rational(-2, 3));
    acc.add(a);
    CHECK(acc.take() == a * b + c * Rational(-2, 3) + a);
  }
}

TEST_CASE("inverse examples") {
  const QSeries inv = qs_invert(geometric(10));
  for (int e = 0; e <= 10; ++e) CHECK(inv.coeff(e) == WindingPoly(1));
  CHECK(inv.truncation_order() == 10);

  const QSeries mono = QSeries::monomial(s, -2, 8);
  const QSeries mono_inv = qs_invert(mono);
  CHECK(mono_inv.valuation() == 2);
  CHECK(mono_inv.coeff(2) == s.shifted(-2));
  CHECK(mono_inv.truncation_order() == 12);

  const QSeries shifted = QSeries(-2, {s, WindingPoly(), WindingPoly(-1)}, 10);
  const QSeries shifted_inv = qs_invert(shifted);
  CHECK(shifted_inv.coeff(2) == WindingPoly::monomial(1, -1));
  CHECK(shifted_inv.coeff(4) == WindingPoly::monomial(1, -2));
  CHECK(shifted_inv.coeff(6) == WindingPoly::monomial(1, -3));
  const QSeries product = shifted * shifted_inv;
  CHECK(product.coeff(0) == WindingPoly(1));
  for (int e = 1; e <= product.truncation_order(); ++e) CHECK(product.coeff(e).is_zero());

  CHECK_THROWS_AS(qs_invert(QSeries(5)), NotInvertible);
  CHECK_THROWS_AS(qs_invert(QSeries(0, {s - WindingPoly(1)}, 5)), NonUnitLeadingCoefficient);
}

TEST_CASE("a times its inverse is one to truncation") {
  std::mt19937 rng(21);
  for (int i = 0; i < 60; ++i) {
    QSeries a = random_qseries(rng, 8);
    const int v = a.valuation();
    if (!a.coeff(v).is_monomial()) continue;
    const QSeries product = a * qs_invert(a);
    CHECK(product.coeff(0) == WindingPoly(1));
    for (int e = 1; e <= product.truncation_order(); ++e) CHECK(product.coeff(e).is_zero());
  }
}

TEST_CASE("q-series ring axioms and truncation propagation") {
  std::mt19937 rng(22);
  for (int i = 0; i < 40; ++i) {
    const auto a = random_qseries(rng, 6), b = random_qseries(rng, 7), c = random_qseries(rng, 5);
    const auto lhs = (a * b) * c;
    const auto rhs = a * (b * c);
    CHECK(lhs.truncation_order() == rhs.truncation_order());
    CHECK(lhs == rhs);
    const auto d1 = a * (b + c);
    const auto d2 = a * b + a * c;
    const int order = std::min(d1.truncation_order(), d2.truncation_order());
    CHECK(d1.truncated(order) == d2.truncated(order));
    CHECK((a * b).truncation_order() ==
          std::min(a.valuation() + b.truncation_order(), b.valuation() + a.truncation_order()));
  }
}

TEST_CASE("q-series exact division per coefficient") {
  const WindingPoly d = WindingPoly(1) + s + s * s;
  const QSeries a(0, {d * s, d * WindingPoly(3), d}, 4);
  const QSeries q = qs_exact_div(a, d);
  CHECK(q == QSeries(0, {s, WindingPoly(3), WindingPoly(1)}, 4));
  CHECK_THROWS_AS(qs_exact_div(QSeries(0, {s}, 3), d), NonExactDivision);
}

TEST_CASE("reversion examples") {
  const TSeries t = TSeries::from_rationals({0, 1, 0, 0, 0, 0});
  CHECK(ts_revert(t) == t);
  CHECK(ts_revert(TSeries::from_rationals({0, 2, 0, 0})) ==
        TSeries::from_rationals({0, Rational(1, 2), 0, 0}));
  const TSeries g = ts_revert(TSeries::from_rationals({0, 1, -1, 0, 0, 0, 0}));
  // Catalan numbers.
  CHECK(g == TSeries::from_rationals({0, 1, 1, 2, 5, 14, 42}));
  CHECK_THROWS_AS(ts_revert(TSeries::from_rationals({0, 0, 1})), NotInvertible);
  CHECK_THROWS_AS(ts_revert(TSeries::from_rationals({1, 1, 1})), NotInvertible);
}

TEST_CASE("reversion composes back to the identity") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> lin(1, 5);
  for (int i = 0; i < 100; ++i) {
    TSeries f = random_rational_tseries(rng, 9, true);
    auto c = f.rational_coefficients();
    c[1] = Rational(lin(rng), 1 + i % 4);
    f = TSeries::from_rationals(c);
    const TSeries g = ts_revert(f);
    std::vector<Rational> id(10);
    id[1] = 1;
    CHECK(ts_compose(f, g) == TSeries::from_rationals(id));
    CHECK(ts_compose(g, f) == TSeries::from_rationals(id));
  }
}

TEST_CASE("t-series ring axioms") {
  std::mt19937 rng(32);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_rational_tseries(rng, 7, false);
    const auto b = random_rational_tseries(rng, 6, false);
    const auto c = random_rational_tseries(rng, 8, false);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).truncation_order() == 6);
  }
}

TEST_CASE("substitution examples") {
  const TSeries t = TSeries::from_rationals({0, 1, 0, 0, 0, 0});
  CHECK(qs_substitute_t(QSeries::monomial(1, 2, 10), t).truncated(5) ==
        TSeries::from_rationals({0, 0, 1, 0, 0, 0}));

  const TSeries r = TSeries::from_rationals({0, 1, 1, 0, 0, 0, 0});
  const QSeries one_plus_r3 = QSeries(0, {WindingPoly(1), 0, 0, WindingPoly(1)}, 8);
  // (t + t^2)^3 = t^3 + 3t^4 + 3t^5 + t^6.
  CHECK(qs_substitute_t(one_plus_r3, r) == TSeries::from_rationals({1, 0, 0, 1, 3, 3, 1}));

  const QSeries cancel = QSeries::monomial(1, -1, 6) * QSeries::monomial(1, 1, 6);
  CHECK(qs_substitute_t(cancel, r).truncated(4) == TSeries::from_rationals({1, 0, 0, 0, 0}));

  CHECK_THROWS_AS(qs_substitute_t(QSeries::monomial(s, -1, 4), t), NegativeTExponent);
}

TEST_CASE("substitution truncation is monotone in the input order") {
  std::mt19937 rng(41);
  const TSeries r = TSeries::from_rationals({0, 1, -5, 3, 7, -2, 1, 0, 4, 1, 1});
  for (int i = 0; i < 20; ++i) {
    QSeries a = random_qseries(rng, 10);
    if (a.min_exponent() < 0) a = a.shifted(-a.min_exponent());
    const TSeries hi = qs_substitute_t(a, r);
    const TSeries lo = qs_substitute_t(a.truncated(6), r);
    REQUIRE(lo.truncation_order() <= hi.truncation_order());
    CHECK(hi.truncated(lo.truncation_order()) == lo);
  }
}

TEST_CASE("t-series evaluation") {
  const TSeries e(std::vector<WindingPoly>{WindingPoly(1), s, s * s + s.shifted(-2)});
  const auto v = e.evaluate({0.5L, 0}, {1, 0});
  CHECK(std::abs(v - std::complex<long double>(2, 0)) < 1e-18L);
  CHECK(!e.is_rational());
  CHECK_THROWS_AS((void)e.rational_coefficients(), std::domain_error);
}
