#include "kreweras/theta_q.hpp"

#include <stdexcept>
#include <string>

#include "kreweras/errors.hpp"

namespace kreweras {

QSeries build_T(const TSpec& spec) {
  if (spec.k < 0 || spec.nome_power < 1) throw std::invalid_argument("build_T: invalid TSpec");
  const int order = spec.truncation_order;
  const long c = spec.u_q_exp_thirds;
  const long m = spec.nome_power;

  std::vector<std::pair<int, WindingPoly::Term>> raw;
  for (long n = 0;; ++n) {
    const long base = 3 * m * n * (n + 1) / 2;
    const long e_up = base + c * (n + 1);  // u^{n+1}
    const long e_down = base - c * n;      // u^{-n}
    // Both exponents are eventually increasing in n; stop once past the
    // truncation and past the turning point.
    if (e_up > order && e_down > order && 3 * m * n > 2 * (c < 0 ? -c : c)) break;
    Integer weight;
    mpz_ui_pow_ui(weight.get_mpz_t(), 2 * n + 1, spec.k);
    if (n % 2 == 1) weight = -weight;
    if (e_up <= order) {
      raw.push_back({static_cast<int>(e_up),
                     {static_cast<int>(spec.u_s_exp * (n + 1)), Rational(weight)}});
    }
    if (e_down <= order) {
      Integer w = spec.k % 2 == 0 ? Integer(-weight) : weight;
      raw.push_back({static_cast<int>(e_down),
                     {static_cast<int>(-spec.u_s_exp * n), Rational(w)}});
    }
  }
  if (raw.empty()) return QSeries(order);
  int lo = raw.front().first, hi = lo;
  for (const auto& [e, term] : raw) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  std::vector<std::vector<WindingPoly::Term>> buckets(hi - lo + 1);
  for (auto& [e, term] : raw) buckets[e - lo].push_back(std::move(term));
  std::vector<WindingPoly> coeffs;
  coeffs.reserve(buckets.size());
  for (auto& b : buckets) coeffs.push_back(WindingPoly::from_terms(std::move(b)));
  return QSeries(lo, std::move(coeffs), order);
}

QSeries t_of_r(int truncation_order) {
  const int p = truncation_order;
  const QSeries numerator = build_T({1, 0, 0, 3, p}).shifted(1);
  const QSeries denominator = build_T({0, 0, 3, 3, p}) * Rational(4) + build_T({1, 0, 3, 3, p}) * Rational(6);
  return numerator * qs_invert(denominator);
}

TSeries r_of_t(int order) {
  if (order < 1) throw std::invalid_argument("r_of_t: order must be >= 1");
  const QSeries t = t_of_r(order);
  std::vector<Rational> coeffs(order + 1);
  for (int n = 0; n <= order; ++n) coeffs[n] = t.coeff(n).coeff(0);
  return ts_revert(TSeries::from_rationals(coeffs));
}

TSeries q_of_t(int order) {
  if (order < 3) return TSeries(std::max(order, 0));
  const TSeries r = r_of_t(order);
  return r * r * r;
}

namespace {

void require_integral(const TSeries& gf, const char* what) {
  for (int n = 0; n <= gf.truncation_order(); ++n) {
    for (const auto& [e, c] : gf[n].terms()) {
      if (!is_integer(c)) {
        throw IntegralityViolation(std::string(what) + ": non-integral coefficient " +
                                   c.get_str() + " at t^" + std::to_string(n) + " s^" +
                                   std::to_string(e));
      }
    }
  }
}

// Substitute r = r(t) into a series that already includes the 1/t factor
// and check that enough terms survived.
TSeries finish(const QSeries& in_r, int order, int guard, const char* what) {
  const TSeries r = r_of_t(order + guard);
  TSeries gf = qs_substitute_t(in_r, r);
  if (gf.truncation_order() < order) {
    throw SeriesError(std::string(what) + ": truncation budget exhausted (exact to t^" +
                      std::to_string(gf.truncation_order()) + ", requested t^" +
                      std::to_string(order) + "); increase the guard");
  }
  gf = gf.truncated(order);
  require_integral(gf, what);
  return gf;
}

}  // namespace

TSeries excursion_gf(int order, int guard) {
  if (order < 0) throw std::invalid_argument("excursion_gf: order must be >= 0");
  const int p = order + guard;
  const WindingPoly s = WindingPoly::s();

  const QSeries inv_T1_1_q3 = qs_invert(build_T({1, 0, 0, 3, p}));
  const QSeries T1_q2_q3 = build_T({1, 0, 6, 3, p});
  const QSeries T0_q_q3 = build_T({0, 0, 3, 3, p});
  // u = s q^(-2/3), nome q
  const QSeries T0_u = build_T({0, 1, -2, 1, p});
  const QSeries T1_u = build_T({1, 1, -2, 1, p});

  const QSeries bracket = QSeries::monomial(s, 0, p) -
                          (T1_q2_q3 * inv_T1_1_q3).shifted(-1) -
                          (T0_q_q3 * T1_u * inv_T1_1_q3 * qs_invert(T0_u)).shifted(-1);
  const QSeries over_t = bracket * qs_invert(t_of_r(p));
  const WindingPoly one_minus_s3 = WindingPoly(1) - WindingPoly::monomial(1, 3);
  const QSeries in_r = qs_exact_div(over_t, one_minus_s3) * s;
  return finish(in_r, order, guard, "excursion_gf");
}

TSeries vertex_excursion_gf(int order, int guard) {
  if (order < 0) throw std::invalid_argument("vertex_excursion_gf: order must be >= 0");
  const int p = order + guard;
  const WindingPoly s = WindingPoly::s();
  const WindingPoly s_minus_1 = s - WindingPoly(1);

  const QSeries T0_q_q3 = build_T({0, 0, 3, 3, p});
  const QSeries T1_q_q3 = build_T({1, 0, 3, 3, p});
  const QSeries T2_q_q3 = build_T({2, 0, 3, 3, p});
  const QSeries T1_1_q3 = build_T({1, 0, 0, 3, p});
  const QSeries T3_1_q3 = build_T({3, 0, 0, 3, p});
  const QSeries T1_1_q = build_T({1, 0, 0, 1, p});
  const QSeries T3_1_q = build_T({3, 0, 0, 1, p});
  // T0(s,q) and T2(s,q) both carry the factor (s - 1); cancel it before
  // inverting so the leading coefficient becomes 1.
  const QSeries T0_s_q = qs_exact_div(build_T({0, 1, 0, 1, p}), s_minus_1);
  const QSeries T2_s_q = qs_exact_div(build_T({2, 1, 0, 1, p}), s_minus_1);

  const QSeries inv_T0_q_q3 = qs_invert(T0_q_q3);
  const QSeries inv_T1_1_q3 = qs_invert(T1_1_q3);
  const QSeries ratio_1 = T1_q_q3 * inv_T0_q_q3;

  const QSeries bracket = ratio_1 * ratio_1 - T2_q_q3 * inv_T0_q_q3 -
                          T2_s_q * qs_invert(T0_s_q) * Rational(1, 2) +
                          T3_1_q * qs_invert(T1_1_q) * Rational(1, 6) +
                          T3_1_q3 * inv_T1_1_q3 * Rational(1, 3);
  const QSeries ratio_2 = T0_q_q3 * inv_T1_1_q3;
  const QSeries prefactor = (ratio_2 * ratio_2 * qs_invert(t_of_r(p))).shifted(-2);

  const WindingPoly cyclotomic = WindingPoly(1) + s + WindingPoly::monomial(1, 2);
  const QSeries in_r = qs_exact_div(prefactor * bracket, cyclotomic) * s;
  return finish(in_r, order, guard, "vertex_excursion_gf");
}

TSeries generating_function(const GFRequest& request) {
  if (request.order < 0) throw std::invalid_argument("GFRequest: order must be >= 0");
  return request.variant == Variant::cell ? excursion_gf(request.order, request.guard)
                                          : vertex_excursion_gf(request.order, request.guard);
}

std::vector<Rational> winding_slice(const TSeries& gf, int k) {
  std::vector<Rational> out;
  out.reserve(gf.truncation_order() + 1);
  for (int n = 0; n <= gf.truncation_order(); ++n) out.push_back(gf[n].coeff(k));
  return out;
}

}  // namespace kreweras
