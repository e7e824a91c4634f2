#include "kreweras/cone.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kreweras/errors.hpp"
#include "kreweras/theta_numeric.hpp"
#include "kreweras/theta_q.hpp"

namespace kreweras {

namespace {

int floor_mod(int a, int m) {
  const int r = a % m;
  return r < 0 ? r + m : r;
}

// e^{2 pi i num / den} with the angle reduced exactly first.
Complex root_of_unity(long num, long den) {
  const long r = ((num % den) + den) % den;
  return std::polar(1.0L, 2 * kPi * static_cast<Real>(r) / static_cast<Real>(den));
}

Complex evaluate_at_root(const WindingPoly& p, int j, int width) {
  Complex total = 0;
  for (const auto& [e, c] : p.terms()) {
    total += to_long_double(c) * root_of_unity(static_cast<long>(j) * e, width);
  }
  return total;
}

}  // namespace

ConeSpec::ConeSpec(int k, int k1, int k2) : k_(k), k1_(k1), k2_(k2) {
  if (!(k1 < 0 && 0 < k2) || !(k1 < 2 * k && 2 * k < k2)) {
    std::ostringstream msg;
    msg << "ConeSpec: need k1 < 0 < k2 and k1 < 2k < k2, got (k=" << k << ", k1=" << k1
        << ", k2=" << k2 << ")";
    throw std::invalid_argument(msg.str());
  }
}

long double ConeSpec::opening() const { return width() * kPi / 3; }

std::vector<Rational> reflect_series(const ConeSpec& spec, const TSeries& vertex_gf) {
  const int width = spec.width();
  const int direct = floor_mod(spec.k(), width);
  const int mirrored = floor_mod(spec.k2() - spec.k(), width);
  std::vector<Rational> out(vertex_gf.truncation_order() + 1);
  for (int n = 0; n <= vertex_gf.truncation_order(); ++n) {
    // Every winding index m = k + j*width counts positively and every
    // m = (k2 - k) + j*width negatively; only finitely many are nonzero.
    for (const auto& [m, c] : vertex_gf[n].terms()) {
      if (floor_mod(m, width) == direct) out[n] += c;
      if (floor_mod(m, width) == mirrored) out[n] -= c;
    }
  }
  return out;
}

std::vector<Rational> reflect_series(const ConeSpec& spec, int n_max) {
  return reflect_series(spec, vertex_excursion_gf(n_max));
}

namespace {

std::vector<Complex> rou_values(const ConeSpec& spec, const TSeries& vertex_gf) {
  const int width = spec.width();
  std::vector<Complex> out(vertex_gf.truncation_order() + 1);
  for (int n = 0; n <= vertex_gf.truncation_order(); ++n) {
    Complex total = 0;
    for (int j = 1; j < width; ++j) {
      const Complex weight = root_of_unity(-static_cast<long>(j) * spec.k(), width) -
                             root_of_unity(static_cast<long>(j) * (spec.k() - spec.k1()), width);
      total += weight * evaluate_at_root(vertex_gf[n], j, width);
    }
    out[n] = total / static_cast<Real>(width);
  }
  return out;
}

Real deviation(const std::vector<Complex>& rou, const std::vector<Rational>& exact,
               int* worst_n) {
  Real worst = 0;
  for (std::size_t n = 0; n < rou.size(); ++n) {
    const Real ref = to_long_double(exact[n]);
    const Real scale = std::max<Real>(1, std::abs(ref));
    const Real dev = std::abs(rou[n] - Complex(ref, 0)) / scale;
    if (dev > worst) {
      worst = dev;
      if (worst_n) *worst_n = static_cast<int>(n);
    }
  }
  return worst;
}

}  // namespace

long double reflect_rou_deviation(const ConeSpec& spec, const TSeries& vertex_gf) {
  return deviation(rou_values(spec, vertex_gf), reflect_series(spec, vertex_gf), nullptr);
}

std::vector<std::complex<long double>> reflect_series_rou(const ConeSpec& spec,
                                                          const TSeries& vertex_gf) {
  auto values = rou_values(spec, vertex_gf);
  int worst_n = 0;
  const Real worst = deviation(values, reflect_series(spec, vertex_gf), &worst_n);
  if (worst > 1e-9L) {
    std::ostringstream msg;
    msg << "reflect_series_rou: relative deviation " << static_cast<double>(worst)
        << " at t^" << worst_n;
    throw ToleranceExceeded(msg.str());
  }
  return values;
}

ConeClass classify(const ConeSpec& spec) {
  return spec.width() % 3 != 0 ? ConeClass::algebraic : ConeClass::d_finite_not_algebraic;
}

PowerLawAsymptotic cone_asymptotic(const ConeSpec& spec) {
  const int width = spec.width();
  if (width % 3 == 0) {
    throw DegenerateCase("cone_asymptotic: 3 divides k2 - k1 (logarithmic regime)");
  }
  const Real L = width;
  const Real numerator = -2 * std::pow(3.0L, 5 - 6 / L) * std::sin(spec.k1() * kPi / L) *
                         std::sin((spec.k1() - 2 * spec.k()) * kPi / L);
  const Real denominator =
      kPi * L * L * (1 + 2 * std::cos(2 * kPi / L)) * std::tgamma(-3 / L);
  return {Complex(numerator / denominator, 0), -1 - 3 / L, 3};
}

PowerLawAsymptotic cone_asymptotic_via_winding(const ConeSpec& spec) {
  const int width = spec.width();
  if (width % 3 == 0) {
    throw DegenerateCase("cone_asymptotic_via_winding: 3 divides k2 - k1");
  }
  const Real alpha = 2 * kPi / width;
  // Weights of j = 1 and j = width - 1 in the root-of-unity average. For
  // width 2 these coincide, and adding both accounts for the doubled
  // amplitude at s = -1.
  Complex weight = 0;
  for (int j : {1, width - 1}) {
    weight += root_of_unity(-static_cast<long>(j) * spec.k(), width) -
              root_of_unity(static_cast<long>(j) * (spec.k() - spec.k1()), width);
  }
  const Complex constant = weight * winding_amplitude(alpha) / static_cast<Real>(width);
  return {constant, -1 - 3 / static_cast<Real>(width), 3};
}

}  // namespace kreweras
