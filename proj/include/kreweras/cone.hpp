#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "kreweras/asymptotics.hpp"
#include "kreweras/rational.hpp"
#include "kreweras/tseries.hpp"

namespace kreweras {

/// Walks from w0 to the corner with winding 2k*pi/3 whose winding stays in
/// (k1*pi/3, k2*pi/3). Requires k1 < 0 < k2 and k1 < 2k < k2.
class ConeSpec {
 public:
  ConeSpec(int k, int k1, int k2);

  int k() const { return k_; }
  int k1() const { return k1_; }
  int k2() const { return k2_; }
  int width() const { return k2_ - k1_; }
  /// Opening angle (k2 - k1) * pi / 3.
  long double opening() const;

 private:
  int k_, k1_, k2_;
};

enum class ConeClass { algebraic, d_finite_not_algebraic };

constexpr std::string_view to_string(ConeClass c) {
  return c == ConeClass::algebraic ? "algebraic" : "d-finite-not-algebraic";
}

/// Exact corridor counts from the translate sum over winding slices of
/// vertex_gf (the vertex-centred generating function).
std::vector<Rational> reflect_series(const ConeSpec& spec, const TSeries& vertex_gf);
std::vector<Rational> reflect_series(const ConeSpec& spec, int n_max);

/// The same counts from the root-of-unity average of vertex_gf evaluated at
/// s = exp(2 pi i j / (k2 - k1)). Throws ToleranceExceeded if an imaginary
/// part or the gap to reflect_series exceeds 1e-9 relative.
std::vector<std::complex<long double>> reflect_series_rou(const ConeSpec& spec,
                                                          const TSeries& vertex_gf);

/// Largest relative deviation of the root-of-unity form from the exact one
/// (imaginary parts included); no tolerance applied.
long double reflect_rou_deviation(const ConeSpec& spec, const TSeries& vertex_gf);

ConeClass classify(const ConeSpec& spec);

/// The closed-form asymptotic constant, exponent -1 - 3/(k2-k1) and base 3
/// for the nonvanishing residue class 3 | n. Throws DegenerateCase when
/// 3 | (k2 - k1).
PowerLawAsymptotic cone_asymptotic(const ConeSpec& spec);

/// The same asymptotic assembled from the winding asymptotic at the two
/// dominant roots of unity (j = 1 and j = k2-k1-1). At k2 - k1 = 2 both are
/// s = -1, where the two singular exponents of the winding expansion merge
/// and the amplitude doubles.
PowerLawAsymptotic cone_asymptotic_via_winding(const ConeSpec& spec);

}  // namespace kreweras
