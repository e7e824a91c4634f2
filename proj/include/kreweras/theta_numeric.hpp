#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "kreweras/asymptotics.hpp"
#include "kreweras/tseries.hpp"

namespace kreweras {

using Real = long double;
using Complex = std::complex<Real>;

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;

/// Settings for summing theta(z, tau) = sum_n (-1)^n exp((n+1/2)^2 i pi tau + (2n+1) i z).
struct ThetaContext {
  Complex tau;
  int max_terms = 20000;
  Real precision = 1e-19L;

  /// Precision from $KREWERAS_PRECISION when set, else the default above.
  static ThetaContext with_default_precision(Complex tau);
};

/// d^deriv/dz^deriv theta(z, tau), deriv in 0..3. Terms are added outward
/// from the centre of the Gaussian until the remaining tail is below
/// precision * max(1, |sum|); throws PrecisionUnreachable otherwise.
Complex theta_eval(Complex z, const ThetaContext& ctx, int deriv = 0);
Complex theta(Complex z, Complex tau, int deriv = 0);

/// e^{(pi tau - 2z) i / 2} i^k T_k(e^{2iz}, e^{2 i pi tau}) with T_k summed
/// directly from its one-sided series; equals theta^{(k)}(z, tau).
Complex theta_via_T(Complex z, Complex tau, int k);

/// t(tau) = e^{-pi tau i/3} theta'(0,3tau) / (4i theta(pi tau,3tau) + 6 theta'(pi tau,3tau)).
Complex t_of_tau(Complex tau);
/// Nome q = e^{2 pi i tau}.
Complex nome(Complex tau);

/// Purely imaginary tau with |t(tau) - t| < 1e-12, by bisection on the real
/// nome in (1e-60, 1 - 1e-3). Monotonicity of t(q) is checked on a grid
/// first. Throws NoBracket if the target is not bracketed.
Complex solve_tau(Real t);

/// X(z) = e^{-4 pi tau i/3} theta(z,3tau) theta(z-pi tau,3tau) /
///        (theta(z+pi tau,3tau) theta(z-2 pi tau,3tau)),  Y(z) = X(z + pi tau).
Complex kernel_X(Complex z, Complex tau);
Complex kernel_Y(Complex z, Complex tau);

/// Distance from z to the lattice pi*Z + pi*tau*Z, where X or Y has a zero
/// or a pole.
Real distance_to_singular_lattice(Complex z, Complex tau);

struct KernelPoint {
  Real t = 0;
  Complex tau;
  Complex z;

  /// Solves for tau; requires 0 < t < 1/3.
  static KernelPoint make(Real t, Complex z);
};

/// |K(X(z), Y(z))| with K(x,y) = 1 - t x y - t/x - t/y. Throws NearPole
/// within 1e-6 of the singular lattice.
Real kernel_residual(const KernelPoint& p);

/// Random z in the interior of the fundamental cell, kept at least
/// `margin` (relative to the cell) away from the singular lattice.
std::vector<Complex> sample_cell_points(Complex tau, int count, std::uint64_t seed,
                                        Real margin = 0.1L);

/// The closed form of L(z) at s = e^{i alpha}. Rejects s^3 = 1.
class LClosedForm {
 public:
  LClosedForm(Real alpha, Real t);

  Complex operator()(Complex z) const;
  Complex tau() const { return tau_; }
  Complex s() const { return s_; }
  Real t() const { return t_; }

 private:
  Real alpha_;
  Real t_;
  Complex tau_;
  Complex s_;
  Complex pole_coefficient_;
};

struct LResidualReport {
  Real max_equation_residual = 0;  // |-L(z) + L(z + pi tau)/(s X(z)) - 1|
  Real max_definition_gap = 0;     // |L(z) - (s t G(0,X) - t G(X,0)/Y)|
  Real truncation_bound = 0;       // certified tail bound of the DP series
  int samples = 0;
};

/// Evaluates the closed form of L at every z: the shift equation residual
/// over all samples and, for samples with |X(z)| <= 1, the gap to the
/// definition through cell-DP series of order dp_order. Throws SeriesRadius
/// if a sample with |X(z)| <= 1 cannot certify 1e-6 from the tail bound.
LResidualReport L_residuals(Real alpha, Real t, std::span<const Complex> z_samples,
                            int dp_order = 30);

/// The printed parametric expression for E(t, e^{i alpha}).
Complex parametric_E(Real alpha, Real t);

/// |parametric_E - E_series(t, e^{i alpha})| using the exact series to
/// `series_order`; throws SeriesRadius if (3t)^{order+1}/(1-3t) exceeds 1e-12.
Real parametric_E_check(Real alpha, Real t, int series_order = 40);

/// |theta(z,tau) - i(-i tau)^{-1/2} e^{-i z^2/(pi tau)} theta(z/tau, -1/tau)|,
/// relative to max(1, |theta(z,tau)|).
Real jacobi_identity_residual(Complex z, Complex tau);

/// t as a function of qhat = e^{2 pi i tauhat}: theta'(0,tauhat)/(6 theta'(pi/3,tauhat)).
Real t_of_qhat(Real qhat);
/// qhat for the tau that solves t(tau) = t, via tauhat = -1/(3 tau).
Real qhat_of_t(Real t);

struct QhatReport {
  Real jacobi_max_residual = 0;
  std::array<Real, 3> fitted{};  // constant, linear, quadratic coefficients
};

/// Jacobi identity residual at random points plus a least-squares fit of
/// t(qhat) at small qhat.
QhatReport qhat_expansion_check(std::uint64_t seed = 7, int jacobi_samples = 50);

/// Amplitude A(alpha) in [t^n] E~(t, e^{i alpha}) ~ A n^{-3alpha/(2pi)-1} 3^n
/// without domain checks (used at alpha = pi by the cone module).
Complex winding_amplitude(Real alpha);

/// The asymptotic law of v_n = [t^n] E~(t, e^{i alpha}) for 3 | n.
/// Requires alpha in (0, pi); throws DegenerateAlpha near 0 or 2pi/3.
PowerLawAsymptotic asym_prefactor(Real alpha);

/// v_n for every n of the series, scaled by 3^-n.
std::vector<Complex> scaled_winding_coefficients(const TSeries& vertex_gf, Real alpha);

/// Rows comparing v_n with asym_prefactor(alpha) at the given lengths.
std::vector<AsymptoticRow> compare_winding_asymptotic(Real alpha, const TSeries& vertex_gf,
                                                      std::span<const int> sample_ns);

}  // namespace kreweras
