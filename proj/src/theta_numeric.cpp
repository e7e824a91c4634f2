#include "kreweras/theta_numeric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kreweras/cover_walk.hpp"
#include "kreweras/errors.hpp"
#include "kreweras/theta_q.hpp"

namespace kreweras {

namespace {

constexpr Complex kI{0, 1};

Complex ipow(int k) {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

void require_upper_half(Complex tau, const char* who) {
  if (!(tau.imag() > 0)) {
    std::ostringstream msg;
    msg << who << ": Im(tau) must be positive";
    throw std::invalid_argument(msg.str());
  }
}

// log|term| for index m = 2n+1, without the derivative factor.
Real log_magnitude(Real m, Complex z, Complex tau) {
  return -(m * m / 4) * kPi * tau.imag() - m * z.imag();
}

}  // namespace

ThetaContext ThetaContext::with_default_precision(Complex tau) {
  ThetaContext ctx;
  ctx.tau = tau;
  if (const char* env = std::getenv("KREWERAS_PRECISION")) {
    char* end = nullptr;
    const Real value = std::strtold(env, &end);
    if (end != env && value > 0) ctx.precision = value;
  }
  return ctx;
}

Complex theta_eval(Complex z, const ThetaContext& ctx, int deriv) {
  if (deriv < 0 || deriv > 3) throw std::invalid_argument("theta_eval: deriv must be in 0..3");
  require_upper_half(ctx.tau, "theta_eval");
  const Complex tau = ctx.tau;
  auto term = [&](long n) {
    const Real m = 2 * static_cast<Real>(n) + 1;
    const Complex exponent = (m * m / 4) * kI * kPi * tau + m * kI * z;
    Complex value = std::exp(exponent) * ipow(deriv) * std::pow(m, static_cast<Real>(deriv));
    return (n % 2 == 0) ? value : -value;
  };

  // The summand magnitude is a Gaussian in m peaking at m* = -2 Im z / (pi Im tau).
  const Real m_peak = -2 * z.imag() / (kPi * tau.imag());
  const long centre = std::lround((m_peak - 1) / 2);
  Complex sum = term(centre);
  int used = 1;
  bool up_done = false;
  bool down_done = false;
  long up = centre + 1;
  long down = centre - 1;
  while (!(up_done && down_done)) {
    if (used >= ctx.max_terms) {
      std::ostringstream msg;
      msg << "theta_eval: tail above " << static_cast<double>(ctx.precision) << " after "
          << used << " terms";
      throw PrecisionUnreachable(msg.str());
    }
    // Once past the peak consecutive magnitudes shrink by a decreasing ratio
    // rho, so the rest of the side is bounded by |next| / (1 - rho).
    auto side = [&](long& n, int dir, bool& done) {
      if (done) return;
      const Complex value = term(n);
      sum += value;
      ++used;
      const Real m = 2 * static_cast<Real>(n) + 1;
      const Real m_next = m + 2 * dir;
      const Real log_rho = log_magnitude(m_next, z, tau) - log_magnitude(m, z, tau) +
                           deriv * std::log(std::abs(m_next) / std::max<Real>(std::abs(m), 1));
      const bool past_peak = dir > 0 ? m > m_peak : m < m_peak;
      if (past_peak && log_rho < 0) {
        const Real rho = std::exp(log_rho);
        const Real tail = std::abs(value) * rho / (1 - rho);
        if (tail <= ctx.precision * std::max<Real>(1, std::abs(sum)) * Real(0.5)) done = true;
      }
      n += dir;
    };
    side(up, +1, up_done);
    side(down, -1, down_done);
  }
  return sum;
}

Complex theta(Complex z, Complex tau, int deriv) {
  return theta_eval(z, ThetaContext::with_default_precision(tau), deriv);
}

Complex theta_via_T(Complex z, Complex tau, int k) {
  if (k < 0 || k > 3) throw std::invalid_argument("theta_via_T: k must be in 0..3");
  require_upper_half(tau, "theta_via_T");
  const Real sign_k = (k % 2 == 0) ? 1 : -1;
  Complex sum = 0;
  for (long n = 0; n < 100000; ++n) {
    const Real w = std::pow(static_cast<Real>(2 * n + 1), static_cast<Real>(k));
    const Complex q_part = std::exp(kI * kPi * tau * static_cast<Real>(n * (n + 1)));
    const Complex u_part = std::exp(Real(2) * kI * z * static_cast<Real>(n + 1)) -
                           sign_k * std::exp(Real(-2) * kI * z * static_cast<Real>(n));
    const Complex value = ((n % 2 == 0) ? w : -w) * q_part * u_part;
    sum += value;
    if (n > 2 && std::abs(value) < 1e-21L * std::max<Real>(1, std::abs(sum))) break;
  }
  // The prefactor carries pi*tau/4 rather than pi*tau/2: with
  // (n + 1/2)^2 = n(n+1) + 1/4 this is what matches the defining sum.
  return std::exp((kPi * tau / Real(2) - Real(2) * z) * kI / Real(2)) * ipow(k) * sum;
}

Complex t_of_tau(Complex tau) {
  require_upper_half(tau, "t_of_tau");
  const Complex tau3 = Real(3) * tau;
  const Complex num = theta(0, tau3, 1);
  const Complex den =
      Real(4) * kI * theta(kPi * tau, tau3, 0) + Real(6) * theta(kPi * tau, tau3, 1);
  return std::exp(-kPi * tau * kI / Real(3)) * num / den;
}

Complex nome(Complex tau) { return std::exp(Real(2) * kPi * kI * tau); }

namespace {

// t at tau = i y. Small y is evaluated in the transformed variable
// tauhat = -1/(3 tau), where the direct sums lose every digit to cancellation.
Real t_at_imaginary(Real y) {
  if (y >= Real(0.25)) return t_of_tau(Complex(0, y)).real();
  const Real yhat = 1 / (3 * y);
  const Complex tauhat(0, yhat);
  return (theta(0, tauhat, 1) / (Real(6) * theta(kPi / 3, tauhat, 1))).real();
}

Real y_of_nome(Real q) { return -std::log(q) / (2 * kPi); }

constexpr Real kNomeLow = 1e-60L;
constexpr Real kNomeHigh = 1 - 1e-3L;

void check_monotone_once() {
  static std::once_flag flag;
  static bool monotone = true;
  static std::string failure;
  std::call_once(flag, [] {
    const int points = 240;
    const Real ylo = std::log(y_of_nome(kNomeHigh));
    const Real yhi = std::log(y_of_nome(kNomeLow));
    Real prev = -1;
    // Walk from large q (small y) to small q: t must not increase.
    for (int i = 0; i <= points; ++i) {
      const Real y = std::exp(ylo + (yhi - ylo) * i / points);
      const Real t = t_at_imaginary(y);
      if (prev >= 0 && t > prev + 1e-16L) {
        monotone = false;
        std::ostringstream msg;
        msg << "solve_tau: t(q) not monotone near y = " << static_cast<double>(y);
        failure = msg.str();
        return;
      }
      prev = t;
    }
  });
  if (!monotone) throw NoBracket(failure);
}

}  // namespace

Complex solve_tau(Real t) {
  if (!(t > 0 && t < Real(1) / 3)) throw std::invalid_argument("solve_tau: need 0 < t < 1/3");
  check_monotone_once();
  Real lo = kNomeLow;
  Real hi = kNomeHigh;
  const Real t_lo = t_at_imaginary(y_of_nome(lo));
  const Real t_hi = t_at_imaginary(y_of_nome(hi));
  if (!(t_lo < t && t < t_hi)) {
    std::ostringstream msg;
    msg << "solve_tau: t = " << static_cast<double>(t) << " not bracketed by ["
        << static_cast<double>(t_lo) << ", " << static_cast<double>(t_hi) << "]";
    throw NoBracket(msg.str());
  }
  for (int iter = 0; iter < 400; ++iter) {
    // Geometric midpoints while the bracket spans decades, arithmetic after.
    const Real mid = (hi > 4 * lo) ? std::sqrt(lo * hi) : (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;
    if (t_at_imaginary(y_of_nome(mid)) < t) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= std::numeric_limits<Real>::epsilon() * hi) break;
  }
  const Real y = y_of_nome((lo + hi) / 2);
  const Real residual = std::abs(t_at_imaginary(y) - t);
  if (residual >= 1e-12L) {
    std::ostringstream msg;
    msg << "solve_tau: residual " << static_cast<double>(residual) << " at t = "
        << static_cast<double>(t);
    throw PrecisionUnreachable(msg.str());
  }
  return {0, y};
}

Complex kernel_X(Complex z, Complex tau) {
  const Complex tau3 = Real(3) * tau;
  const Complex pt = kPi * tau;
  return std::exp(Real(-4) * pt * kI / Real(3)) * theta(z, tau3) * theta(z - pt, tau3) /
         (theta(z + pt, tau3) * theta(z - Real(2) * pt, tau3));
}

Complex kernel_Y(Complex z, Complex tau) { return kernel_X(z + kPi * tau, tau); }

Real distance_to_singular_lattice(Complex z, Complex tau) {
  // Coordinates of z in the basis (pi, pi*tau).
  const Complex w = z / kPi;
  const Real v = w.imag() / tau.imag();
  const Real u = w.real() - v * tau.real();
  Real best = std::numeric_limits<Real>::infinity();
  const long u0 = static_cast<long>(std::floor(u));
  const long v0 = static_cast<long>(std::floor(v));
  for (long du = -1; du <= 2; ++du) {
    for (long dv = -1; dv <= 2; ++dv) {
      const Complex p = kPi * (static_cast<Real>(u0 + du) + static_cast<Real>(v0 + dv) * tau);
      best = std::min(best, std::abs(z - p));
    }
  }
  return best;
}

KernelPoint KernelPoint::make(Real t, Complex z) {
  if (!(t > 0 && t < Real(1) / 3)) throw std::invalid_argument("KernelPoint: need 0 < t < 1/3");
  KernelPoint p;
  p.tau = solve_tau(t);
  // The lemma holds for the t that tau actually encodes.
  p.t = t_of_tau(p.tau).real();
  p.z = z;
  return p;
}

Real kernel_residual(const KernelPoint& p) {
  if (distance_to_singular_lattice(p.z, p.tau) < 1e-6L) {
    throw NearPole("kernel_residual: z within 1e-6 of a theta zero");
  }
  const Complex x = kernel_X(p.z, p.tau);
  const Complex y = kernel_Y(p.z, p.tau);
  return std::abs(Real(1) - p.t * x * y - p.t / x - p.t / y);
}

std::vector<Complex> sample_cell_points(Complex tau, int count, std::uint64_t seed, Real margin) {
  if (!(margin >= 0 && margin < Real(0.5))) {
    throw std::invalid_argument("sample_cell_points: margin must be in [0, 0.5)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(static_cast<double>(margin),
                                              static_cast<double>(1 - margin));
  std::vector<Complex> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Real u = unit(rng);
    const Real v = unit(rng);
    out.push_back(kPi * (u + v * tau));
  }
  return out;
}

namespace {

Complex unit_circle(Real alpha) { return std::polar(Real(1), alpha); }

void reject_cube_root_of_unity(Complex s, const char* who) {
  if (std::abs(Real(1) - s * s * s) < 1e-9L) {
    std::ostringstream msg;
    msg << who << ": s^3 = 1 is degenerate";
    throw DegenerateAlpha(msg.str());
  }
}

}  // namespace

LClosedForm::LClosedForm(Real alpha, Real t) : alpha_(alpha), s_(unit_circle(alpha)) {
  reject_cube_root_of_unity(s_, "LClosedForm");
  tau_ = solve_tau(t);
  t_ = t_of_tau(tau_).real();
  const Complex pt = kPi * tau_;
  const Complex tau3 = Real(3) * tau_;
  const Complex one_minus_s3 = Real(1) - s_ * s_ * s_;
  pole_coefficient_ = std::exp(kI * alpha_ + Real(5) * kI * pt / Real(3)) * theta(pt, tau3) *
                      theta(0, tau_, 1) /
                      (one_minus_s3 * theta(alpha_ / 2 - Real(2) * pt / Real(3), tau_) *
                       theta(0, tau3, 1));
}

Complex LClosedForm::operator()(Complex z) const {
  const Complex pt = kPi * tau_;
  const Complex tau3 = Real(3) * tau_;
  const Complex s2 = s_ * s_;
  const Complex s3 = s2 * s_;
  const Complex rational_part =
      (s3 + s2 / kernel_X(z, tau_) + s_ * kernel_X(z - pt, tau_)) / (Real(1) - s3);
  const Complex theta_part = theta(z - Real(2) * pt, tau3) *
                             theta(z - alpha_ / 2 + Real(2) * pt / Real(3), tau_) /
                             (theta(z, tau_) * theta(z, tau3));
  return rational_part + pole_coefficient_ * theta_part;
}

namespace {

// Cell-lattice boundary series at fixed s: row n holds the coefficients in x
// of [t^n] G(0, x) (side a = 0) and of [t^n] G(x, 0) (side b = 0).
struct BoundarySeries {
  std::vector<std::vector<Complex>> on_a_zero;
  std::vector<std::vector<Complex>> on_b_zero;
};

BoundarySeries boundary_series(Complex s, int order) {
  const CountTable table = enumerate(Variant::cell, order);
  BoundarySeries out;
  out.on_a_zero.assign(order + 1, std::vector<Complex>(2 * order + 1));
  out.on_b_zero.assign(order + 1, std::vector<Complex>(2 * order + 1));
  for (int n = 0; n <= order; ++n) {
    table.for_each_nonzero(n, [&](const WedgeState& v, const Integer& c) {
      const Complex weight = to_long_double(Rational(c)) * std::pow(s, v.k);
      if (v.a == 0) out.on_a_zero[n][v.b] += weight;
      if (v.b == 0) out.on_b_zero[n][v.a] += weight;
    });
  }
  return out;
}

Complex evaluate_boundary(const std::vector<std::vector<Complex>>& rows, Real t, Complex x) {
  Complex total = 0;
  Real tn = 1;
  for (const auto& row : rows) {
    Complex inner = 0;
    for (auto it = row.rbegin(); it != row.rend(); ++it) inner = inner * x + *it;
    total += tn * inner;
    tn *= t;
  }
  return total;
}

}  // namespace

LResidualReport L_residuals(Real alpha, Real t, std::span<const Complex> z_samples,
                            int dp_order) {
  const LClosedForm L(alpha, t);
  const Complex s = L.s();
  const Complex pt = kPi * L.tau();
  const Real tt = L.t();
  LResidualReport report;
  std::optional<BoundarySeries> series;
  const Real three_t = 3 * tt;
  const Real tail = std::pow(three_t, static_cast<Real>(dp_order + 1)) / (1 - three_t);
  for (const Complex z : z_samples) {
    const Complex x = kernel_X(z, L.tau());
    const Complex lz = L(z);
    const Complex shifted = L(z + pt);
    report.max_equation_residual =
        std::max(report.max_equation_residual, std::abs(-lz + shifted / (s * x) - Real(1)));
    ++report.samples;
    if (std::abs(x) > 1) continue;
    const Complex y = kernel_Y(z, L.tau());
    // Each coefficient of G(0,x), G(x,0) at |x| <= 1 is at most 3^n in size.
    const Real bound = tt * tail * (1 + 1 / std::abs(y));
    if (bound > 1e-6L) {
      std::ostringstream msg;
      msg << "L_residuals: truncation bound " << static_cast<double>(bound) << " at |X(z)| = "
          << static_cast<double>(std::abs(x)) << " exceeds 1e-6";
      throw SeriesRadius(msg.str());
    }
    if (!series) series = boundary_series(s, dp_order);
    const Complex from_series = s * tt * evaluate_boundary(series->on_a_zero, tt, x) -
                                tt / y * evaluate_boundary(series->on_b_zero, tt, x);
    report.max_definition_gap = std::max(report.max_definition_gap, std::abs(lz - from_series));
    report.truncation_bound = std::max(report.truncation_bound, bound);
  }
  return report;
}

Complex parametric_E(Real alpha, Real t) {
  const Complex s = unit_circle(alpha);
  reject_cube_root_of_unity(s, "parametric_E");
  const Complex tau = solve_tau(t);
  const Complex pt = kPi * tau;
  const Complex tau3 = Real(3) * tau;
  const Complex d0 = theta(0, tau3, 1);
  const Complex w = alpha / Real(2) - Real(2) * pt / Real(3);
  const Complex bracket =
      s - std::exp(Real(4) * pt * kI / Real(3)) * theta(Real(2) * pt, tau3, 1) / d0 -
      std::exp(pt * kI / Real(3)) * theta(pt, tau3) * theta(w, tau, 1) / (d0 * theta(w, tau));
  return s / (t * (Real(1) - s * s * s)) * bracket;
}

Real parametric_E_check(Real alpha, Real t, int series_order) {
  reject_cube_root_of_unity(unit_circle(alpha), "parametric_E_check");
  const Real tail =
      std::pow(3 * t, static_cast<Real>(series_order + 1)) / (1 - 3 * t);
  if (!(3 * t < 1) || tail > 1e-12L) {
    std::ostringstream msg;
    msg << "parametric_E_check: tail bound " << static_cast<double>(tail) << " at order "
        << series_order;
    throw SeriesRadius(msg.str());
  }
  const TSeries e = excursion_gf(series_order);
  const Complex from_series = e.evaluate(Complex(t, 0), unit_circle(alpha));
  return std::abs(parametric_E(alpha, t) - from_series);
}

Real jacobi_identity_residual(Complex z, Complex tau) {
  const Complex lhs = theta(z, tau);
  const Complex rhs = kI * std::pow(-kI * tau, Real(-0.5)) *
                      std::exp(-kI * z * z / (kPi * tau)) * theta(z / tau, Real(-1) / tau);
  return std::abs(lhs - rhs) / std::max<Real>(1, std::abs(lhs));
}

Real t_of_qhat(Real qhat) {
  if (!(qhat > 0 && qhat < 1)) throw std::invalid_argument("t_of_qhat: need 0 < qhat < 1");
  const Complex tauhat(0, -std::log(qhat) / (2 * kPi));
  return (theta(0, tauhat, 1) / (Real(6) * theta(kPi / 3, tauhat, 1))).real();
}

Real qhat_of_t(Real t) {
  const Complex tau = solve_tau(t);
  const Complex tauhat = Real(-1) / (Real(3) * tau);
  return nome(tauhat).real();
}

QhatReport qhat_expansion_check(std::uint64_t seed, int jacobi_samples) {
  QhatReport report;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re_tau(-0.5, 0.5);
  std::uniform_real_distribution<double> im_tau(0.5, 2.0);
  std::uniform_real_distribution<double> re_z(-3.0, 3.0);
  std::uniform_real_distribution<double> im_z(-0.5, 0.5);
  for (int i = 0; i < jacobi_samples; ++i) {
    const Complex tau(re_tau(rng), im_tau(rng));
    const Complex z(re_z(rng), im_z(rng));
    report.jacobi_max_residual = std::max(report.jacobi_max_residual, jacobi_identity_residual(z, tau));
  }

  // Least squares in the scaled variable x = qhat / scale keeps the
  // Vandermonde matrix well conditioned.
  constexpr int kDegree = 7;
  constexpr int kPoints = 48;
  constexpr Real kScale = 0.01L;
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> A(kPoints, kDegree + 1);
  Eigen::Matrix<Real, Eigen::Dynamic, 1> b(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    const Real x = static_cast<Real>(i + 1) / kPoints;
    Real p = 1;
    for (int j = 0; j <= kDegree; ++j, p *= x) A(i, j) = p;
    b(i) = t_of_qhat(x * kScale);
  }
  const Eigen::Matrix<Real, Eigen::Dynamic, 1> c = A.colPivHouseholderQr().solve(b);
  report.fitted = {c(0), c(1) / kScale, c(2) / (kScale * kScale)};
  return report;
}

Complex winding_amplitude(Real alpha) {
  const Complex e = unit_circle(alpha);
  const Real g = std::tgamma(-3 * alpha / (2 * kPi));
  return -std::pow(Real(3), 5 - 3 * alpha / kPi) * e * alpha /
         (2 * kPi * (Real(1) + e + e * e) * g);
}

PowerLawAsymptotic asym_prefactor(Real alpha) {
  if (std::abs(alpha) < 1e-9L || std::abs(alpha - 2 * kPi / 3) < 1e-9L) {
    throw DegenerateAlpha("asym_prefactor: alpha in {0, 2pi/3} has a logarithmic singularity");
  }
  if (!(alpha > 0 && alpha < kPi)) {
    throw std::invalid_argument("asym_prefactor: alpha must lie in (0, pi)");
  }
  return {winding_amplitude(alpha), -3 * alpha / (2 * kPi) - 1, 3};
}

std::vector<Complex> scaled_winding_coefficients(const TSeries& vertex_gf, Real alpha) {
  std::vector<Complex> out;
  out.reserve(vertex_gf.truncation_order() + 1);
  for (int n = 0; n <= vertex_gf.truncation_order(); ++n) {
    const Rational scale(pow3(n));
    Complex total = 0;
    for (const auto& [k, c] : vertex_gf[n].terms()) {
      total += to_long_double(c / scale) * unit_circle(alpha * k);
    }
    out.push_back(total);
  }
  return out;
}

std::vector<AsymptoticRow> compare_winding_asymptotic(Real alpha, const TSeries& vertex_gf,
                                                      std::span<const int> sample_ns) {
  const PowerLawAsymptotic law = asym_prefactor(alpha);
  const auto scaled = scaled_winding_coefficients(vertex_gf, alpha);
  std::vector<AsymptoticRow> rows;
  for (int n : sample_ns) {
    if (n < 1 || n >= static_cast<int>(scaled.size())) {
      throw std::out_of_range("compare_winding_asymptotic: sample length beyond the series");
    }
    rows.push_back(asymptotic_row(n, scaled[n], law));
  }
  return rows;
}

}  // namespace kreweras
