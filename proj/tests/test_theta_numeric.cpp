#include <doctest.h>

#include <random>

#include "kreweras/errors.hpp"
#include "kreweras/theta_numeric.hpp"
#include "kreweras/theta_q.hpp"

using namespace kreweras;

namespace {

constexpr Complex I{0, 1};

struct RandomPoints {
  std::mt19937_64 rng{99};
  Complex tau() {
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.3, 1.5);
    return {re(rng), im(rng)};
  }
  Complex z() {
    std::uniform_real_distribution<double> re(-3, 3), im(-0.4, 0.4);
    return {re(rng), im(rng)};
  }
};

Real rel(Complex a, Complex b) { return std::abs(a - b) / std::max<Real>(1, std::abs(b)); }

}  // namespace

TEST_CASE("theta is odd and vanishes at zero") {
  CHECK(std::abs(theta(0, I)) < 1e-18L);
  RandomPoints pts;
  for (int i = 0; i < 20; ++i) {
    const Complex z = pts.z(), tau = pts.tau();
    CHECK(rel(theta(-z, tau), -theta(z, tau)) < 1e-15L);
  }
}

TEST_CASE("theta agrees with the one-sided T series") {
  RandomPoints pts;
  for (int i = 0; i < 40; ++i) {
    const Complex z = pts.z(), tau = pts.tau();
    for (int k = 0; k <= 3; ++k) CHECK(rel(theta_via_T(z, tau, k), theta(z, tau, k)) < 1e-10L);
  }
}

TEST_CASE("the printed theta/T prefactor misses a constant e^{i pi tau / 4}") {
  const Complex z(0.3, 0.1), tau(0.1, 0.7);
  const Complex printed_prefactor = std::exp((kPi * tau - Real(2) * z) * I / Real(2));
  const Complex used_prefactor = std::exp((kPi * tau / Real(2) - Real(2) * z) * I / Real(2));
  CHECK(std::abs(printed_prefactor / used_prefactor - std::exp(I * kPi * tau / Real(4))) < 1e-15L);
}

TEST_CASE("quasi-periodicity in both directions") {
  RandomPoints pts;
  for (int i = 0; i < 50; ++i) {
    const Complex z = pts.z(), tau = pts.tau();
    const Complex th = theta(z, tau);
    CHECK(rel(theta(z + kPi, tau), -th) < 1e-10L);
    const Complex shifted = theta(z + kPi * tau, tau);
    const Complex predicted = -std::exp(-I * kPi * tau - Real(2) * I * z) * th;
    CHECK(std::abs(shifted - predicted) / std::max<Real>(1, std::abs(shifted)) < 1e-10L);
  }
}

TEST_CASE("tightening the tail bound does not move reported digits") {
  RandomPoints pts;
  for (int i = 0; i < 20; ++i) {
    const Complex z = pts.z(), tau = pts.tau();
    ThetaContext loose{tau, 20000, 1e-12L};
    ThetaContext tight{tau, 40000, 1e-19L};
    for (int d = 0; d <= 3; ++d) {
      CHECK(rel(theta_eval(z, loose, d), theta_eval(z, tight, d)) < 1e-11L);
    }
  }
  CHECK_THROWS_AS(theta_eval(0.3L, ThetaContext{Complex(0, 0.01L), 4, 1e-19L}, 0),
                  PrecisionUnreachable);
  CHECK_THROWS_AS(theta_eval(0.3L, ThetaContext{Complex(0, 1), 100, 1e-19L}, 4),
                  std::invalid_argument);
}

TEST_CASE("solving for tau") {
  const Complex tau = solve_tau(0.3L);
  CHECK(tau.real() == 0);
  CHECK(std::abs(t_of_tau(tau).real() - 0.3L) < 1e-12L);

  // Small t: q ~ t^3.
  const Real small = 1e-5L;
  const Real q_small = nome(solve_tau(small)).real();
  CHECK(q_small / (small * small * small) == doctest::Approx(1).epsilon(1e-8));

  // The exact q(t) series evaluated at t = 0.1 reproduces the solved nome.
  const TSeries q_series = q_of_t(45);
  const Real q_solved = nome(solve_tau(0.1L)).real();
  CHECK(std::abs(q_series.evaluate({0.1L, 0}, {1, 0}).real() - q_solved) < 1e-10L);

  CHECK_THROWS_AS(solve_tau(0.4L), std::invalid_argument);
  CHECK_THROWS_AS(solve_tau(1e-25L), NoBracket);
}

TEST_CASE("solve_tau inverts t on (0.01, 0.32)") {
  for (Real t = 0.01L; t < 0.32L; t += 0.0155L) {
    const Complex tau = solve_tau(t);
    CHECK(std::abs(t_of_tau(tau).real() - t) < 1e-10L);
    CHECK(std::abs(solve_tau(t_of_tau(tau).real()) - tau) < 1e-10L);
  }
}

TEST_CASE("kernel parameterisation") {
  for (Real t : {0.05L, 0.1L, 0.2L, 0.3L}) {
    const Complex tau = solve_tau(t);
    Real worst = 0;
    for (const Complex z : sample_cell_points(tau, 100, 17)) {
      worst = std::max(worst, kernel_residual(KernelPoint::make(t, z)));
      CHECK(std::abs(kernel_X(z, tau) - kernel_X(kPi * tau - z, tau)) < 1e-10L);
    }
    CAPTURE(static_cast<double>(t));
    CHECK(worst < 1e-10L);
    CHECK(std::abs(kernel_X(0, tau)) < 1e-10L);
    CHECK(std::abs(kernel_Y(0, tau)) < 1e-10L);
    CHECK_THROWS_AS(kernel_residual(KernelPoint::make(t, Complex(1e-8L, 0))), NearPole);
  }
}

TEST_CASE("closed form of L") {
  const Real t = 0.2L;
  const Complex tau = solve_tau(t);
  const auto zs = sample_cell_points(tau, 20, 3);
  const LResidualReport report = L_residuals(kPi / 2, t, zs);
  CHECK(report.samples == 20);
  CHECK(report.max_equation_residual < 1e-8L);
  CHECK_THROWS_AS(LClosedForm(2 * kPi / 3, t), DegenerateAlpha);
  CHECK_THROWS_AS(LClosedForm(0, t), DegenerateAlpha);
}

TEST_CASE("closed form of L matches its definition near z = 0") {
  const Real t = 0.1L;
  const Complex tau = solve_tau(t);
  std::vector<Complex> near_zero;
  for (int j = 0; j < 16; ++j) {
    const Complex z = std::polar(0.03L, 2 * kPi * (j + 0.5L) / 16);
    if (std::abs(kernel_X(z, tau)) < 0.1L) near_zero.push_back(z);
  }
  REQUIRE(near_zero.size() >= 8);
  for (Real alpha : {kPi / 2, kPi / 5, 0.9L * kPi}) {
    const LResidualReport report = L_residuals(alpha, t, near_zero, 30);
    CHECK(report.max_definition_gap < 1e-6L);
    CHECK(report.truncation_bound > 0);
    CHECK(report.truncation_bound < 1e-6L);
    CHECK(report.max_equation_residual < 1e-8L);
  }
  CHECK_THROWS_AS(L_residuals(kPi / 2, 0.3L, near_zero, 5), SeriesRadius);
}

TEST_CASE("parametric E against the exact series") {
  CHECK(parametric_E_check(kPi / 2, 0.1L) < 1e-8L);
  CHECK(parametric_E_check(kPi / 5, 0.05L) < 1e-10L);
  CHECK_THROWS_AS(parametric_E_check(2 * kPi / 3, 0.1L), DegenerateAlpha);
  CHECK_THROWS_AS(parametric_E_check(kPi / 2, 0.3L, 10), SeriesRadius);
}

TEST_CASE("q-hat expansion") {
  const QhatReport report = qhat_expansion_check();
  CHECK(report.jacobi_max_residual < 1e-10L);
  CHECK(std::abs(report.fitted[0] - 1.0L / 3) < 1e-6L);
  CHECK(std::abs(report.fitted[1] + 3) < 1e-6L);
  CHECK(std::abs(report.fitted[2] - 18) < 1e-6L);
  CHECK(std::abs(t_of_qhat(1e-15L) - 1.0L / 3) < 1e-12L);
}

TEST_CASE("the dominant singularity sits at qhat = 0") {
  for (Real d : {0.01L, 0.004L, 0.001L}) {
    const Real t = (1 - d) / 3;
    const Real qhat = qhat_of_t(t);
    CHECK(std::abs(qhat - d / 9) < d * d);
    CHECK(std::abs(t_of_qhat(qhat) - t) < 1e-12L);
  }
}

TEST_CASE("winding asymptotics") {
  const auto law = asym_prefactor(kPi / 2);
  CHECK(law.exponent == doctest::Approx(-1.75));
  CHECK(std::abs(law.constant.imag()) < 1e-15L);
  CHECK_THROWS_AS(asym_prefactor(0), DegenerateAlpha);
  CHECK_THROWS_AS(asym_prefactor(2 * kPi / 3), DegenerateAlpha);
  CHECK_THROWS_AS(asym_prefactor(4), std::invalid_argument);

  const TSeries v = vertex_excursion_gf(90);
  const auto scaled = scaled_winding_coefficients(v, kPi / 2);
  for (int n = 0; n <= 90; ++n) {
    if (n % 3 != 0) CHECK(v[n].is_zero());
    CHECK(std::abs(scaled[n].imag()) < 1e-15L);
  }
  const auto ns = sample_lengths(60, 90, 3);
  const auto rows = compare_winding_asymptotic(kPi / 2, v, ns);
  CHECK(judge_convergence(rows, 0.1L).pass());
}
