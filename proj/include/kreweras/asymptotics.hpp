#pragma once

#include <complex>
#include <span>
#include <vector>

#include "kreweras/rational.hpp"

namespace kreweras {

/// a_n ~ constant * n^exponent * growth_base^n.
struct PowerLawAsymptotic {
  std::complex<long double> constant;
  long double exponent = 0;
  long double growth_base = 3;
};

/// One sample of a coefficient against its predicted asymptotic. Both
/// values are divided by growth_base^n so they stay representable.
struct AsymptoticRow {
  int n = 0;
  std::complex<long double> scaled_coefficient;
  std::complex<long double> scaled_prediction;
  long double relative_error = 0;
};

AsymptoticRow asymptotic_row(int n, std::complex<long double> scaled_coefficient,
                             const PowerLawAsymptotic& law);

/// Rows for the given sample lengths of an exact real coefficient list;
/// growth_base must be 3.
std::vector<AsymptoticRow> compare_asymptotic(std::span<const Rational> coefficients,
                                              const PowerLawAsymptotic& law,
                                              std::span<const int> sample_ns);

struct ConvergenceVerdict {
  bool below_threshold = false;
  bool decreasing = false;
  bool pass() const { return below_threshold && decreasing; }
};

/// The acceptance protocol for limit statements: the last relative error is
/// below `threshold` and the last three errors strictly decrease.
ConvergenceVerdict judge_convergence(std::span<const AsymptoticRow> rows, long double threshold);

/// Lengths n in [from, to] with n divisible by `step`, largest last.
std::vector<int> sample_lengths(int from, int to, int step);

}  // namespace kreweras
