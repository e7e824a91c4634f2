#include "kreweras/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace kreweras {

AsymptoticRow asymptotic_row(int n, std::complex<long double> scaled_coefficient,
                             const PowerLawAsymptotic& law) {
  AsymptoticRow row;
  row.n = n;
  row.scaled_coefficient = scaled_coefficient;
  row.scaled_prediction = law.constant * std::pow(static_cast<long double>(n), law.exponent);
  row.relative_error = std::abs(scaled_coefficient - row.scaled_prediction) /
                       std::abs(row.scaled_prediction);
  return row;
}

std::vector<AsymptoticRow> compare_asymptotic(std::span<const Rational> coefficients,
                                              const PowerLawAsymptotic& law,
                                              std::span<const int> sample_ns) {
  if (law.growth_base != 3) throw std::invalid_argument("compare_asymptotic: base must be 3");
  std::vector<AsymptoticRow> rows;
  rows.reserve(sample_ns.size());
  for (int n : sample_ns) {
    if (n < 1 || n >= static_cast<int>(coefficients.size())) {
      throw std::out_of_range("compare_asymptotic: sample length beyond the series");
    }
    rows.push_back(asymptotic_row(n, scaled_by_pow3(coefficients[n], n), law));
  }
  return rows;
}

ConvergenceVerdict judge_convergence(std::span<const AsymptoticRow> rows, long double threshold) {
  ConvergenceVerdict v;
  if (rows.empty()) return v;
  v.below_threshold = rows.back().relative_error < threshold;
  if (rows.size() >= 3) {
    const auto& a = rows[rows.size() - 3];
    const auto& b = rows[rows.size() - 2];
    const auto& c = rows[rows.size() - 1];
    v.decreasing = a.relative_error > b.relative_error && b.relative_error > c.relative_error;
  }
  return v;
}

std::vector<int> sample_lengths(int from, int to, int step) {
  std::vector<int> out;
  for (int n = from; n <= to; ++n) {
    if (n % step == 0) out.push_back(n);
  }
  return out;
}

}  // namespace kreweras
