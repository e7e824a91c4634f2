#pragma once

// Dense truncated power series with rational coefficients. Internal helpers
// shared by the QSeries/TSeries kernels that only ever see s-free data.

#include <vector>

#include "kreweras/rational.hpp"

namespace kreweras::detail {

using RationalSeries = std::vector<Rational>;

// a*b keeping coefficients 0..order.
inline RationalSeries mul_trunc(const RationalSeries& a, const RationalSeries& b, int order) {
  RationalSeries out(order + 1);
  Rational prod;
  for (int i = 0; i < static_cast<int>(a.size()) && i <= order; ++i) {
    if (sgn(a[i]) == 0) continue;
    const int jmax = std::min<int>(static_cast<int>(b.size()) - 1, order - i);
    for (int j = 0; j <= jmax; ++j) {
      if (sgn(b[j]) == 0) continue;
      mpq_mul(prod.get_mpq_t(), a[i].get_mpq_t(), b[j].get_mpq_t());
      mpq_add(out[i + j].get_mpq_t(), out[i + j].get_mpq_t(), prod.get_mpq_t());
    }
  }
  return out;
}

// 1/a for a[0] != 0, coefficients 0..order.
inline RationalSeries inv_trunc(const RationalSeries& a, int order) {
  RationalSeries out(order + 1);
  const Rational lead_inv = 1 / a.at(0);
  out[0] = lead_inv;
  Rational acc, prod;
  for (int n = 1; n <= order; ++n) {
    acc = 0;
    const int imax = std::min<int>(n, static_cast<int>(a.size()) - 1);
    for (int i = 1; i <= imax; ++i) {
      if (sgn(a[i]) == 0) continue;
      mpq_mul(prod.get_mpq_t(), a[i].get_mpq_t(), out[n - i].get_mpq_t());
      acc += prod;
    }
    out[n] = -acc * lead_inv;
  }
  return out;
}

// f(g) by Horner's rule; g[0] must be 0.
inline RationalSeries compose_trunc(const RationalSeries& f, const RationalSeries& g, int order) {
  RationalSeries acc(order + 1);
  const int top = std::min<int>(static_cast<int>(f.size()) - 1, order);
  for (int i = top; i >= 0; --i) {
    acc = mul_trunc(acc, g, order);
    acc[0] += f[i];
  }
  return acc;
}

inline RationalSeries derivative(const RationalSeries& f) {
  RationalSeries out(f.size() > 1 ? f.size() - 1 : 1);
  for (std::size_t i = 1; i < f.size(); ++i) out[i - 1] = f[i] * static_cast<long>(i);
  return out;
}

}  // namespace kreweras::detail
