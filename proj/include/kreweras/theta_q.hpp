#pragma once

#include <vector>

#include "kreweras/qseries.hpp"
#include "kreweras/tseries.hpp"
#include "kreweras/variant.hpp"

namespace kreweras {

/// Extra r-units carried through the closed-form assembly. The lowest
/// exponent among the theta arguments is r^-2 and the assembly shifts by at
/// most r^-3 more, so 12 leaves a wide margin. The final truncation order is
/// checked after assembly regardless.
inline constexpr int kTruncationGuard = 12;

/// Arguments of one theta-type series
///   T_k(u, q^m) = sum_{n>=0} (-1)^n (2n+1)^k q^{m n(n+1)/2} (u^{n+1} - (-1)^k u^{-n})
/// with u = s^u_s_exp * q^(u_q_exp_thirds/3).
struct TSpec {
  int k = 0;
  int u_s_exp = 0;
  int u_q_exp_thirds = 0;
  int nome_power = 1;
  int truncation_order = 1;
};

/// Partial sum of T_k containing every term with r-exponent <= truncation_order.
QSeries build_T(const TSpec& spec);

/// t as a series in r: r*T1(1,q^3) / (4*T0(q,q^3) + 6*T1(q,q^3)), q = r^3.
QSeries t_of_r(int truncation_order);
/// Compositional inverse of t_of_r: r = t + 5t^4 + ...
TSeries r_of_t(int order);
/// q(t) = r(t)^3 = t^3 + 15t^6 + 279t^9 + ...
TSeries q_of_t(int order);

struct GFRequest {
  Variant variant = Variant::cell;
  int order = 0;
  int guard = kTruncationGuard;
};

/// E(t,s): excursions on the cell-centred lattice by length and winding.
TSeries excursion_gf(int order, int guard = kTruncationGuard);
/// E~(t,s): walks on the vertex-centred lattice from w0 to {w0,w1,w2}.
TSeries vertex_excursion_gf(int order, int guard = kTruncationGuard);
TSeries generating_function(const GFRequest& request);

/// Coefficients of s^k for t^0..t^order, i.e. E_k(t).
std::vector<Rational> winding_slice(const TSeries& gf, int k);

}  // namespace kreweras
