#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kreweras/rational.hpp"
#include "kreweras/tseries.hpp"
#include "kreweras/variant.hpp"

namespace kreweras {

/// A point of the covering space: wedge index k and quarter-plane
/// coordinates (a, b) inside that wedge. Its monomial is s^k x^a y^b.
struct WedgeState {
  int k = 0;
  int a = 0;
  int b = 0;
  friend auto operator<=>(const WedgeState&, const WedgeState&) = default;
};

/// Boundary-crossing rules read off the functional equations.
///
/// Interior steps are always (1,1), (-1,0), (0,-1). Leaving wedge k through
/// the a = 0 side lands on (k+1, b + up_shift, 0); leaving through the b = 0
/// side lands on (k-1, 0, a + down_shift). A crossing whose target would
/// have a negative coordinate is blocked.
struct TransitionRules {
  int up_shift = 0;
  int down_shift = 1;

  static constexpr TransitionRules for_variant(Variant v) {
    return v == Variant::cell ? TransitionRules{0, 1} : TransitionRules{-1, 2};
  }
  friend bool operator==(const TransitionRules&, const TransitionRules&) = default;
};

struct Successors {
  std::array<WedgeState, 4> states{};
  int count = 0;
  std::span<const WedgeState> view() const { return {states.data(), static_cast<std::size_t>(count)}; }
};

Successors successors(const TransitionRules& rules, const WedgeState& from);

/// Path counts p_{n,v} for every length n <= n_max, stored densely per layer.
/// Layer n covers |k| <= min(n, k_window) and a + b <= 2n.
class CountTable {
 public:
  CountTable(int n_max, int k_window);

  int n_max() const { return n_max_; }
  int k_window() const { return k_window_; }
  /// Zero outside the stored window.
  const Integer& count(int n, const WedgeState& v) const;
  Integer& at(int n, const WedgeState& v);  // throws WindowOverflow outside the window
  bool in_window(int n, const WedgeState& v) const;

  template <class F>
  void for_each_nonzero(int n, F&& f) const {
    const int kw = layer_k(n);
    const int ab = 2 * n;
    std::size_t idx = 0;
    for (int k = -kw; k <= kw; ++k) {
      for (int a = 0; a <= ab; ++a) {
        for (int b = 0; a + b <= ab; ++b, ++idx) {
          const Integer& c = layers_[n][idx];
          if (sgn(c) != 0) f(WedgeState{k, a, b}, c);
        }
      }
    }
  }

 private:
  int layer_k(int n) const { return std::min(n, k_window_); }
  std::size_t index(int n, const WedgeState& v) const;

  int n_max_;
  int k_window_;
  std::vector<std::vector<Integer>> layers_;
};

/// Forward DP over the covering space starting from w0 = (0,0,0).
CountTable enumerate(Variant variant, int n_max);
CountTable enumerate(const TransitionRules& rules, int n_max);

/// sum_n t^n sum_k s^k p_{n,(k,0,0)}.
TSeries excursion_series(const CountTable& table);
TSeries excursion_series(Variant variant, int n_max);

/// Monomial t^n s^k x^a y^b.
struct Monomial {
  int n = 0;
  int k = 0;
  int a = 0;
  int b = 0;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct EquationReport {
  bool holds = true;
  std::size_t monomials_checked = 0;
  std::optional<Monomial> first_mismatch;
  Integer lhs;
  Integer rhs;
  std::string describe() const;
};

/// Checks G = 1 + (right-hand side of the functional equation for
/// `equation`) on the truncated polynomial built from `table`, up to t^n_max.
EquationReport verify_functional_equation(Variant equation, const CountTable& table);
EquationReport verify_functional_equation(Variant variant, int n_max);

struct PlanePoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

enum class PlaneRegion { quarter, three_quarter };

/// Brute-force count of walks with the given small steps that stay in the
/// region (quarter: x >= 0 and y >= 0; three-quarter: not (x < 0 and y < 0)).
std::vector<Integer> plane_oracle(std::span<const PlanePoint> steps, PlaneRegion region,
                                  PlanePoint start, PlanePoint end, int n_max);

/// Winding angle of a vertex-lattice state relative to w0, in units of pi/6.
/// Odd values mean "strictly between the two neighbouring multiples of pi/3".
int winding_sixths(const WedgeState& v);

/// Vertex-lattice walks from w0 whose every visited vertex has winding
/// strictly inside (k1*pi/3, k2*pi/3); coefficient of t^n s^k counts those
/// ending at corner (k,0,0).
TSeries corridor_excursions(int k1, int k2, int n_max);

}  // namespace kreweras
