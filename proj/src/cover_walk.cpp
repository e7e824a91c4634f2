#include "kreweras/cover_walk.hpp"

#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

#include "kreweras/errors.hpp"

namespace kreweras {

Successors successors(const TransitionRules& rules, const WedgeState& from) {
  Successors out;
  auto push = [&out](WedgeState v) { out.states[out.count++] = v; };
  const auto [k, a, b] = from;
  push({k, a + 1, b + 1});
  if (a >= 1) push({k, a - 1, b});
  if (b >= 1) push({k, a, b - 1});
  if (a == 0 && b + rules.up_shift >= 0) push({k + 1, b + rules.up_shift, 0});
  if (b == 0 && a + rules.down_shift >= 0) push({k - 1, 0, a + rules.down_shift});
  return out;
}

CountTable::CountTable(int n_max, int k_window) : n_max_(n_max), k_window_(k_window) {
  if (n_max < 0 || k_window < 0) throw std::invalid_argument("CountTable: negative bounds");
  layers_.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const std::size_t triangle = static_cast<std::size_t>(2 * n + 1) * (2 * n + 2) / 2;
    layers_[n].resize(static_cast<std::size_t>(2 * layer_k(n) + 1) * triangle);
  }
}

bool CountTable::in_window(int n, const WedgeState& v) const {
  return n >= 0 && n <= n_max_ && v.k >= -layer_k(n) && v.k <= layer_k(n) && v.a >= 0 &&
         v.b >= 0 && v.a + v.b <= 2 * n;
}

std::size_t CountTable::index(int n, const WedgeState& v) const {
  const std::size_t side = 2 * n + 1;
  const std::size_t triangle = side * (side + 1) / 2;
  const std::size_t a = v.a;
  const std::size_t row_start = a * side - a * (a - 1) / 2;
  return static_cast<std::size_t>(v.k + layer_k(n)) * triangle + row_start + v.b;
}

const Integer& CountTable::count(int n, const WedgeState& v) const {
  static const Integer zero = 0;
  if (!in_window(n, v)) return zero;
  return layers_[n][index(n, v)];
}

Integer& CountTable::at(int n, const WedgeState& v) {
  if (!in_window(n, v)) {
    std::ostringstream msg;
    msg << "CountTable: state (" << v.k << "," << v.a << "," << v.b << ") at length " << n
        << " is outside the window";
    throw WindowOverflow(msg.str());
  }
  return layers_[n][index(n, v)];
}

CountTable enumerate(const TransitionRules& rules, int n_max) {
  if (n_max < 0) throw std::invalid_argument("enumerate: n_max must be >= 0");
  CountTable table(n_max, n_max);
  table.at(0, {0, 0, 0}) = 1;
  for (int n = 0; n < n_max; ++n) {
    table.for_each_nonzero(n, [&](const WedgeState& v, const Integer& c) {
      for (const WedgeState& w : successors(rules, v).view()) table.at(n + 1, w) += c;
    });
  }
  return table;
}

CountTable enumerate(Variant variant, int n_max) {
  return enumerate(TransitionRules::for_variant(variant), n_max);
}

TSeries excursion_series(const CountTable& table) {
  std::vector<WindingPoly> coeffs(table.n_max() + 1);
  for (int n = 0; n <= table.n_max(); ++n) {
    std::vector<WindingPoly::Term> terms;
    for (int k = -n; k <= n; ++k) {
      const Integer& c = table.count(n, {k, 0, 0});
      if (sgn(c) != 0) terms.emplace_back(k, Rational(c));
    }
    coeffs[n] = WindingPoly::from_terms(std::move(terms));
  }
  return TSeries(std::move(coeffs));
}

TSeries excursion_series(Variant variant, int n_max) {
  return excursion_series(enumerate(variant, n_max));
}

std::string EquationReport::describe() const {
  std::ostringstream out;
  if (holds) {
    out << "functional equation holds on " << monomials_checked << " monomials";
  } else {
    const Monomial& m = *first_mismatch;
    out << "mismatch at t^" << m.n << " s^" << m.k << " x^" << m.a << " y^" << m.b
        << ": lhs=" << lhs.get_str() << " rhs=" << rhs.get_str();
  }
  return out.str();
}

EquationReport verify_functional_equation(Variant equation, const CountTable& table) {
  using Poly = std::map<Monomial, Integer>;
  const int n_max = table.n_max();
  Poly lhs;
  for (int n = 0; n <= n_max; ++n) {
    table.for_each_nonzero(n, [&](const WedgeState& v, const Integer& c) {
      lhs[{n, v.k, v.a, v.b}] = c;
    });
  }

  // Right-hand side, assembled term by term from G itself.
  Poly rhs;
  rhs[{0, 0, 0, 0}] += 1;
  for (const auto& [m, c] : lhs) {
    if (m.n + 1 > n_max) continue;
    const int n = m.n + 1;
    rhs[{n, m.k, m.a + 1, m.b + 1}] += c;                  // t x y G
    if (m.a >= 1) rhs[{n, m.k, m.a - 1, m.b}] += c;        // (t/x)(G - G(0,y))
    if (m.b >= 1) rhs[{n, m.k, m.a, m.b - 1}] += c;        // (t/y)(G - G(x,0))
    if (equation == Variant::cell) {
      if (m.a == 0) rhs[{n, m.k + 1, m.b, 0}] += c;        // t s G(0,x)
      if (m.b == 0) rhs[{n, m.k - 1, 0, m.a + 1}] += c;    // t s^-1 y G(y,0)
    } else {
      if (m.a == 0 && m.b >= 1) rhs[{n, m.k + 1, m.b - 1, 0}] += c;  // (ts/x)(G(0,x) - G(0,0))
      if (m.b == 0) rhs[{n, m.k - 1, 0, m.a + 2}] += c;              // t s^-1 y^2 G(y,0)
    }
  }

  EquationReport report;
  auto li = lhs.begin();
  auto ri = rhs.begin();
  static const Integer zero = 0;
  while (li != lhs.end() || ri != rhs.end()) {
    Monomial m;
    const Integer* l = &zero;
    const Integer* r = &zero;
    if (ri == rhs.end() || (li != lhs.end() && li->first < ri->first)) {
      m = li->first;
      l = &(li++)->second;
    } else if (li == lhs.end() || ri->first < li->first) {
      m = ri->first;
      r = &(ri++)->second;
    } else {
      m = li->first;
      l = &(li++)->second;
      r = &(ri++)->second;
    }
    ++report.monomials_checked;
    if (*l != *r) {
      report.holds = false;
      report.first_mismatch = m;
      report.lhs = *l;
      report.rhs = *r;
      return report;
    }
  }
  return report;
}

EquationReport verify_functional_equation(Variant variant, int n_max) {
  if (n_max < 1) throw std::invalid_argument("verify_functional_equation: n_max must be >= 1");
  return verify_functional_equation(variant, enumerate(variant, n_max));
}

std::vector<Integer> plane_oracle(std::span<const PlanePoint> steps, PlaneRegion region,
                                  PlanePoint start, PlanePoint end, int n_max) {
  if (n_max < 0) throw std::invalid_argument("plane_oracle: n_max must be >= 0");
  for (const auto& st : steps) {
    if (st.x < -1 || st.x > 1 || st.y < -1 || st.y > 1 || (st.x == 0 && st.y == 0)) {
      throw std::invalid_argument("plane_oracle: steps must be nonzero vectors in {-1,0,1}^2");
    }
  }
  auto inside = [region](int x, int y) {
    return region == PlaneRegion::quarter ? (x >= 0 && y >= 0) : !(x < 0 && y < 0);
  };
  if (!inside(start.x, start.y) || !inside(end.x, end.y)) {
    throw std::invalid_argument("plane_oracle: start and end must lie in the region");
  }

  const int side = 2 * n_max + 1;
  auto idx = [&](int x, int y) {
    return static_cast<std::size_t>(x - start.x + n_max) * side + (y - start.y + n_max);
  };
  std::vector<Integer> cur(static_cast<std::size_t>(side) * side), next(cur.size());
  cur[idx(start.x, start.y)] = 1;
  const bool end_reachable_box =
      std::abs(end.x - start.x) <= n_max && std::abs(end.y - start.y) <= n_max;

  std::vector<Integer> counts;
  counts.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    counts.push_back(end_reachable_box ? cur[idx(end.x, end.y)] : Integer(0));
    if (n == n_max) break;
    for (auto& c : next) c = 0;
    const int reach = n;  // after n steps the walk is within distance n of start
    for (int x = start.x - reach; x <= start.x + reach; ++x) {
      for (int y = start.y - reach; y <= start.y + reach; ++y) {
        const Integer& c = cur[idx(x, y)];
        if (sgn(c) == 0) continue;
        for (const auto& st : steps) {
          const int nx = x + st.x, ny = y + st.y;
          if (inside(nx, ny)) next[idx(nx, ny)] += c;
        }
      }
    }
    std::swap(cur, next);
  }
  return counts;
}

int winding_sixths(const WedgeState& v) {
  // Wedge k, point (a,b) sits at rot120^k (1 + a - b/2, b*sqrt(3)/2): the
  // b = 0 ray has winding 2k*pi/3 and the line b = a + 1 has (2k+1)*pi/3.
  int within;
  if (v.b == 0) within = 0;
  else if (v.b <= v.a) within = 1;
  else if (v.b == v.a + 1) within = 2;
  else within = 3;
  return 4 * v.k + within;
}

TSeries corridor_excursions(int k1, int k2, int n_max) {
  if (!(k1 < 0 && 0 < k2)) throw std::invalid_argument("corridor_excursions: need k1 < 0 < k2");
  if (n_max < 0) throw std::invalid_argument("corridor_excursions: n_max must be >= 0");
  const auto rules = TransitionRules::for_variant(Variant::vertex);
  auto allowed = [&](const WedgeState& v) {
    const int w = winding_sixths(v);
    return 2 * k1 < w && w < 2 * k2;
  };
  CountTable table(n_max, n_max);
  table.at(0, {0, 0, 0}) = 1;
  for (int n = 0; n < n_max; ++n) {
    table.for_each_nonzero(n, [&](const WedgeState& v, const Integer& c) {
      for (const WedgeState& w : successors(rules, v).view()) {
        if (allowed(w)) table.at(n + 1, w) += c;
      }
    });
  }
  return excursion_series(table);
}

}  // namespace kreweras
