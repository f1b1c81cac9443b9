#include "deadline_bcast/cutset.hpp"

#include <algorithm>
#include <cmath>

namespace dbc {

BlockCapacities block_capacities(const BlockStats& stats) {
  return BlockCapacities{stats.n10 + stats.n11, stats.n01 + stats.n11,
                         stats.n10 + stats.n01 + stats.n11};
}

RegionCoefficients region_coefficients(std::span<const BlockStats> stats) {
  if (stats.empty()) throw std::invalid_argument("stats: need at least one block");
  RegionCoefficients rc;
  rc.a_min = block_capacities(stats[0]).a;
  int v0 = 0;
  std::vector<int> n10s;
  n10s.reserve(stats.size());
  for (const BlockStats& b : stats) {
    const BlockCapacities cap = block_capacities(b);
    rc.a_min = std::min(rc.a_min, cap.a);
    v0 += cap.b;
    n10s.push_back(b.n10);
  }
  // c_k - b_k = n_{k,10}, so the minimum over size-k subsets is v_0 plus the
  // k smallest n10 counts.
  std::sort(n10s.begin(), n10s.end());
  rc.v.resize(stats.size() + 1);
  rc.v[0] = v0;
  for (std::size_t k = 0; k < n10s.size(); ++k) rc.v[k + 1] = rc.v[k] + n10s[k];
  return rc;
}

bool is_feasible(std::span<const BlockStats> stats, double lambda1, double lambda2) {
  if (stats.empty()) throw std::invalid_argument("stats: need at least one block");
  int a_min = block_capacities(stats[0]).a;
  int v0 = 0;
  double slack = 0.0;
  for (const BlockStats& b : stats) {
    const BlockCapacities cap = block_capacities(b);
    a_min = std::min(a_min, cap.a);
    v0 += cap.b;
    slack += std::max(0.0, lambda1 - b.n10);
  }
  return lambda1 <= a_min + kRateTol && lambda2 <= v0 - slack + kRateTol;
}

bool equivalent_feasible(std::span<const BlockStats> stats, double lambda1, double lambda2) {
  const RegionCoefficients rc = region_coefficients(stats);
  if (lambda1 > rc.a_min + kRateTol) return false;
  for (std::size_t k = 0; k < rc.v.size(); ++k) {
    if (static_cast<double>(k) * lambda1 + lambda2 > rc.v[k] + kRateTol) return false;
  }
  return true;
}

namespace {

// Half-plane a*x + b*y <= c.
struct Constraint {
  double a, b, c;
};

bool satisfies_all(const std::vector<Constraint>& cs, double x, double y) {
  for (const Constraint& h : cs) {
    if (h.a * x + h.b * y > h.c + kRateTol) return false;
  }
  return true;
}

}  // namespace

std::vector<RatePoint> region_boundary(std::span<const BlockStats> stats) {
  const RegionCoefficients rc = region_coefficients(stats);
  std::vector<Constraint> cs;
  cs.push_back({1.0, 0.0, static_cast<double>(rc.a_min)});
  for (std::size_t k = 0; k < rc.v.size(); ++k) {
    cs.push_back({static_cast<double>(k), 1.0, static_cast<double>(rc.v[k])});
  }
  cs.push_back({-1.0, 0.0, 0.0});
  cs.push_back({0.0, -1.0, 0.0});

  // The system is tiny (N + 3 half-planes), so pairwise intersection followed
  // by a containment filter is the whole algorithm.
  std::vector<RatePoint> vertices;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const double det = cs[i].a * cs[j].b - cs[j].a * cs[i].b;
      if (std::abs(det) < 1e-12) continue;
      double x = (cs[i].c * cs[j].b - cs[j].c * cs[i].b) / det;
      double y = (cs[i].a * cs[j].c - cs[j].a * cs[i].c) / det;
      if (x == 0.0) x = 0.0;  // drop negative zeros
      if (y == 0.0) y = 0.0;
      if (!satisfies_all(cs, x, y)) continue;
      bool dup = false;
      for (const RatePoint& p : vertices) {
        if (std::abs(p.lambda1 - x) <= 1e-7 && std::abs(p.lambda2 - y) <= 1e-7) {
          dup = true;
          break;
        }
      }
      if (!dup) vertices.push_back({x, y});
    }
  }
  // Boundary path order: origin, up the lambda2 axis, across the frontier by
  // increasing lambda1, down to the lambda1 axis.
  std::sort(vertices.begin(), vertices.end(), [](const RatePoint& p, const RatePoint& q) {
    const bool p_origin = p.lambda1 == 0.0 && p.lambda2 == 0.0;
    const bool q_origin = q.lambda1 == 0.0 && q.lambda2 == 0.0;
    if (p_origin != q_origin) return p_origin;
    if (p.lambda1 != q.lambda1) return p.lambda1 < q.lambda1;
    return p.lambda2 > q.lambda2;
  });
  return vertices;
}

}  // namespace dbc
