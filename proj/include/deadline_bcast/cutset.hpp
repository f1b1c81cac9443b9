#pragma once
// Instantaneous cut-set feasibility region for a realized erasure pattern:
// per-block capacities, the region coefficients (a_min, v_0..v_N), the two
// algebraically equivalent feasibility tests and the boundary polygon.

#include <span>
#include <vector>

#include "deadline_bcast/channel.hpp"

namespace dbc {

// Real-valued rates are compared against integer slot capacities with this
// absolute tolerance.
inline constexpr double kRateTol = 1e-9;

// a: slots usable by user 1, b: slots usable by user 2, c: slots usable by
// the super-receiver (at least one user).
struct BlockCapacities {
  int a = 0;
  int b = 0;
  int c = 0;
  bool operator==(const BlockCapacities&) const = default;
};

BlockCapacities block_capacities(const BlockStats& stats);

// a_min = min_k a_k; v_k = v_0 + (sum of the k smallest per-block n10
// counts), which equals the minimum of sum_S c + sum_{not S} b over subsets
// S of size k because c_k - b_k = n_{k,10}.
struct RegionCoefficients {
  int a_min = 0;
  std::vector<int> v;  // size N + 1
};

RegionCoefficients region_coefficients(std::span<const BlockStats> stats);

// lambda1 <= a_min and lambda2 <= v_0 - sum_k (lambda1 - n_{k,10})^+.
bool is_feasible(std::span<const BlockStats> stats, double lambda1, double lambda2);

// Same region through the k*lambda1 + lambda2 <= v_k form; exists as a
// redundant cross-check of is_feasible.
bool equivalent_feasible(std::span<const BlockStats> stats, double lambda1, double lambda2);

struct RatePoint {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

// Vertices of {lambda >= 0, lambda1 <= a_min, k*lambda1 + lambda2 <= v_k} in
// boundary-path order: the origin, then increasing lambda1 (ties walk down
// the right edge). The origin is part of the polygon and is always included;
// an all-erased frame collapses to the single vertex (0, 0).
std::vector<RatePoint> region_boundary(std::span<const BlockStats> stats);

}  // namespace dbc
