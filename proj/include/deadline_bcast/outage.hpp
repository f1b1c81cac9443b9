#pragma once
// Global deadline outage probability: exact block-configuration sum, the
// pattern-level brute-force oracle, Monte Carlo estimation, cost table
// construction and the rate-control inverse solver.

#include <cstdint>
#include <string>

#include "deadline_bcast/channel.hpp"
#include "deadline_bcast/cost_table.hpp"
#include "deadline_bcast/schedulers.hpp"

namespace dbc {

enum class OutageMethod { Exact, BruteForce, MonteCarlo };

const char* method_name(OutageMethod m);
OutageMethod method_from_name(std::string_view name);

struct OutageResult {
  double value = 0.0;
  OutageMethod method = OutageMethod::Exact;
  // Monte Carlo only:
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double stderr_est = 0.0;
};

// Exact outage via the sum over per-block count configurations (Cartesian
// product across the N blocks, product multinomial weights, cut-set
// indicator). Guards: t1 <= 12 and N <= 3.
OutageResult exact_outage(const DeadlineConfig& config, const ErasureProbs& eps);

enum class BruteForceMode {
  Feasibility,   // indicator = is_feasible
  GreedyStrict,  // indicator = greedy met_deadlines, checked against is_feasible
};

// Independent oracle: sums pattern_probability over all 4^T patterns.
// Guard: T <= 10. GreedyStrict throws std::logic_error if the greedy
// outcome ever disagrees with the cut-set test.
OutageResult brute_force_outage(const DeadlineConfig& config, const ErasureProbs& eps,
                                BruteForceMode mode = BruteForceMode::Feasibility);

// Equal-deadline subproblem (N = 1, T1 = T2 = t) outage without the
// small-frame guard of exact_outage; t <= 128 keeps the multinomial weights
// inside double range. Accepts t = 0 with the residual convention
// P = 1 for l1 + l2 > 0.
double equal_deadline_outage(double l1, double l2, int t, const ErasureProbs& eps);

// Table of equal-deadline outage values for all residual triples within the
// bounds.
CostToGoTable build_cost_table(int tmax, int l1max, int l2max, const ErasureProbs& eps);

// Fraction of sampled frames on which the policy misses a deadline.
// Deterministic for a given seed, independent of the worker thread count.
OutageResult monte_carlo_outage(PolicyId policy, const DeadlineConfig& config,
                                const ErasureProbs& eps, std::uint64_t trials,
                                std::uint64_t seed);

struct RateSolution {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double pout = 0.0;       // exact outage at the returned rates
  bool zero_rate = false;  // even the smallest positive step exceeds the target
};

// Largest lambda2 on the ray lambda1 = m * lambda2 with outage at most p.
// The outage is a nondecreasing step function along the ray that jumps only
// at candidate breakpoints {i, i/m, i/(k*m + 1)}, so the solver enumerates
// those and binary-searches. Requires p in [0, 1), m >= 0.
RateSolution rate_solver(const ErasureProbs& eps, int t1, int t2, double p, double m);

// JSON object with fields {value, method, trials, seed, stderr, config,
// eps, generator}; the Monte-Carlo-only fields are omitted for the exact
// methods.
std::string outage_to_json(const OutageResult& result, const DeadlineConfig& config,
                           const ErasureProbs& eps);

}  // namespace dbc
