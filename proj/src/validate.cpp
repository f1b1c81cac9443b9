#include "deadline_bcast/validate.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <vector>

#include "deadline_bcast/channel.hpp"
#include "deadline_bcast/cutset.hpp"
#include "deadline_bcast/kernels.hpp"
#include "deadline_bcast/outage.hpp"
#include "deadline_bcast/parallel.hpp"
#include "deadline_bcast/schedulers.hpp"

namespace dbc {

namespace {

ErasureProbs default_eps() { return ErasureProbs(0.1, 0.2, 0.2, 0.5); }

std::vector<ErasureProbs> criterion_eps_list() {
  return {default_eps(), ErasureProbs(0.25, 0.25, 0.25, 0.25), ErasureProbs(0.0, 0.0, 0.0, 1.0)};
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct CheckOutcome {
  bool pass = true;
  std::string detail;

  void fail(std::string message) {
    pass = false;
    if (detail.empty()) detail = std::move(message);  // keep the first failure
  }
};

// ---- criterion 1: exact_outage == brute_force_outage ---------------------

CheckOutcome check_oracle_equivalence(bool quick) {
  CheckOutcome out;
  const int t1_hi = quick ? 3 : 4;
  double max_diff = 0.0;
  for (const ErasureProbs& eps : criterion_eps_list()) {
    for (int t1 = 1; t1 <= t1_hi; ++t1) {
      for (int n = 1; n <= 2; ++n) {
        const int frame = t1 * n;
        const int steps = frame * 2;  // lambda grid step 0.5 in [0, T]
        for (int i1 = 0; i1 <= steps; ++i1) {
          for (int i2 = 0; i2 <= steps; ++i2) {
            const DeadlineConfig config(0.5 * i1, 0.5 * i2, t1, frame);
            const double exact = exact_outage(config, eps).value;
            const double brute = brute_force_outage(config, eps).value;
            const double diff = std::abs(exact - brute);
            max_diff = std::max(max_diff, diff);
            if (diff > 1e-12) {
              out.fail(fmt("t1=%d N=%d lambda=(%g,%g): exact=%.17g brute=%.17g", t1, n, 0.5 * i1,
                           0.5 * i2, exact, brute));
            }
          }
        }
      }
    }
  }
  if (out.pass) out.detail = fmt("max |exact - brute| = %.3g", max_diff);
  return out;
}

// ---- criterion 2: greedy met_deadlines <=> cut-set feasibility ------------

struct FrameCase {
  int t1;
  int n;
};

std::vector<FrameCase> exhaustive_cases(bool quick) {
  if (quick) return {{2, 1}, {1, 2}, {3, 1}, {1, 3}, {4, 1}, {2, 2}};
  return {{2, 1}, {1, 2}, {3, 1}, {1, 3}, {4, 1}, {2, 2}, {6, 1}, {3, 2}, {2, 3}};
}

CheckOutcome check_greedy_matches_cutset(bool quick) {
  CheckOutcome out;
  std::uint64_t checked = 0;
  for (const FrameCase fc : exhaustive_cases(quick)) {
    const int frame = fc.t1 * fc.n;
    const int steps = frame * 4;  // lambda grid step 0.25 in [0, T]
    const std::uint64_t patterns = pattern_count(frame);
    const std::uint64_t chunk = std::max<std::uint64_t>(1, patterns / 64);
    const std::uint64_t chunks = (patterns + chunk - 1) / chunk;
    std::vector<std::uint64_t> mismatches(chunks, 0);
    std::vector<std::string> first_bad(chunks);
    parallel_chunks(patterns, chunk, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t index = begin; index < end; ++index) {
        const ErasurePattern pattern = pattern_at(index, frame);
        const std::vector<BlockStats> stats = block_stats(pattern, fc.t1);
        for (int i1 = 0; i1 <= steps; ++i1) {
          for (int i2 = 0; i2 <= steps; ++i2) {
            const DeadlineConfig config(0.25 * i1, 0.25 * i2, fc.t1, frame);
            const bool met = greedy_full_csi(pattern, config).met_deadlines;
            const bool feasible = is_feasible(stats, config.lambda1, config.lambda2);
            if (met != feasible) {
              ++mismatches[c];
              if (first_bad[c].empty()) {
                first_bad[c] = fmt("pattern=%s t1=%d lambda=(%g,%g) met=%d feasible=%d",
                                   pattern.str().c_str(), fc.t1, 0.25 * i1, 0.25 * i2, met,
                                   feasible);
              }
            }
          }
        }
      }
    });
    checked += patterns * static_cast<std::uint64_t>(steps + 1) *
               static_cast<std::uint64_t>(steps + 1);
    for (std::uint64_t c = 0; c < chunks; ++c) {
      if (mismatches[c] > 0) out.fail(first_bad[c]);
    }
  }
  if (out.pass) out.detail = fmt("%llu (pattern, rate) cases, zero exceptions",
                                 static_cast<unsigned long long>(checked));
  return out;
}

// ---- criterion 3: is_feasible == equivalent_feasible ----------------------

CheckOutcome check_feasibility_forms_agree(bool quick) {
  CheckOutcome out;
  std::uint64_t checked = 0;
  for (const FrameCase fc : exhaustive_cases(quick)) {
    const int frame = fc.t1 * fc.n;
    const int steps = frame * 4;
    for (std::uint64_t index = 0; index < pattern_count(frame); ++index) {
      const ErasurePattern pattern = pattern_at(index, frame);
      const std::vector<BlockStats> stats = block_stats(pattern, fc.t1);
      for (int i1 = 0; i1 <= steps; ++i1) {
        for (int i2 = 0; i2 <= steps; ++i2) {
          const bool direct = is_feasible(stats, 0.25 * i1, 0.25 * i2);
          const bool via_vk = equivalent_feasible(stats, 0.25 * i1, 0.25 * i2);
          ++checked;
          if (direct != via_vk) {
            out.fail(fmt("pattern=%s t1=%d lambda=(%g,%g): direct=%d via_vk=%d",
                         pattern.str().c_str(), fc.t1, 0.25 * i1, 0.25 * i2, direct, via_vk));
          }
        }
      }
    }
  }
  if (out.pass) out.detail = fmt("%llu cases agree", static_cast<unsigned long long>(checked));
  return out;
}

// ---- criterion 4: outage saturates exactly at lambda1 + lambda2 > T -------

CheckOutcome check_saturation_at_frame_capacity(bool) {
  CheckOutcome out;
  const ErasureProbs eps = default_eps();
  for (int i = 0; i <= 24; ++i) {
    const double l1 = 0.5 * i;
    const DeadlineConfig above(l1, 12.25 - l1, 12, 12);
    const double p_above = exact_outage(above, eps).value;
    if (p_above != 1.0) {
      out.fail(fmt("lambda=(%g,%g): expected exactly 1, got %.17g", l1, 12.25 - l1, p_above));
    }
    const DeadlineConfig at(l1, 12.0 - l1, 12, 12);
    const double p_at = exact_outage(at, eps).value;
    if (!(p_at < 1.0)) {
      out.fail(fmt("lambda=(%g,%g): expected < 1 (eps11 > 0), got %.17g", l1, 12.0 - l1, p_at));
    }
  }
  const double p_deep = exact_outage(DeadlineConfig(10.0, 10.0, 12, 12), default_eps()).value;
  if (p_deep != 1.0) out.fail(fmt("lambda=(10,10): expected exactly 1, got %.17g", p_deep));
  if (out.pass) out.detail = "P = 1 exactly beyond the frame capacity, < 1 on it";
  return out;
}

// ---- criterion 5: monotonicity and step structure --------------------------

CheckOutcome check_monotonicity_and_steps(bool quick) {
  CheckOutcome out;
  const ErasureProbs eps = default_eps();

  // P(lambda = 0) = 0 for every frame shape.
  for (int t = 1; t <= (quick ? 4 : 8); ++t) {
    const double p = exact_outage(DeadlineConfig(0.0, 0.0, t, t), eps).value;
    if (std::abs(p) > 1e-12) out.fail(fmt("T=%d: P(0,0) = %.3g != 0", t, p));
  }
  const double p_zero_n2 = exact_outage(DeadlineConfig(0.0, 0.0, 4, 8), eps).value;
  if (std::abs(p_zero_n2) > 1e-12) out.fail(fmt("t1=4 N=2: P(0,0) = %.3g != 0", p_zero_n2));

  // Nondecreasing in each rate, for N = 1 and N = 2 shapes.
  const std::vector<std::pair<int, int>> shapes = {{6, 6}, {3, 6}};
  for (const auto& [t1, t2] : shapes) {
    for (double other : {0.0, 0.5, 1.0}) {
      double prev1 = -1.0;
      double prev2 = -1.0;
      for (int i = 0; i <= (t2 + 1) * 4; ++i) {
        const double lam = 0.25 * i;
        const double p1 = exact_outage(DeadlineConfig(lam, other, t1, t2), eps).value;
        const double p2 = exact_outage(DeadlineConfig(other, lam, t1, t2), eps).value;
        if (p1 < prev1 - 1e-12) out.fail(fmt("t1=%d t2=%d: P not nondecreasing in lambda1", t1, t2));
        if (p2 < prev2 - 1e-12) out.fail(fmt("t1=%d t2=%d: P not nondecreasing in lambda2", t1, t2));
        prev1 = p1;
        prev2 = p2;
      }
    }
  }

  // Nonincreasing in T at fixed rates (T1 = T2 = T).
  for (const auto& [l1, l2] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {1.5, 0.5}}) {
    double prev = 2.0;
    for (int t = 1; t <= 8; ++t) {
      const double p = exact_outage(DeadlineConfig(l1, l2, t, t), eps).value;
      if (p > prev + 1e-12) out.fail(fmt("lambda=(%g,%g): P increased from T=%d to T=%d", l1, l2, t - 1, t));
      prev = p;
    }
  }

  // Constant between integer breakpoints of lambda1, lambda2 and their sum
  // (N = 1); equal up to the right edge of each cell, strictly detectable
  // jumps only past it.
  for (const int t : quick ? std::vector<int>{4} : std::vector<int>{4, 6, 8}) {
    for (int k1 = 0; k1 < t; ++k1) {
      for (int k2 = 0; k2 < t; ++k2) {
        const double base = exact_outage(DeadlineConfig(k1 + 0.05, k2 + 0.05, t, t), eps).value;
        const double probes[][2] = {
            {k1 + 0.25, k2 + 0.25}, {k1 + 0.45, k2 + 0.45}, {k1 + 0.05, k2 + 0.45},
            {k1 + 0.45, k2 + 0.05}};
        for (const auto& pr : probes) {
          const double p = exact_outage(DeadlineConfig(pr[0], pr[1], t, t), eps).value;
          if (std::abs(p - base) > 1e-12) {
            out.fail(fmt("T=%d cell (%d,%d): P varies inside the cell (%.17g vs %.17g)", t, k1,
                         k2, base, p));
          }
        }
      }
    }
    // Left-continuity at integer rate breakpoints.
    for (int k = 1; k < t; ++k) {
      const double at = exact_outage(DeadlineConfig(static_cast<double>(k), 0.5, t, t), eps).value;
      const double just_below =
          exact_outage(DeadlineConfig(k - 0.05, 0.5, t, t), eps).value;
      const double just_above =
          exact_outage(DeadlineConfig(k + 0.05, 0.5, t, t), eps).value;
      if (std::abs(at - just_below) > 1e-12) {
        out.fail(fmt("T=%d: P(%d - 0.05) != P(%d) (step not left-closed)", t, k, k));
      }
      if (just_above < at - 1e-12) out.fail(fmt("T=%d: P decreased across lambda1=%d", t, k));
    }
  }
  if (out.pass) out.detail = "zero at origin, monotone, constant between integer breakpoints";
  return out;
}

// ---- criterion 6: Monte Carlo vs exact (greedy) ----------------------------

CheckOutcome check_monte_carlo_consistency(bool quick) {
  CheckOutcome out;
  const DeadlineConfig config(1.0, 1.0, 6, 6);
  const ErasureProbs eps = default_eps();
  const double exact = exact_outage(config, eps).value;
  const OutageResult mc =
      monte_carlo_outage(PolicyId::GreedyFull, config, eps, quick ? 20000 : 100000, 20240901);
  const double diff = std::abs(mc.value - exact);
  if (diff > 4.0 * mc.stderr_est) {
    out.fail(fmt("|mc - exact| = %.3g > 4 stderr = %.3g", diff, 4.0 * mc.stderr_est));
  } else {
    out.detail = fmt("exact=%.6g mc=%.6g (|diff| = %.2g <= 4 stderr = %.2g)", exact, mc.value,
                     diff, 4.0 * mc.stderr_est);
  }
  return out;
}

// ---- criterion 7: policy ordering ------------------------------------------

CheckOutcome check_policy_ordering(bool quick) {
  CheckOutcome out;
  const ErasureProbs eps = default_eps();
  const std::uint64_t trials = quick ? 20000 : 100000;
  const int t_hi = quick ? 5 : 10;
  for (int t = 2; t <= t_hi; ++t) {
    const DeadlineConfig config(1.0, 1.0, t, t);
    const double full = exact_outage(config, eps).value;
    const OutageResult cur =
        monte_carlo_outage(PolicyId::CurrentCsi, config, eps, trials, 7700 + t);
    const OutageResult past =
        monte_carlo_outage(PolicyId::PastCsi, config, eps, trials, 8800 + t);
    if (full > cur.value + 3.0 * cur.stderr_est) {
      out.fail(fmt("T=%d: full-CSI exact %.5g above current-CSI %.5g + 3 stderr", t, full,
                   cur.value));
    }
    const double combined = std::sqrt(cur.stderr_est * cur.stderr_est +
                                      past.stderr_est * past.stderr_est);
    if (cur.value > past.value + 3.0 * combined) {
      out.fail(fmt("T=%d: current-CSI %.5g above past-CSI %.5g + 3 combined stderr", t,
                   cur.value, past.value));
    }
  }
  if (out.pass) out.detail = fmt("full <= current <= past for T in [2, %d]", t_hi);
  return out;
}

// ---- criterion 8: cost table vs brute force --------------------------------

CheckOutcome check_cost_table(bool quick) {
  CheckOutcome out;
  const ErasureProbs eps = default_eps();
  const int tmax = quick ? 5 : 8;
  const CostToGoTable table = build_cost_table(tmax, 3, 3, eps);
  double max_diff = 0.0;
  for (int t = 0; t <= tmax; ++t) {
    for (int l1 = 0; l1 <= 3; ++l1) {
      for (int l2 = 0; l2 <= 3; ++l2) {
        double expected;
        if (t == 0) {
          expected = l1 + l2 > 0 ? 1.0 : 0.0;
        } else {
          expected = brute_force_outage(DeadlineConfig(l1, l2, t, t), eps).value;
        }
        const double got = table.at(l1, l2, t);
        const double diff = std::abs(got - expected);
        max_diff = std::max(max_diff, diff);
        if (diff > 1e-12) {
          out.fail(fmt("entry (%d,%d,%d): table %.17g vs brute force %.17g", l1, l2, t, got,
                       expected));
        }
      }
    }
  }
  if (out.pass) out.detail = fmt("all entries match, max |diff| = %.3g", max_diff);
  return out;
}

// ---- criterion 9: rate solver vs dense scan --------------------------------

CheckOutcome check_rate_solver(bool quick) {
  CheckOutcome out;
  const ErasureProbs eps = default_eps();
  const double m = 1.0;
  const int t1 = 4;
  auto outage_on_ray = [&](double lambda2) {
    return exact_outage(DeadlineConfig(m * lambda2, lambda2, t1, t1), eps).value;
  };
  const std::vector<double> targets = quick
                                          ? std::vector<double>{0.01, 0.1, 0.5}
                                          : std::vector<double>{0.0,  0.001, 0.0161, 0.017,
                                                                0.0181, 0.02, 0.1,   0.1739,
                                                                0.2,  0.3919, 0.5,  0.99};
  for (const double p : targets) {
    const RateSolution sol = rate_solver(eps, t1, t1, p, m);
    if (sol.pout > p) {
      out.fail(fmt("p=%g: solver returned lambda2=%g with outage %.17g > p", p, sol.lambda2,
                   sol.pout));
      continue;
    }
    // The outage step function only moves at {i, i/m, i/(m+1)}; the next
    // candidate after the returned rate must overshoot the target.
    double next = 1e30;
    const double cap = std::min(static_cast<double>(t1), t1 / m) + 1.0;
    for (const double denom : {1.0, m, m + 1.0}) {
      for (int i = 1; i / denom <= cap; ++i) {
        const double bp = i / denom;
        if (bp > sol.lambda2 + 1e-9) next = std::min(next, bp);
      }
    }
    if (next < 1e29 && !(outage_on_ray(next) > p)) {
      out.fail(fmt("p=%g: next breakpoint %g still satisfies the target", p, next));
    }
    // Dense scan of the step function (grid step 0.005).
    double scan_max = 0.0;
    for (int i = 0; i * 0.005 <= cap; ++i) {
      const double lambda2 = i * 0.005;
      if (outage_on_ray(lambda2) <= p) scan_max = lambda2;
    }
    if (sol.lambda2 < scan_max - 1e-9 || sol.lambda2 - scan_max > 0.005 + 1e-9) {
      out.fail(fmt("p=%g: solver %g vs dense-scan supremum %g", p, sol.lambda2, scan_max));
    }
  }
  if (out.pass) out.detail = fmt("%zu targets match the dense scan", targets.size());
  return out;
}

// ---- extra invariants (validate-only) ---------------------------------------

CheckOutcome check_pattern_probability_normalization(bool) {
  CheckOutcome out;
  for (const ErasureProbs& eps : criterion_eps_list()) {
    for (int t = 1; t <= 5; ++t) {
      double sum = 0.0;
      for (const ErasurePattern& pattern : enumerate_patterns(t)) {
        sum += pattern_probability(pattern, eps);
      }
      if (std::abs(sum - 1.0) > 1e-12) out.fail(fmt("T=%d: pattern probabilities sum to %.17g", t, sum));
    }
  }
  if (out.pass) out.detail = "pattern probabilities sum to 1 for T <= 5";
  return out;
}

CheckOutcome check_block_config_weights(bool) {
  CheckOutcome out;
  for (int t1 = 1; t1 <= 8; ++t1) {
    std::uint64_t sum = 0;
    for (const BlockConfig& cfg : enumerate_block_configs(t1)) sum += cfg.weight;
    if (sum != pattern_count(t1)) {
      out.fail(fmt("t1=%d: weights sum to %llu, expected 4^%d", t1,
                   static_cast<unsigned long long>(sum), t1));
    }
  }
  if (out.pass) out.detail = "multinomial weights sum to 4^T1 for T1 <= 8";
  return out;
}

CheckOutcome check_policy_dominance_exhaustive(bool quick) {
  CheckOutcome out;
  const ErasureProbs eps = default_eps();
  for (int t = 2; t <= (quick ? 4 : 6); ++t) {
    const DeadlineConfig config(1.0, 1.0, t, t);
    const CostToGoTable table = build_cost_table(t, 1, 1, eps);
    double success_greedy = 0.0;
    double success_current = 0.0;
    double success_past = 0.0;
    for (const ErasurePattern& pattern : enumerate_patterns(t)) {
      const double prob = pattern_probability(pattern, eps);
      if (greedy_full_csi(pattern, config).met_deadlines) success_greedy += prob;
      if (current_csi_policy(pattern, config, table).met_deadlines) success_current += prob;
      if (past_csi_policy(pattern, config, eps, table).met_deadlines) success_past += prob;
    }
    if (!(success_greedy >= success_current - 1e-12 &&
          success_current >= success_past - 1e-12)) {
      out.fail(fmt("T=%d: success ordering violated (%.6g, %.6g, %.6g)", t, success_greedy,
                   success_current, success_past));
    }
  }
  if (out.pass) out.detail = "greedy >= current CSI >= past CSI, exhaustively";
  return out;
}

CheckOutcome check_schedule_validity(bool quick) {
  CheckOutcome out;
  std::mt19937_64 rng = make_rng(424242);
  const int cases = quick ? 100 : 400;
  for (int i = 0; i < cases && out.pass; ++i) {
    const int t1 = 1 + static_cast<int>(rng() % 4);
    const int n = 1 + static_cast<int>(rng() % 3);
    const ErasureProbs eps = default_eps();
    const double l1 = 0.25 * static_cast<double>(rng() % static_cast<std::uint64_t>(4 * t1 + 1));
    const double l2 =
        0.25 * static_cast<double>(rng() % static_cast<std::uint64_t>(4 * t1 * n + 1));
    const DeadlineConfig config(l1, l2, t1, t1 * n);
    const ErasurePattern pattern = sample_pattern(eps, config.frame_length(), rng);

    std::vector<FrameOutcome> outcomes;
    outcomes.push_back(greedy_full_csi(pattern, config));
    if (n == 1) {
      // Whole-packet policies need integer rates and equal deadlines.
      const DeadlineConfig whole(std::floor(l1), std::floor(l2), t1, t1);
      const CostToGoTable table =
          build_cost_table(t1, std::max(1, static_cast<int>(std::floor(l1))),
                           std::max(1, static_cast<int>(std::floor(l2))), eps);
      outcomes.push_back(current_csi_policy(pattern, whole, table));
      outcomes.push_back(past_csi_policy(pattern, whole, eps, table));
    }
    for (const FrameOutcome& o : outcomes) {
      const ErasurePattern& pat = pattern;
      double sum1 = 0.0;
      double sum2 = 0.0;
      for (int t = 0; t < o.schedule.length(); ++t) {
        const auto& row = o.schedule.alloc[static_cast<std::size_t>(t)];
        if (row[0] + row[1] > 1.0 + 1e-9) out.fail(fmt("case %d: slot %d oversubscribed", i, t));
        if (row[0] > 0.0 && !received_by_user1(pat.slots[static_cast<std::size_t>(t)])) {
          out.fail(fmt("case %d: allocation on a slot erased for user 1", i));
        }
        if (row[1] > 0.0 && !received_by_user2(pat.slots[static_cast<std::size_t>(t)])) {
          out.fail(fmt("case %d: allocation on a slot erased for user 2", i));
        }
        sum1 += row[0];
        sum2 += row[1];
      }
      double delivered1_total = 0.0;
      for (double d : o.delivered1) delivered1_total += d;
      if (std::abs(sum1 - delivered1_total) > 1e-9 || std::abs(sum2 - o.delivered2) > 1e-9) {
        out.fail(fmt("case %d: delivered amounts disagree with the schedule sums", i));
      }
    }
  }
  if (out.pass) out.detail = fmt("%d randomized frames: rows within capacity, no wasted slots", cases);
  return out;
}

CheckOutcome check_mc_determinism(bool) {
  CheckOutcome out;
  const DeadlineConfig config(1.0, 1.0, 5, 5);
  const ErasureProbs eps = default_eps();
  for (const PolicyId policy : {PolicyId::GreedyFull, PolicyId::CurrentCsi, PolicyId::PastCsi}) {
    const OutageResult a = monte_carlo_outage(policy, config, eps, 30000, 99);
    const OutageResult b = monte_carlo_outage(policy, config, eps, 30000, 99);
    if (a.value != b.value) out.fail(fmt("%s: same seed gave different estimates", policy_name(policy)));
  }
  if (out.pass) out.detail = "same seed reproduces identical estimates";
  return out;
}

CheckOutcome check_kernel_equivalence(bool) {
  CheckOutcome out;
  const auto kernels_list = kernels::available_kernels();
  std::mt19937_64 rng = make_rng(31337);
  for (const std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{5}, std::size_t{128},
                              std::size_t{1001}}) {
    std::vector<double> w(n);
    std::vector<double> a(n);
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = uniform01(rng);
      a[i] = static_cast<double>(rng() % 7);
      q[i] = static_cast<double>(rng() % 9) - 2.0;
    }
    for (const double ta : {-1.0, 0.0, 2.0, 3.0 - kRateTol}) {
      for (const double tb : {-1.5, 0.0, 1.0, 4.0 - kRateTol}) {
        const double reference = kernels::masked_sum_scalar(w.data(), a.data(), q.data(), n, ta, tb);
        for (const auto& k : kernels_list) {
          const double got = k.fn(w.data(), a.data(), q.data(), n, ta, tb);
          if (std::abs(got - reference) > 1e-13 * std::max(1.0, std::abs(reference))) {
            out.fail(fmt("kernel %s: n=%zu got %.17g expected %.17g", k.name, n, got, reference));
          }
        }
      }
    }
  }
  if (out.pass) out.detail = fmt("%zu kernel variants agree with the scalar reference",
                                 kernels_list.size());
  return out;
}

struct Check {
  const char* name;
  CheckOutcome (*fn)(bool quick);
  bool acceptance;
};

const Check kChecks[] = {
    {"1-oracle-equivalence", check_oracle_equivalence, true},
    {"2-greedy-achieves-cutset", check_greedy_matches_cutset, true},
    {"3-feasibility-forms-agree", check_feasibility_forms_agree, true},
    {"4-saturation-at-capacity", check_saturation_at_frame_capacity, true},
    {"5-monotonicity-and-steps", check_monotonicity_and_steps, true},
    {"6-monte-carlo-consistency", check_monte_carlo_consistency, true},
    {"7-policy-ordering", check_policy_ordering, true},
    {"8-cost-table", check_cost_table, true},
    {"9-rate-solver", check_rate_solver, true},
    {"inv-pattern-prob-normalization", check_pattern_probability_normalization, false},
    {"inv-block-config-weights", check_block_config_weights, false},
    {"inv-policy-dominance", check_policy_dominance_exhaustive, false},
    {"inv-schedule-validity", check_schedule_validity, false},
    {"inv-mc-determinism", check_mc_determinism, false},
    {"inv-kernel-equivalence", check_kernel_equivalence, false},
};

std::vector<CheckResult> run_checks(bool quick, bool acceptance_only) {
  std::vector<CheckResult> results;
  for (const Check& check : kChecks) {
    if (acceptance_only && !check.acceptance) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult result;
    result.name = check.name;
    try {
      const CheckOutcome outcome = check.fn(quick);
      result.pass = outcome.pass;
      result.detail = outcome.detail;
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace

std::vector<CheckResult> run_acceptance() { return run_checks(false, true); }

std::vector<CheckResult> run_validation(bool quick) { return run_checks(quick, false); }

}  // namespace dbc
