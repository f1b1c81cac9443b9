#include "deadline_bcast/outage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <nlohmann/json.hpp>

#include "deadline_bcast/cutset.hpp"
#include "deadline_bcast/kernels.hpp"
#include "deadline_bcast/parallel.hpp"
#include "deadline_bcast/version.hpp"

namespace dbc {

const char* method_name(OutageMethod m) {
  switch (m) {
    case OutageMethod::Exact: return "exact";
    case OutageMethod::BruteForce: return "bruteforce";
    case OutageMethod::MonteCarlo: return "mc";
  }
  return "?";
}

OutageMethod method_from_name(std::string_view name) {
  if (name == "exact") return OutageMethod::Exact;
  if (name == "bruteforce") return OutageMethod::BruteForce;
  if (name == "mc") return OutageMethod::MonteCarlo;
  throw std::invalid_argument("method: unknown value '" + std::string(name) +
                              "' (exact, bruteforce, mc)");
}

namespace {

constexpr int kExactMaxT1 = 12;
constexpr int kExactMaxBlocks = 3;
constexpr int kBruteForceMaxFrame = 10;
constexpr int kEqualDeadlineMaxT = 128;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Per-block configuration tables in SoA form for the kernel: weighted
// probability mass, user-1 capacity a, and q = b - (lambda1 - n10)^+, the
// block's user-2 capacity once user 1 is served.
struct ConfigArrays {
  std::vector<double> mass;
  std::vector<double> a;
  std::vector<double> q;
  std::size_t size() const { return mass.size(); }
};

std::array<std::vector<double>, 4> power_tables(const ErasureProbs& eps, int t) {
  std::array<std::vector<double>, 4> pw;
  for (std::size_t v = 0; v < 4; ++v) {
    pw[v].resize(static_cast<std::size_t>(t) + 1);
    pw[v][0] = 1.0;
    for (int n = 1; n <= t; ++n) pw[v][static_cast<std::size_t>(n)] = pw[v][n - 1] * eps[static_cast<Symbol>(v)];
  }
  return pw;
}

ConfigArrays build_config_arrays(int t1, const ErasureProbs& eps, double lambda1) {
  const auto pw = power_tables(eps, t1);
  ConfigArrays arr;
  for (const BlockConfig& cfg : enumerate_block_configs(t1)) {
    const BlockStats& s = cfg.stats;
    const double prob = pw[0][static_cast<std::size_t>(s.n00)] * pw[1][static_cast<std::size_t>(s.n01)] *
                        pw[2][static_cast<std::size_t>(s.n10)] * pw[3][static_cast<std::size_t>(s.n11)];
    arr.mass.push_back(static_cast<double>(cfg.weight) * prob);
    arr.a.push_back(static_cast<double>(s.n10 + s.n11));
    arr.q.push_back(static_cast<double>(s.n01 + s.n11) - std::max(0.0, lambda1 - s.n10));
  }
  return arr;
}

}  // namespace

OutageResult exact_outage(const DeadlineConfig& config, const ErasureProbs& eps) {
  if (config.t1 > kExactMaxT1) {
    throw guard_error("exact_outage: t1 = " + std::to_string(config.t1) + " exceeds " +
                      std::to_string(kExactMaxT1));
  }
  const int n_blocks = config.blocks();
  if (n_blocks > kExactMaxBlocks) {
    throw guard_error("exact_outage: N = " + std::to_string(n_blocks) + " blocks exceeds " +
                      std::to_string(kExactMaxBlocks));
  }

  const double lambda1 = config.lambda1;
  const double lambda2 = config.lambda2;
  const ConfigArrays arr = build_config_arrays(config.t1, eps, lambda1);
  const std::size_t m = arr.size();
  const double threshold_a = lambda1 - kRateTol;
  const auto kernel = kernels::masked_sum();

  // Success mass; outage is its complement, so an everywhere-infeasible rate
  // pair yields exactly 1.
  NeumaierSum success;
  switch (n_blocks) {
    case 1:
      success.add(kernel(arr.mass.data(), arr.a.data(), arr.q.data(), m, threshold_a,
                         lambda2 - kRateTol));
      break;
    case 2:
      for (std::size_t i = 0; i < m; ++i) {
        if (arr.a[i] < threshold_a) continue;  // lambda1 already infeasible
        success.add(arr.mass[i] * kernel(arr.mass.data(), arr.a.data(), arr.q.data(), m,
                                         threshold_a, lambda2 - kRateTol - arr.q[i]));
      }
      break;
    case 3: {
      // Outer pairs are chunked so the partial sums merge in a fixed order
      // regardless of the worker count.
      const std::uint64_t chunk = 8;
      const std::uint64_t chunks = (m + chunk - 1) / chunk;
      std::vector<double> partial(chunks, 0.0);
      parallel_chunks(m, chunk, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
        NeumaierSum local;
        for (std::size_t i = begin; i < end; ++i) {
          if (arr.a[i] < threshold_a) continue;
          for (std::size_t j = 0; j < m; ++j) {
            if (arr.a[j] < threshold_a) continue;
            local.add(arr.mass[i] * arr.mass[j] *
                      kernel(arr.mass.data(), arr.a.data(), arr.q.data(), m, threshold_a,
                             lambda2 - kRateTol - arr.q[i] - arr.q[j]));
          }
        }
        partial[c] = local.value();
      });
      for (double p : partial) success.add(p);
      break;
    }
    default:
      break;
  }

  OutageResult result;
  result.method = OutageMethod::Exact;
  result.value = clamp01(1.0 - success.value());
  return result;
}

OutageResult brute_force_outage(const DeadlineConfig& config, const ErasureProbs& eps,
                                BruteForceMode mode) {
  const int frame = config.frame_length();
  if (frame > kBruteForceMaxFrame) {
    throw guard_error("brute_force_outage: T = " + std::to_string(frame) + " exceeds " +
                      std::to_string(kBruteForceMaxFrame));
  }
  const auto pw = power_tables(eps, frame);
  const int t1 = config.t1;
  const int n_blocks = config.blocks();

  NeumaierSum success;
  std::array<Symbol, kBruteForceMaxFrame> slots{};
  std::vector<BlockStats> stats(static_cast<std::size_t>(n_blocks));
  const std::uint64_t total = pattern_count(frame);
  for (std::uint64_t index = 0; index < total; ++index) {
    pattern_at(index, frame, std::span<Symbol>(slots.data(), static_cast<std::size_t>(frame)));
    int counts[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < stats.size(); ++k) {
      BlockStats b{};
      for (int i = 0; i < t1; ++i) {
        const auto v = static_cast<std::size_t>(slots[static_cast<std::size_t>(k) *
                                                          static_cast<std::size_t>(t1) +
                                                      static_cast<std::size_t>(i)]);
        ++counts[v];
        switch (static_cast<Symbol>(v)) {
          case Symbol::e00: ++b.n00; break;
          case Symbol::e01: ++b.n01; break;
          case Symbol::e10: ++b.n10; break;
          case Symbol::e11: ++b.n11; break;
        }
      }
      stats[k] = b;
    }
    const bool feasible = is_feasible(stats, config.lambda1, config.lambda2);
    bool met = feasible;
    if (mode == BruteForceMode::GreedyStrict) {
      ErasurePattern pattern;
      pattern.slots.assign(slots.begin(), slots.begin() + frame);
      met = greedy_full_csi(pattern, config).met_deadlines;
      if (met != feasible) {
        throw std::logic_error("brute_force_outage: greedy outcome disagrees with cut-set test "
                               "on pattern " + pattern.str());
      }
    }
    if (met) {
      success.add(pw[0][static_cast<std::size_t>(counts[0])] * pw[1][static_cast<std::size_t>(counts[1])] *
                  pw[2][static_cast<std::size_t>(counts[2])] * pw[3][static_cast<std::size_t>(counts[3])]);
    }
  }

  OutageResult result;
  result.method = OutageMethod::BruteForce;
  result.value = clamp01(1.0 - success.value());
  return result;
}

double equal_deadline_outage(double l1, double l2, int t, const ErasureProbs& eps) {
  if (t < 0) throw std::invalid_argument("t: must be >= 0");
  if (t > kEqualDeadlineMaxT) {
    throw guard_error("equal_deadline_outage: t = " + std::to_string(t) + " exceeds " +
                      std::to_string(kEqualDeadlineMaxT));
  }
  if (!(l1 >= 0.0) || !(l2 >= 0.0)) throw std::invalid_argument("lambda: must be >= 0");
  if (t == 0) return l1 + l2 > 0.0 ? 1.0 : 0.0;

  const auto pw = power_tables(eps, t);
  NeumaierSum success;
  for (int n00 = 0; n00 <= t; ++n00) {
    // Double-valued binomial ladder: weight = C(t,n00) C(t-n00,n01) C(rest,n10).
    for (int n01 = 0; n01 <= t - n00; ++n01) {
      for (int n10 = 0; n10 <= t - n00 - n01; ++n10) {
        const int n11 = t - n00 - n01 - n10;
        const BlockStats stats{n00, n01, n10, n11};
        if (!is_feasible(std::span<const BlockStats>(&stats, 1), l1, l2)) continue;
        double weight = 1.0;
        {
          // multinomial via factorial-free products to stay in double range
          auto mul_binom = [&weight](int n, int k) {
            for (int i = 1; i <= k; ++i) weight = weight * (n - k + i) / i;
          };
          mul_binom(t, n00);
          mul_binom(t - n00, n01);
          mul_binom(t - n00 - n01, n10);
        }
        success.add(weight * pw[0][static_cast<std::size_t>(n00)] *
                    pw[1][static_cast<std::size_t>(n01)] * pw[2][static_cast<std::size_t>(n10)] *
                    pw[3][static_cast<std::size_t>(n11)]);
      }
    }
  }
  return clamp01(1.0 - success.value());
}

CostToGoTable build_cost_table(int tmax, int l1max, int l2max, const ErasureProbs& eps) {
  if (tmax < 0 || l1max < 0 || l2max < 0) {
    throw std::invalid_argument("cost table bounds: must be >= 0");
  }
  std::vector<double> values(static_cast<std::size_t>(l1max + 1) *
                             static_cast<std::size_t>(l2max + 1) *
                             static_cast<std::size_t>(tmax + 1));
  std::size_t idx = 0;
  for (int l1 = 0; l1 <= l1max; ++l1) {
    for (int l2 = 0; l2 <= l2max; ++l2) {
      for (int t = 0; t <= tmax; ++t) {
        values[idx++] = equal_deadline_outage(l1, l2, t, eps);
      }
    }
  }
  return CostToGoTable(l1max, l2max, tmax, std::move(values));
}

OutageResult monte_carlo_outage(PolicyId policy, const DeadlineConfig& config,
                                const ErasureProbs& eps, std::uint64_t trials,
                                std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials: must be >= 1");
  const int frame = config.frame_length();

  CostToGoTable cost(0, 0, 0, {0.0});
  if (policy != PolicyId::GreedyFull) {
    // Validate the causal preconditions here: a throw inside a sampling
    // worker would not propagate.
    if (config.t1 != config.t2) {
      throw std::invalid_argument("t1: causal policies need equal deadlines (T1 == T2)");
    }
    const int l1 = static_cast<int>(std::round(config.lambda1));
    const int l2 = static_cast<int>(std::round(config.lambda2));
    if (std::abs(config.lambda1 - l1) > 1e-9 || std::abs(config.lambda2 - l2) > 1e-9) {
      throw std::invalid_argument("lambda: whole-packet policies need integer rates");
    }
    cost = build_cost_table(frame, std::max(l1, 1), std::max(l2, 1), eps);
  }

  constexpr std::uint64_t kChunk = 8192;  // fixed sub-seed granularity
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> failures(chunks, 0);
  parallel_chunks(trials, kChunk, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
    std::mt19937_64 rng = make_rng(seed, c);
    ErasurePattern pattern;
    pattern.slots.resize(static_cast<std::size_t>(frame));
    std::uint64_t failed = 0;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      for (int t = 0; t < frame; ++t) {
        pattern.slots[static_cast<std::size_t>(t)] = sample_symbol(eps, rng);
      }
      FrameOutcome outcome;
      switch (policy) {
        case PolicyId::GreedyFull: outcome = greedy_full_csi(pattern, config); break;
        case PolicyId::CurrentCsi: outcome = current_csi_policy(pattern, config, cost); break;
        case PolicyId::PastCsi: outcome = past_csi_policy(pattern, config, eps, cost); break;
      }
      if (!outcome.met_deadlines) ++failed;
    }
    failures[c] = failed;
  });

  const std::uint64_t failed = std::accumulate(failures.begin(), failures.end(), std::uint64_t{0});
  OutageResult result;
  result.method = OutageMethod::MonteCarlo;
  result.trials = trials;
  result.seed = seed;
  result.value = static_cast<double>(failed) / static_cast<double>(trials);
  result.stderr_est = std::sqrt(result.value * (1.0 - result.value) / static_cast<double>(trials));
  return result;
}

RateSolution rate_solver(const ErasureProbs& eps, int t1, int t2, double p, double m) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("p: must be in [0, 1)");
  if (!(m >= 0.0)) throw std::invalid_argument("m: must be >= 0");
  DeadlineConfig probe(0.0, 0.0, t1, t2);  // validates the deadline pair
  const int n_blocks = probe.blocks();

  // Ray cap: lambda1 <= T1 and lambda2 <= T2 bound every feasible pattern.
  double cap = static_cast<double>(t2);
  if (m > 0.0) cap = std::min(cap, static_cast<double>(t1) / m);

  std::vector<double> breakpoints{0.0};
  auto add_family = [&](double denom) {
    for (int i = 1; static_cast<double>(i) / denom <= cap + kRateTol; ++i) {
      breakpoints.push_back(static_cast<double>(i) / denom);
    }
  };
  add_family(1.0);          // lambda2 integer crossings
  if (m > 0.0) add_family(m);  // lambda1 = m*lambda2 integer crossings
  for (int k = 1; k <= n_blocks; ++k) add_family(static_cast<double>(k) * m + 1.0);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end(),
                                [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                    breakpoints.end());

  auto outage_at = [&](double lambda2) {
    return exact_outage(DeadlineConfig(m * lambda2, lambda2, t1, t2), eps).value;
  };

  // The outage is nondecreasing along the ray, so the last acceptable
  // breakpoint is found by binary search.
  std::size_t lo = 0;
  std::size_t hi = breakpoints.size();  // first index known unacceptable
  while (lo + 1 < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (outage_at(breakpoints[mid]) <= p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  RateSolution sol;
  sol.lambda2 = breakpoints[lo];
  sol.lambda1 = m * sol.lambda2;
  sol.pout = outage_at(sol.lambda2);
  sol.zero_rate = lo == 0 && breakpoints.size() > 1 && outage_at(breakpoints[1]) > p;
  return sol;
}

std::string outage_to_json(const OutageResult& result, const DeadlineConfig& config,
                           const ErasureProbs& eps) {
  nlohmann::ordered_json j;
  j["value"] = result.value;
  j["method"] = method_name(result.method);
  if (result.method == OutageMethod::MonteCarlo) {
    j["trials"] = result.trials;
    j["seed"] = result.seed;
    j["stderr"] = result.stderr_est;
    j["generator"] = kGeneratorName;
  }
  j["config"] = {{"t1", config.t1},
                 {"t2", config.t2},
                 {"lambda1", config.lambda1},
                 {"lambda2", config.lambda2}};
  j["eps"] = {{"eps00", eps.eps00()},
              {"eps01", eps.eps01()},
              {"eps10", eps.eps10()},
              {"eps11", eps.eps11()}};
  return j.dump();
}

}  // namespace dbc
