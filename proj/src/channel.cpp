#include "deadline_bcast/channel.hpp"

#include <cmath>
#include <sstream>

namespace dbc {

namespace {

constexpr const char* kSymbolNames[4] = {"00", "01", "10", "11"};

// Sum deviations up to this much are treated as config round-off and
// renormalized; anything larger is rejected.
constexpr double kNormalizationTol = 1e-9;

}  // namespace

const char* symbol_name(Symbol s) { return kSymbolNames[static_cast<std::size_t>(s)]; }

Symbol symbol_from_name(std::string_view name) {
  for (std::size_t v = 0; v < 4; ++v) {
    if (name == kSymbolNames[v]) return static_cast<Symbol>(v);
  }
  throw std::invalid_argument("pattern: bad symbol '" + std::string(name) +
                              "' (expected 00, 01, 10 or 11)");
}

ErasureProbs::ErasureProbs(double e00, double e01, double e10, double e11)
    : p_{e00, e01, e10, e11} {
  const char* names[4] = {"eps00", "eps01", "eps10", "eps11"};
  for (std::size_t v = 0; v < 4; ++v) {
    if (!(p_[v] >= 0.0 && p_[v] <= 1.0 + kNormalizationTol) || std::isnan(p_[v])) {
      throw std::invalid_argument(std::string(names[v]) + ": must be in [0, 1]");
    }
  }
  const double sum = p_[0] + p_[1] + p_[2] + p_[3];
  if (std::abs(sum - 1.0) > kNormalizationTol) {
    std::ostringstream os;
    os << "eps: components sum to " << sum << ", expected 1 within " << kNormalizationTol;
    throw std::invalid_argument(os.str());
  }
  for (double& p : p_) p /= sum;
}

ErasureProbs ErasureProbs::from_iid_erasure(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p: must be in [0, 1]");
  return ErasureProbs(p * p, p * (1.0 - p), (1.0 - p) * p, (1.0 - p) * (1.0 - p));
}

ErasurePattern ErasurePattern::parse(std::string_view text) {
  ErasurePattern pattern;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                            : comma - pos);
    pattern.slots.push_back(symbol_from_name(tok));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return pattern;
}

std::string ErasurePattern::str() const {
  std::string out;
  for (int t = 0; t < length(); ++t) {
    if (t) out += ',';
    out += symbol_name(slots[t]);
  }
  return out;
}

DeadlineConfig::DeadlineConfig(double l1, double l2, int t1_, int t2_)
    : lambda1(l1), lambda2(l2), t1(t1_), t2(t2_) {
  if (t1 < 1) throw std::invalid_argument("t1: must be >= 1");
  if (t2 < 1) throw std::invalid_argument("t2: must be >= 1");
  if (t2 % t1 != 0) throw std::invalid_argument("t2: must be a multiple of t1");
  if (!(lambda1 >= 0.0) || std::isnan(lambda1))
    throw std::invalid_argument("lambda1: must be >= 0");
  if (!(lambda2 >= 0.0) || std::isnan(lambda2))
    throw std::invalid_argument("lambda2: must be >= 0");
}

double pattern_probability(const ErasurePattern& pattern, const ErasureProbs& eps) {
  int counts[4] = {0, 0, 0, 0};
  for (Symbol s : pattern.slots) ++counts[static_cast<std::size_t>(s)];
  double p = 1.0;
  for (std::size_t v = 0; v < 4; ++v) {
    for (int i = 0; i < counts[v]; ++i) p *= eps[static_cast<Symbol>(v)];
  }
  return p;
}

std::vector<BlockStats> block_stats(const ErasurePattern& pattern, int t1) {
  if (t1 < 1) throw std::invalid_argument("t1: must be >= 1");
  if (pattern.length() % t1 != 0) {
    throw std::invalid_argument("pattern: length " + std::to_string(pattern.length()) +
                                " is not a multiple of t1 = " + std::to_string(t1));
  }
  const int n = pattern.length() / t1;
  std::vector<BlockStats> stats(n);
  for (int k = 0; k < n; ++k) {
    BlockStats& b = stats[k];
    for (int i = 0; i < t1; ++i) {
      switch (pattern.slots[k * t1 + i]) {
        case Symbol::e00: ++b.n00; break;
        case Symbol::e01: ++b.n01; break;
        case Symbol::e10: ++b.n10; break;
        case Symbol::e11: ++b.n11; break;
      }
    }
  }
  return stats;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  // One splitmix step per field keeps distinct (seed, stream) pairs apart.
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Symbol sample_symbol(const ErasureProbs& eps, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  double cdf = 0.0;
  for (std::size_t v = 0; v < 3; ++v) {
    cdf += eps[static_cast<Symbol>(v)];
    if (u < cdf) return static_cast<Symbol>(v);
  }
  return Symbol::e11;  // catches the residual mass
}

ErasurePattern sample_pattern(const ErasureProbs& eps, int t, std::mt19937_64& rng) {
  if (t < 1) throw std::invalid_argument("t: must be >= 1");
  ErasurePattern pattern;
  pattern.slots.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) pattern.slots.push_back(sample_symbol(eps, rng));
  return pattern;
}

std::uint64_t pattern_count(int t) { return std::uint64_t{1} << (2 * t); }

void pattern_at(std::uint64_t index, int t, std::span<Symbol> out) {
  for (int slot = 0; slot < t; ++slot) {
    out[static_cast<std::size_t>(slot)] =
        static_cast<Symbol>((index >> (2 * (t - 1 - slot))) & 3u);
  }
}

ErasurePattern pattern_at(std::uint64_t index, int t) {
  ErasurePattern pattern;
  pattern.slots.resize(static_cast<std::size_t>(t));
  pattern_at(index, t, pattern.slots);
  return pattern;
}

PatternRange::PatternRange(int t) : t_(t), count_(pattern_count(t)) {}

PatternRange enumerate_patterns(int t) {
  if (t < 1) throw std::invalid_argument("t: must be >= 1");
  if (t > kMaxEnumerationFrame) {
    throw guard_error("enumerate_patterns: t = " + std::to_string(t) + " exceeds the 4^" +
                      std::to_string(kMaxEnumerationFrame) + " enumeration guard");
  }
  return PatternRange(t);
}

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

}  // namespace

std::vector<BlockConfig> enumerate_block_configs(int t1) {
  if (t1 < 1) throw std::invalid_argument("t1: must be >= 1");
  if (t1 > 30) throw guard_error("enumerate_block_configs: t1 > 30 overflows exact weights");
  std::vector<BlockConfig> configs;
  configs.reserve(static_cast<std::size_t>(binomial(t1 + 3, 3)));
  for (int n00 = 0; n00 <= t1; ++n00) {
    for (int n01 = 0; n01 <= t1 - n00; ++n01) {
      for (int n10 = 0; n10 <= t1 - n00 - n01; ++n10) {
        const int n11 = t1 - n00 - n01 - n10;
        const std::uint64_t weight = binomial(t1, n00) * binomial(t1 - n00, n01) *
                                     binomial(t1 - n00 - n01, n10);
        configs.push_back({BlockStats{n00, n01, n10, n11}, weight});
      }
    }
  }
  return configs;
}

}  // namespace dbc
