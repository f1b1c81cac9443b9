#pragma once
// Memoryless two-user erasure broadcast channel: per-slot reception symbols,
// pattern probabilities, per-block symbol counts, seeded sampling and
// exhaustive enumeration.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deadline_bcast/errors.hpp"

namespace dbc {

// Per-slot reception symbol. High bit: user 1 received, low bit: user 2
// received, so "e10" reads "user 1 got the packet, user 2 did not".
enum class Symbol : std::uint8_t { e00 = 0, e01 = 1, e10 = 2, e11 = 3 };

constexpr bool received_by_user1(Symbol s) {
  return (static_cast<unsigned>(s) & 2u) != 0;
}
constexpr bool received_by_user2(Symbol s) {
  return (static_cast<unsigned>(s) & 1u) != 0;
}
constexpr bool received_by(Symbol s, int user) {
  return user == 1 ? received_by_user1(s) : received_by_user2(s);
}

const char* symbol_name(Symbol s);
Symbol symbol_from_name(std::string_view name);  // throws std::invalid_argument

// Joint per-slot erasure probabilities (eps00, eps01, eps10, eps11).
// Inputs whose sum deviates from one by at most 1e-9 are renormalized;
// larger deviations are rejected as user error.
class ErasureProbs {
 public:
  ErasureProbs(double e00, double e01, double e10, double e11);

  double operator[](Symbol s) const { return p_[static_cast<std::size_t>(s)]; }
  double eps00() const { return p_[0]; }
  double eps01() const { return p_[1]; }
  double eps10() const { return p_[2]; }
  double eps11() const { return p_[3]; }

  // Marginal per-slot success probabilities.
  double user1_success() const { return p_[2] + p_[3]; }
  double user2_success() const { return p_[1] + p_[3]; }

  // Independent per-user erasure probability p for both users.
  static ErasureProbs from_iid_erasure(double p);

 private:
  std::array<double, 4> p_;
};

// Realized reception indicators for one frame, one symbol per slot.
struct ErasurePattern {
  std::vector<Symbol> slots;

  int length() const { return static_cast<int>(slots.size()); }

  static ErasurePattern parse(std::string_view text);  // "10,11,00"
  std::string str() const;
};

// Arrival rates (fractions of slot capacity) and hard deadlines in slots.
// T2 must be a multiple of T1; the frame is T = T2 slots and splits into
// N = T2/T1 blocks, which coincide with user 1's sub-frames.
struct DeadlineConfig {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  int t1 = 1;
  int t2 = 1;

  DeadlineConfig(double lambda1, double lambda2, int t1, int t2);

  int blocks() const { return t2 / t1; }        // N
  int frame_length() const { return t2; }       // T
};

// Symbol counts inside one block of T1 slots.
struct BlockStats {
  int n00 = 0;
  int n01 = 0;
  int n10 = 0;
  int n11 = 0;

  int total() const { return n00 + n01 + n10 + n11; }
  bool operator==(const BlockStats&) const = default;
};

// Probability of a realized pattern: product over symbols of eps^count.
double pattern_probability(const ErasurePattern& pattern, const ErasureProbs& eps);

// Per-block symbol counts; throws std::invalid_argument when t1 does not
// divide the pattern length.
std::vector<BlockStats> block_stats(const ErasurePattern& pattern, int t1);

// ---- sampling ----------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x);

// Engine for sub-stream `stream` of `seed`; disjoint streams give the
// deterministic parallel Monte Carlo decomposition.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);

double uniform01(std::mt19937_64& rng);  // in [0, 1)

Symbol sample_symbol(const ErasureProbs& eps, std::mt19937_64& rng);
ErasurePattern sample_pattern(const ErasureProbs& eps, int t, std::mt19937_64& rng);

// ---- enumeration -------------------------------------------------------

// Exhaustive pattern enumeration is capped at 4^12 patterns.
inline constexpr int kMaxEnumerationFrame = 12;

std::uint64_t pattern_count(int t);  // 4^t

// Pattern with the given lexicographic rank (00 < 01 < 10 < 11, slot 1 most
// significant).
ErasurePattern pattern_at(std::uint64_t index, int t);
void pattern_at(std::uint64_t index, int t, std::span<Symbol> out);

// Range over all 4^T patterns in lexicographic symbol order.
class PatternRange {
 public:
  class iterator {
   public:
    using value_type = ErasurePattern;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator(std::uint64_t index, int t) : index_(index), t_(t) {}
    ErasurePattern operator*() const { return pattern_at(index_, t_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++index_;
      return old;
    }
    bool operator==(const iterator& other) const { return index_ == other.index_; }

   private:
    std::uint64_t index_;
    int t_;
  };

  explicit PatternRange(int t);
  iterator begin() const { return iterator(0, t_); }
  iterator end() const { return iterator(count_, t_); }
  std::uint64_t size() const { return count_; }

 private:
  int t_;
  std::uint64_t count_;
};

// Throws guard_error for t > kMaxEnumerationFrame.
PatternRange enumerate_patterns(int t);

// One composition of T1 slots into the four symbol counts together with its
// multinomial coefficient T1! / (n00! n01! n10! n11!).
struct BlockConfig {
  BlockStats stats;
  std::uint64_t weight = 0;
};

// All C(t1+3, 3) compositions; weights sum to 4^t1. Exact integer weights
// need t1 <= 30.
std::vector<BlockConfig> enumerate_block_configs(int t1);

}  // namespace dbc
