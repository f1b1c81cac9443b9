#pragma once
// Scheduling policies over one frame: the optimal greedy policy with full
// (non-causal) CSI, the current-CSI comparison policy, and the past-CSI
// policy that only sees end-of-slot feedback. All three are pure functions
// of their inputs and return a per-frame outcome with a slot trace.

#include <string>
#include <string_view>
#include <vector>

#include "deadline_bcast/channel.hpp"
#include "deadline_bcast/cost_table.hpp"

namespace dbc {

// What the transmitter knows when it schedules slot t.
enum class CsiMode { Full, Current, Past };

enum class PolicyId { GreedyFull, CurrentCsi, PastCsi };

PolicyId policy_from_name(std::string_view name);  // throws std::invalid_argument
const char* policy_name(PolicyId id);
CsiMode policy_csi_mode(PolicyId id);

enum class SlotAction { Serve1, Serve2, Split, Idle };

const char* action_name(SlotAction a);

// One line of the per-slot decision log. Amounts are what the policy
// attempted to push through the slot; for past CSI an attempt on an erased
// slot delivers nothing (visible from the state column).
struct TraceEntry {
  int slot = 0;  // 1-based
  Symbol state = Symbol::e00;
  SlotAction action = SlotAction::Idle;
  double amt1 = 0.0;
  double amt2 = 0.0;
};

// alloc[t][k]: delivered fraction of slot t carrying user-(k+1) data. Row
// sums never exceed one slot capacity and erased slots carry nothing, so
// the delivered totals are plain column sums.
struct Schedule {
  std::vector<std::array<double, 2>> alloc;

  int length() const { return static_cast<int>(alloc.size()); }
  double row_sum(int t) const { return alloc[t][0] + alloc[t][1]; }
  double delivered(int user) const;  // column sum
};

struct FrameOutcome {
  std::vector<double> delivered1;  // per user-1 sub-frame, N entries
  double delivered2 = 0.0;
  bool met_deadlines = false;
  Schedule schedule;
  std::vector<TraceEntry> trace;
};

// Greedy policy with a-priori knowledge of the whole frame. Per block:
// 10-slots go to user 1 and 01-slots to user 2 (capped at residual need),
// then 11-slots serve user 1 first and user 2 takes the leftover capacity.
// Meets the deadlines exactly when the cut-set test accepts the pattern.
FrameOutcome greedy_full_csi(const ErasurePattern& pattern, const DeadlineConfig& config);

// Current-CSI policy: sees slot t's state only at slot t, picks the user
// whose post-transmission cost-to-go is smaller, moves whole packets.
// Requires T1 == T2 and integer arrival rates.
FrameOutcome current_csi_policy(const ErasurePattern& pattern, const DeadlineConfig& config,
                                const CostToGoTable& cost);

// Past-CSI policy: never sees the current state; weighs each candidate by
// the erasure probabilities and learns success only from end-of-slot
// feedback. A failed packet stays in the residual and is retransmitted.
FrameOutcome past_csi_policy(const ErasurePattern& pattern, const DeadlineConfig& config,
                             const ErasureProbs& eps, const CostToGoTable& cost);

std::string format_trace_line(const TraceEntry& entry);
std::string format_trace(const FrameOutcome& outcome);  // one line per slot

}  // namespace dbc
