#include "deadline_bcast/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "deadline_bcast/cutset.hpp"

namespace dbc {

PolicyId policy_from_name(std::string_view name) {
  if (name == "greedy_full") return PolicyId::GreedyFull;
  if (name == "current_csi") return PolicyId::CurrentCsi;
  if (name == "past_csi") return PolicyId::PastCsi;
  throw std::invalid_argument("policy: unknown id '" + std::string(name) +
                              "' (greedy_full, current_csi, past_csi)");
}

const char* policy_name(PolicyId id) {
  switch (id) {
    case PolicyId::GreedyFull: return "greedy_full";
    case PolicyId::CurrentCsi: return "current_csi";
    case PolicyId::PastCsi: return "past_csi";
  }
  return "?";
}

CsiMode policy_csi_mode(PolicyId id) {
  switch (id) {
    case PolicyId::GreedyFull: return CsiMode::Full;
    case PolicyId::CurrentCsi: return CsiMode::Current;
    case PolicyId::PastCsi: return CsiMode::Past;
  }
  return CsiMode::Full;
}

const char* action_name(SlotAction a) {
  switch (a) {
    case SlotAction::Serve1: return "serve1";
    case SlotAction::Serve2: return "serve2";
    case SlotAction::Split: return "split";
    case SlotAction::Idle: return "idle";
  }
  return "?";
}

double Schedule::delivered(int user) const {
  double total = 0.0;
  for (const auto& row : alloc) total += row[user - 1];
  return total;
}

namespace {

void check_pattern_length(const ErasurePattern& pattern, const DeadlineConfig& config) {
  if (pattern.length() != config.frame_length()) {
    throw std::invalid_argument("pattern: length " + std::to_string(pattern.length()) +
                                " does not match frame length T2 = " +
                                std::to_string(config.frame_length()));
  }
}

SlotAction classify(double amt1, double amt2) {
  if (amt1 > 0.0 && amt2 > 0.0) return SlotAction::Split;
  if (amt1 > 0.0) return SlotAction::Serve1;
  if (amt2 > 0.0) return SlotAction::Serve2;
  return SlotAction::Idle;
}

// Trace rows for policies whose attempts always coincide with the schedule.
void trace_from_schedule(FrameOutcome& out, const ErasurePattern& pattern) {
  out.trace.resize(pattern.slots.size());
  for (int t = 0; t < pattern.length(); ++t) {
    const auto& row = out.schedule.alloc[static_cast<std::size_t>(t)];
    out.trace[static_cast<std::size_t>(t)] =
        TraceEntry{t + 1, pattern.slots[static_cast<std::size_t>(t)], classify(row[0], row[1]),
                   row[0], row[1]};
  }
}

// Integer arrival rates are required by the whole-packet policies.
int integral_rate(double lambda, const char* name) {
  const double rounded = std::round(lambda);
  if (std::abs(lambda - rounded) > kRateTol) {
    throw std::invalid_argument(std::string(name) + ": whole-packet policies need integer rates");
  }
  return static_cast<int>(rounded);
}

void check_causal_preconditions(const ErasurePattern& pattern, const DeadlineConfig& config,
                                const CostToGoTable& cost, int l1, int l2) {
  if (config.t1 != config.t2) {
    throw std::invalid_argument("t1: causal policies need equal deadlines (T1 == T2)");
  }
  check_pattern_length(pattern, config);
  if (cost.l1max() < l1 || cost.l2max() < l2 || cost.tmax() < config.frame_length() - 1) {
    throw std::invalid_argument("cost: table bounds too small for this config");
  }
}

}  // namespace

FrameOutcome greedy_full_csi(const ErasurePattern& pattern, const DeadlineConfig& config) {
  check_pattern_length(pattern, config);
  const int t1 = config.t1;
  const int n_blocks = config.blocks();

  FrameOutcome out;
  out.schedule.alloc.assign(pattern.slots.size(), {0.0, 0.0});
  out.delivered1.resize(static_cast<std::size_t>(n_blocks));

  double rem2 = config.lambda2;
  for (int k = 0; k < n_blocks; ++k) {
    const int begin = k * t1;
    const int end = begin + t1;
    double need1 = config.lambda1;

    // Exclusive slots first: 10-slots can only ever help user 1, 01-slots
    // only user 2.
    for (int t = begin; t < end; ++t) {
      if (pattern.slots[static_cast<std::size_t>(t)] == Symbol::e10) {
        const double x = std::min(1.0, need1);
        out.schedule.alloc[static_cast<std::size_t>(t)][0] = x;
        need1 -= x;
      }
    }
    for (int t = begin; t < end; ++t) {
      if (pattern.slots[static_cast<std::size_t>(t)] == Symbol::e01) {
        const double y = std::min(1.0, rem2);
        out.schedule.alloc[static_cast<std::size_t>(t)][1] = y;
        rem2 -= y;
      }
    }
    // Shared slots: the earlier deadline (user 1) drains first, user 2 takes
    // whatever capacity is left.
    for (int t = begin; t < end; ++t) {
      if (pattern.slots[static_cast<std::size_t>(t)] == Symbol::e11) {
        const double x = std::min(1.0, need1);
        need1 -= x;
        const double y = std::min(1.0 - x, rem2);
        rem2 -= y;
        out.schedule.alloc[static_cast<std::size_t>(t)] = {x, y};
      }
    }
    out.delivered1[static_cast<std::size_t>(k)] = config.lambda1 - need1;
  }
  out.delivered2 = config.lambda2 - rem2;

  bool met = out.delivered2 >= config.lambda2 - kRateTol;
  for (double d : out.delivered1) met = met && d >= config.lambda1 - kRateTol;
  out.met_deadlines = met;

  trace_from_schedule(out, pattern);
  return out;
}

FrameOutcome current_csi_policy(const ErasurePattern& pattern, const DeadlineConfig& config,
                                const CostToGoTable& cost) {
  int l1 = integral_rate(config.lambda1, "lambda1");
  int l2 = integral_rate(config.lambda2, "lambda2");
  check_causal_preconditions(pattern, config, cost, l1, l2);
  const int frame = config.frame_length();

  FrameOutcome out;
  out.schedule.alloc.assign(pattern.slots.size(), {0.0, 0.0});
  out.trace.resize(pattern.slots.size());

  for (int t = 0; t < frame; ++t) {
    const Symbol state = pattern.slots[static_cast<std::size_t>(t)];
    const bool up1 = received_by_user1(state);
    const bool up2 = received_by_user2(state);
    const int t_rem = frame - t;

    const double pout_xmit1 = cost.at(l1 - 1, l2, t_rem - 1);
    const double pout_xmit2 = cost.at(l1, l2 - 1, t_rem - 1);

    TraceEntry entry{t + 1, state, SlotAction::Idle, 0.0, 0.0};
    // A user with zero residual never wins the comparison; otherwise the
    // strict "<" sends ties to user 2.
    if (l1 > 0 && up1 && (!up2 || l2 == 0 || pout_xmit1 < pout_xmit2)) {
      out.schedule.alloc[static_cast<std::size_t>(t)][0] = 1.0;
      entry.action = SlotAction::Serve1;
      entry.amt1 = 1.0;
      l1 = std::max(0, l1 - 1);
    } else if (up2 && l2 > 0) {
      out.schedule.alloc[static_cast<std::size_t>(t)][1] = 1.0;
      entry.action = SlotAction::Serve2;
      entry.amt2 = 1.0;
      l2 = std::max(0, l2 - 1);
    }
    out.trace[static_cast<std::size_t>(t)] = entry;
  }

  out.delivered1.assign(1, config.lambda1 - l1);
  out.delivered2 = config.lambda2 - l2;
  out.met_deadlines = l1 == 0 && l2 == 0;
  return out;
}

FrameOutcome past_csi_policy(const ErasurePattern& pattern, const DeadlineConfig& config,
                             const ErasureProbs& eps, const CostToGoTable& cost) {
  int l1 = integral_rate(config.lambda1, "lambda1");
  int l2 = integral_rate(config.lambda2, "lambda2");
  check_causal_preconditions(pattern, config, cost, l1, l2);
  const int frame = config.frame_length();

  FrameOutcome out;
  out.schedule.alloc.assign(pattern.slots.size(), {0.0, 0.0});
  out.trace.resize(pattern.slots.size());

  for (int t = 0; t < frame; ++t) {
    const Symbol state = pattern.slots[static_cast<std::size_t>(t)];
    const int t_rem = frame - t;

    // Expected cost-to-go of a blind transmission: success and failure
    // branches weighed by the channel marginals.
    const double stay = cost.at(l1, l2, t_rem - 1);
    const double pout_xmit1 = cost.at(l1 - 1, l2, t_rem - 1) * (eps.eps10() + eps.eps11()) +
                              stay * (eps.eps00() + eps.eps01());
    const double pout_xmit2 = cost.at(l1, l2 - 1, t_rem - 1) * (eps.eps01() + eps.eps11()) +
                              stay * (eps.eps00() + eps.eps10());

    int target = 0;
    if (l1 > 0 && l2 > 0) {
      target = pout_xmit1 < pout_xmit2 ? 1 : 2;
    } else if (l1 > 0) {
      target = 1;
    } else if (l2 > 0) {
      target = 2;
    }

    TraceEntry entry{t + 1, state, SlotAction::Idle, 0.0, 0.0};
    if (target == 1) {
      entry.action = SlotAction::Serve1;
      entry.amt1 = 1.0;
      if (received_by_user1(state)) {  // feedback at slot end
        out.schedule.alloc[static_cast<std::size_t>(t)][0] = 1.0;
        --l1;
      }
    } else if (target == 2) {
      entry.action = SlotAction::Serve2;
      entry.amt2 = 1.0;
      if (received_by_user2(state)) {
        out.schedule.alloc[static_cast<std::size_t>(t)][1] = 1.0;
        --l2;
      }
    }
    out.trace[static_cast<std::size_t>(t)] = entry;
  }

  out.delivered1.assign(1, config.lambda1 - l1);
  out.delivered2 = config.lambda2 - l2;
  out.met_deadlines = l1 == 0 && l2 == 0;
  return out;
}

std::string format_trace_line(const TraceEntry& entry) {
  char buf[128];
  char a1[32], a2[32];
  std::snprintf(a1, sizeof a1, "%.12g", entry.amt1);
  std::snprintf(a2, sizeof a2, "%.12g", entry.amt2);
  std::snprintf(buf, sizeof buf, "slot=%d state=%s action=%s amt1=%s amt2=%s", entry.slot,
                symbol_name(entry.state), action_name(entry.action), a1, a2);
  return buf;
}

std::string format_trace(const FrameOutcome& outcome) {
  std::string text;
  for (const TraceEntry& entry : outcome.trace) {
    text += format_trace_line(entry);
    text += '\n';
  }
  return text;
}

}  // namespace dbc
