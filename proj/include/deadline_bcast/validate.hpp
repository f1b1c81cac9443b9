#pragma once
// Self-check suite shared by the CLI `validate` subcommand and the
// acceptance test binary: the numbered acceptance criteria plus
// cross-module invariant checks, all at desk scale.

#include <string>
#include <vector>

namespace dbc {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// The nine numbered acceptance criteria, in order.
std::vector<CheckResult> run_acceptance();

// Acceptance criteria plus the extra invariant checks. quick shrinks the
// exhaustive domains and Monte Carlo sizes to finish within seconds.
std::vector<CheckResult> run_validation(bool quick);

}  // namespace dbc
