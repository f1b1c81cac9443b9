// Acceptance gate: runs every numbered criterion at its stated tolerance and
// prints one pass/fail line per criterion.

#include <cstdio>

#include "deadline_bcast/validate.hpp"

int main() {
  const std::vector<dbc::CheckResult> results = dbc::run_acceptance();
  bool all_pass = true;
  for (const dbc::CheckResult& r : results) {
    std::printf("[%s] criterion %-28s (%6.2fs)  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.seconds, r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  std::printf("%s\n", all_pass ? "acceptance: all criteria passed" : "acceptance: FAILED");
  return all_pass ? 0 : 1;
}
