#pragma once
// Cost-to-go for the causal policies: outage probability of equal-deadline
// residual subproblems, indexed by (remaining packets user 1, remaining
// packets user 2, remaining slots).

#include <vector>

namespace dbc {

// Dense table of P_out(l1_rem, l2_rem, t_rem). Negative lambda arguments
// clamp to zero (a user that has nothing left to send contributes no
// outage); t must lie within the built range. Entries satisfy
// P(0,0,t) = 0 and P(l1,l2,0) = 1 for l1 + l2 > 0.
class CostToGoTable {
 public:
  CostToGoTable(int l1max, int l2max, int tmax, std::vector<double> values);

  double at(int l1, int l2, int t) const;

  int l1max() const { return l1max_; }
  int l2max() const { return l2max_; }
  int tmax() const { return tmax_; }

 private:
  int l1max_;
  int l2max_;
  int tmax_;
  std::vector<double> values_;  // index ((l1 * (l2max+1)) + l2) * (tmax+1) + t
};

}  // namespace dbc
