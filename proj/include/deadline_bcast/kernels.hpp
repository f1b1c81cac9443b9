#pragma once
// Inner accumulation kernel behind the exact outage sums: compensated sum
// of weights over entries that pass two >= threshold tests. A scalar
// reference implementation always exists; on x86-64 an AVX2 variant is
// selected at runtime. DEADLINE_BCAST_SIMD=scalar|avx2|auto overrides the
// choice for the whole process.

#include <cstddef>
#include <vector>

namespace dbc::kernels {

// Returns sum of w[i] over all i with a[i] >= ta and q[i] >= tb.
using MaskedSumFn = double (*)(const double* w, const double* a, const double* q,
                               std::size_t n, double ta, double tb);

double masked_sum_scalar(const double* w, const double* a, const double* q,
                         std::size_t n, double ta, double tb);

#if defined(__x86_64__) || defined(_M_X64)
double masked_sum_avx2(const double* w, const double* a, const double* q,
                       std::size_t n, double ta, double tb);
bool avx2_supported();
#endif

// The dispatched kernel; resolved once per process.
MaskedSumFn masked_sum();
const char* active_kernel_name();

struct KernelInfo {
  const char* name;
  MaskedSumFn fn;
};

// Every kernel runnable on this machine, scalar first. Used by the
// equivalence tests.
std::vector<KernelInfo> available_kernels();

}  // namespace dbc::kernels
