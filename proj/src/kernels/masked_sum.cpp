#include "deadline_bcast/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

namespace dbc::kernels {

double masked_sum_scalar(const double* w, const double* a, const double* q,
                         std::size_t n, double ta, double tb) {
  // Neumaier-compensated: the full sums feed probabilities that must stay
  // accurate to ~1e-13 over up to 1e8 terms.
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] >= ta && q[i] >= tb) {
      const double x = w[i];
      const double t = sum + x;
      comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
      sum = t;
    }
  }
  return sum + comp;
}

namespace {

MaskedSumFn resolve() {
  const char* env = std::getenv("DEADLINE_BCAST_SIMD");
  const std::string mode = env ? env : "auto";
#if defined(__x86_64__) || defined(_M_X64)
  if (mode == "avx2") {
    if (!avx2_supported())
      throw std::invalid_argument("DEADLINE_BCAST_SIMD=avx2: CPU lacks AVX2");
    return masked_sum_avx2;
  }
  if (mode == "scalar") return masked_sum_scalar;
  if (mode == "auto" || mode.empty())
    return avx2_supported() ? masked_sum_avx2 : masked_sum_scalar;
#else
  if (mode == "scalar" || mode == "auto" || mode.empty()) return masked_sum_scalar;
#endif
  throw std::invalid_argument("DEADLINE_BCAST_SIMD: unknown value '" + mode + "'");
}

MaskedSumFn g_fn = nullptr;
std::once_flag g_once;

void init() { g_fn = resolve(); }

}  // namespace

MaskedSumFn masked_sum() {
  std::call_once(g_once, init);
  return g_fn;
}

const char* active_kernel_name() {
  const MaskedSumFn fn = masked_sum();
#if defined(__x86_64__) || defined(_M_X64)
  if (fn == masked_sum_avx2) return "avx2";
#endif
  (void)fn;
  return "scalar";
}

std::vector<KernelInfo> available_kernels() {
  std::vector<KernelInfo> out{{"scalar", masked_sum_scalar}};
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) out.push_back({"avx2", masked_sum_avx2});
#endif
  return out;
}

}  // namespace dbc::kernels
