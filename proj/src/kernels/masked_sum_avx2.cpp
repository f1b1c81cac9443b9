// AVX2 variant of the masked compensated sum. Compiled with -mavx2 in its
// own translation unit; only reached through the runtime dispatcher.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "deadline_bcast/kernels.hpp"

namespace dbc::kernels {

bool avx2_supported() { return __builtin_cpu_supports("avx2") != 0; }

double masked_sum_avx2(const double* w, const double* a, const double* q,
                       std::size_t n, double ta, double tb) {
  const __m256d tav = _mm256_set1_pd(ta);
  const __m256d tbv = _mm256_set1_pd(tb);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);

  // Per-lane Neumaier running sums; lanes are merged (and the tail handled)
  // by the scalar reference so thresholds behave identically.
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d av = _mm256_loadu_pd(a + i);
    const __m256d qv = _mm256_loadu_pd(q + i);
    const __m256d keep = _mm256_and_pd(_mm256_cmp_pd(av, tav, _CMP_GE_OQ),
                                       _mm256_cmp_pd(qv, tbv, _CMP_GE_OQ));
    const __m256d x = _mm256_and_pd(_mm256_loadu_pd(w + i), keep);

    const __m256d t = _mm256_add_pd(sum, x);
    const __m256d abs_sum = _mm256_andnot_pd(sign_mask, sum);
    const __m256d abs_x = _mm256_andnot_pd(sign_mask, x);
    const __m256d sum_big = _mm256_cmp_pd(abs_sum, abs_x, _CMP_GE_OQ);
    const __m256d err_sum_big = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
    const __m256d err_x_big = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(err_x_big, err_sum_big, sum_big));
    sum = t;
  }

  alignas(32) double lane_sum[4];
  alignas(32) double lane_comp[4];
  _mm256_store_pd(lane_sum, sum);
  _mm256_store_pd(lane_comp, comp);

  double total = 0.0;
  double total_comp = 0.0;
  auto add = [&](double x) {
    const double t = total + x;
    total_comp += std::abs(total) >= std::abs(x) ? (total - t) + x : (x - t) + total;
    total = t;
  };
  for (int lane = 0; lane < 4; ++lane) {
    add(lane_sum[lane]);
    add(lane_comp[lane]);
  }
  add(masked_sum_scalar(w + i, a + i, q + i, n - i, ta, tb));
  return total + total_comp;
}

}  // namespace dbc::kernels

#endif  // x86-64
