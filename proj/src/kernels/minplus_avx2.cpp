#include <cmath>

#include "uavcov/errors.hpp"
#include "uavcov/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define UAVCOV_HAVE_AVX2 1
#define UAVCOV_TARGET_AVX2 __attribute__((target("avx2")))
#else
#define UAVCOV_HAVE_AVX2 0
#define UAVCOV_TARGET_AVX2
#endif

namespace uavcov::kernels::avx2 {

#if UAVCOV_HAVE_AVX2

// Columns are processed four at a time with the accumulator held in a
// register across all rows; leftover columns go through the scalar loop,
// which performs the same comparisons in the same row order.

UAVCOV_TARGET_AVX2
void relax(std::span<const double> in, const double* block, std::size_t row_stride,
           std::span<double> out) {
  const std::size_t rows = in.size();
  const std::size_t cols = out.size();
  const double* src = in.data();
  double* dst = out.data();
  std::size_t v = 0;
  for (; v + 4 <= cols; v += 4) {
    __m256d acc = _mm256_loadu_pd(dst + v);
    for (std::size_t u = 0; u < rows; ++u) {
      if (std::isinf(src[u])) continue;
      const __m256d cand =
          _mm256_add_pd(_mm256_set1_pd(src[u]), _mm256_loadu_pd(block + u * row_stride + v));
      acc = _mm256_min_pd(cand, acc);  // cand < acc ? cand : acc
    }
    _mm256_storeu_pd(dst + v, acc);
  }
  for (; v < cols; ++v) {
    double acc = dst[v];
    for (std::size_t u = 0; u < rows; ++u) {
      if (std::isinf(src[u])) continue;
      const double cand = src[u] + block[u * row_stride + v];
      if (cand < acc) acc = cand;
    }
    dst[v] = acc;
  }
}

UAVCOV_TARGET_AVX2
void relax_arg(std::span<const double> in, const double* block, std::size_t row_stride,
               std::span<double> out, std::span<std::int32_t> arg) {
  const std::size_t rows = in.size();
  const std::size_t cols = out.size();
  const double* src = in.data();
  double* dst = out.data();
  std::int32_t* idx_out = arg.data();
  std::size_t v = 0;
  for (; v + 4 <= cols; v += 4) {
    __m256d acc = _mm256_loadu_pd(dst + v);
    __m128i idx_init = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx_out + v));
    __m256d idx = _mm256_cvtepi32_pd(idx_init);
    for (std::size_t u = 0; u < rows; ++u) {
      if (std::isinf(src[u])) continue;
      const __m256d cand =
          _mm256_add_pd(_mm256_set1_pd(src[u]), _mm256_loadu_pd(block + u * row_stride + v));
      const __m256d better = _mm256_cmp_pd(cand, acc, _CMP_LT_OQ);
      acc = _mm256_blendv_pd(acc, cand, better);
      idx = _mm256_blendv_pd(idx, _mm256_set1_pd(static_cast<double>(u)), better);
    }
    _mm256_storeu_pd(dst + v, acc);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(idx_out + v), _mm256_cvtpd_epi32(idx));
  }
  for (; v < cols; ++v) {
    for (std::size_t u = 0; u < rows; ++u) {
      if (std::isinf(src[u])) continue;
      const double cand = src[u] + block[u * row_stride + v];
      if (cand < dst[v]) {
        dst[v] = cand;
        idx_out[v] = static_cast<std::int32_t>(u);
      }
    }
  }
}

#else

void relax(std::span<const double>, const double*, std::size_t, std::span<double>) {
  throw ContractViolation("AVX2 kernels are not compiled for this target");
}

void relax_arg(std::span<const double>, const double*, std::size_t, std::span<double>,
               std::span<std::int32_t>) {
  throw ContractViolation("AVX2 kernels are not compiled for this target");
}

#endif

}  // namespace uavcov::kernels::avx2
