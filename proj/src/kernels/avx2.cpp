#include "kernels_detail.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace repsim::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s2 = _mm_add_pd(lo, hi);
  const __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
  return _mm_cvtsd_f64(s1);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double norm_sq_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

double sq_dist_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void accumulate_avx2(double* acc, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s =
        _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(acc + i, s);
  }
  for (; i < n; ++i) acc[i] += x[i];
}

// Vectorized over points; mul+add (not FMA) so results match scalar
// bit-for-bit. Center indices ride along as doubles (k is small).
void nearest_center_2d_avx2(const double* px, const double* py, std::size_t n,
                            const double* cx, const double* cy, std::size_t k,
                            double* out_d2, std::int32_t* out_idx) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(px + i);
    const __m256d y = _mm256_loadu_pd(py + i);
    __m256d dx = _mm256_sub_pd(x, _mm256_set1_pd(cx[0]));
    __m256d dy = _mm256_sub_pd(y, _mm256_set1_pd(cy[0]));
    __m256d best =
        _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    __m256d bidx = _mm256_setzero_pd();
    for (std::size_t c = 1; c < k; ++c) {
      dx = _mm256_sub_pd(x, _mm256_set1_pd(cx[c]));
      dy = _mm256_sub_pd(y, _mm256_set1_pd(cy[c]));
      const __m256d d2 =
          _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
      const __m256d lt = _mm256_cmp_pd(d2, best, _CMP_LT_OQ);
      best = _mm256_blendv_pd(best, d2, lt);
      bidx = _mm256_blendv_pd(bidx, _mm256_set1_pd(double(c)), lt);
    }
    _mm256_storeu_pd(out_d2 + i, best);
    double ib[4];
    _mm256_storeu_pd(ib, bidx);
    for (int lane = 0; lane < 4; ++lane)
      out_idx[i + lane] = static_cast<std::int32_t>(ib[lane]);
  }
  if (i < n)
    scalar_ops.nearest_center_2d(px + i, py + i, n - i, cx, cy, k, out_d2 + i,
                                 out_idx + i);
}

}  // namespace

const Ops avx2_ops = {dot_avx2, norm_sq_avx2, sq_dist_avx2, accumulate_avx2,
                      nearest_center_2d_avx2};

}  // namespace repsim::kernels::detail

#endif  // x86
