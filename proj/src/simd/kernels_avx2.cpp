// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels.hpp"

namespace nlbeam::simd::detail {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double sum = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

// Four rows per pass so each load of x feeds four FMAs.
void matvec(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y) {
  std::size_t r = 0;
  for (; r + 4 <= rows; r += 4) {
    const double* m0 = m + r * cols;
    const double* m1 = m0 + cols;
    const double* m2 = m1 + cols;
    const double* m3 = m2 + cols;
    __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd(), a3 = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      const __m256d xv = _mm256_loadu_pd(x + c);
      a0 = _mm256_fmadd_pd(_mm256_loadu_pd(m0 + c), xv, a0);
      a1 = _mm256_fmadd_pd(_mm256_loadu_pd(m1 + c), xv, a1);
      a2 = _mm256_fmadd_pd(_mm256_loadu_pd(m2 + c), xv, a2);
      a3 = _mm256_fmadd_pd(_mm256_loadu_pd(m3 + c), xv, a3);
    }
    double s0 = hsum(a0), s1 = hsum(a1), s2 = hsum(a2), s3 = hsum(a3);
    for (; c < cols; ++c) {
      s0 += m0[c] * x[c];
      s1 += m1[c] * x[c];
      s2 += m2[c] * x[c];
      s3 += m3[c] * x[c];
    }
    y[r] = s0;
    y[r + 1] = s1;
    y[r + 2] = s2;
    y[r + 3] = s3;
  }
  for (; r < rows; ++r) y[r] = dot(m + r * cols, x, cols);
}

double max_abs(const double* a, std::size_t n) {
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) best = _mm256_max_pd(best, abs_pd(_mm256_loadu_pd(a + i)));
  double out = hmax(best);
  for (; i < n; ++i) out = std::fmax(out, std::fabs(a[i]));
  return out;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    best = _mm256_max_pd(best, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i))));
  }
  double out = hmax(best);
  for (; i < n; ++i) out = std::fmax(out, std::fabs(a[i] - b[i]));
  return out;
}

// No FMA here, so the result matches the scalar reference bit for bit.
void blend(double* u, const double* v, double w, std::size_t n) {
  const double keep = 1.0 - w;
  const __m256d kv = _mm256_set1_pd(keep);
  const __m256d wv = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_mul_pd(kv, _mm256_loadu_pd(u + i));
    const __m256d b = _mm256_mul_pd(wv, _mm256_loadu_pd(v + i));
    _mm256_storeu_pd(u + i, _mm256_add_pd(a, b));
  }
  for (; i < n; ++i) u[i] = keep * u[i] + w * v[i];
}

}  // namespace

const Kernels kAvx2 = {dot, matvec, max_abs, max_abs_diff, blend};

}  // namespace nlbeam::simd::detail
