// AArch64 only; NEON is part of the baseline there.
#include <arm_neon.h>

#include <cmath>

#include "kernels.hpp"

namespace nlbeam::simd::detail {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  float64x2_t acc2 = vdupq_n_f64(0.0), acc3 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    acc2 = vfmaq_f64(acc2, vld1q_f64(a + i + 4), vld1q_f64(b + i + 4));
    acc3 = vfmaq_f64(acc3, vld1q_f64(a + i + 6), vld1q_f64(b + i + 6));
  }
  for (; i + 2 <= n; i += 2) acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
  double sum = vaddvq_f64(vaddq_f64(vaddq_f64(acc0, acc1), vaddq_f64(acc2, acc3)));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void matvec(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(m + r * cols, x, cols);
}

double max_abs(const double* a, std::size_t n) {
  float64x2_t best = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) best = vmaxq_f64(best, vabsq_f64(vld1q_f64(a + i)));
  double out = vmaxvq_f64(best);
  for (; i < n; ++i) out = std::fmax(out, std::fabs(a[i]));
  return out;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  float64x2_t best = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) best = vmaxq_f64(best, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double out = vmaxvq_f64(best);
  for (; i < n; ++i) out = std::fmax(out, std::fabs(a[i] - b[i]));
  return out;
}

void blend(double* u, const double* v, double w, std::size_t n) {
  const double keep = 1.0 - w;
  const float64x2_t kv = vdupq_n_f64(keep), wv = vdupq_n_f64(w);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(u + i, vaddq_f64(vmulq_f64(kv, vld1q_f64(u + i)), vmulq_f64(wv, vld1q_f64(v + i))));
  }
  for (; i < n; ++i) u[i] = keep * u[i] + w * v[i];
}

}  // namespace

const Kernels kNeon = {dot, matvec, max_abs, max_abs_diff, blend};

}  // namespace nlbeam::simd::detail
