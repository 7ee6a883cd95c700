#pragma once

#include <cstddef>

namespace nlbeam::simd::detail {

struct Kernels {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*matvec)(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
  double (*max_abs)(const double* a, std::size_t n);
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
  void (*blend)(double* u, const double* v, double w, std::size_t n);
};

extern const Kernels kScalar;
#if defined(NLBEAM_HAVE_AVX2_KERNELS)
extern const Kernels kAvx2;
#endif
#if defined(NLBEAM_HAVE_NEON_KERNELS)
extern const Kernels kNeon;
#endif

}  // namespace nlbeam::simd::detail
