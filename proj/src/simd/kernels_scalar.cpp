#include <cmath>

#include "kernels.hpp"

namespace nlbeam::simd::detail {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void matvec(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(m + r * cols, x, cols);
}

double max_abs(const double* a, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) best = std::fmax(best, std::fabs(a[i]));
  return best;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) best = std::fmax(best, std::fabs(a[i] - b[i]));
  return best;
}

void blend(double* u, const double* v, double w, std::size_t n) {
  const double keep = 1.0 - w;
  for (std::size_t i = 0; i < n; ++i) u[i] = keep * u[i] + w * v[i];
}

}  // namespace

const Kernels kScalar = {dot, matvec, max_abs, max_abs_diff, blend};

}  // namespace nlbeam::simd::detail
