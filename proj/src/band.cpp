#include "nlbeam/band.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlbeam/error.hpp"

namespace nlbeam {

// Row i stores columns [i - lower, i + lower + upper].
BandMatrix::BandMatrix(std::size_t size, std::size_t lower, std::size_t upper)
    : size_(size), lower_(lower), upper_(upper), width_(2 * lower + upper + 1), data_(size * width_, 0.0),
      pivot_(size) {}

double& BandMatrix::at(std::size_t i, std::size_t j) {
  if (i >= size_ || j >= size_ || j + lower_ < i || j > i + upper_) {
    throw ArgumentError("band entry (" + std::to_string(i) + ", " + std::to_string(j) + ") outside band");
  }
  return slot(i, j);
}

double BandMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= size_ || j >= size_ || j + lower_ < i || j > i + lower_ + upper_) return 0.0;
  return slot(i, j);
}

void BandMatrix::factor() {
  const std::size_t reach = lower_ + upper_;
  for (std::size_t k = 0; k < size_; ++k) {
    const std::size_t last_row = std::min(size_ - 1, k + lower_);
    std::size_t p = k;
    double best = std::fabs(slot(k, k));
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      if (std::fabs(slot(i, k)) > best) {
        best = std::fabs(slot(i, k));
        p = i;
      }
    }
    if (best == 0.0) throw NumericError("singular band matrix at column " + std::to_string(k));
    pivot_[k] = p;
    const std::size_t last_col = std::min(size_ - 1, k + reach);
    if (p != k) {
      for (std::size_t j = k; j <= last_col; ++j) std::swap(slot(k, j), slot(p, j));
    }
    const double diag = slot(k, k);
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      const double factor = slot(i, k) / diag;
      slot(i, k) = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j <= last_col; ++j) slot(i, j) -= factor * slot(k, j);
    }
  }
  factored_ = true;
}

void BandMatrix::solve(std::span<double> rhs) const {
  if (!factored_) throw ArgumentError("band matrix not factored");
  if (rhs.size() != size_) throw ArgumentError("right-hand side size mismatch");
  const std::size_t reach = lower_ + upper_;
  for (std::size_t k = 0; k < size_; ++k) {
    if (pivot_[k] != k) std::swap(rhs[k], rhs[pivot_[k]]);
    const std::size_t last_row = std::min(size_ - 1, k + lower_);
    for (std::size_t i = k + 1; i <= last_row; ++i) rhs[i] -= slot(i, k) * rhs[k];
  }
  for (std::size_t k = size_; k-- > 0;) {
    const std::size_t last_col = std::min(size_ - 1, k + reach);
    double sum = rhs[k];
    for (std::size_t j = k + 1; j <= last_col; ++j) sum -= slot(k, j) * rhs[j];
    rhs[k] = sum / slot(k, k);
  }
}

}  // namespace nlbeam
