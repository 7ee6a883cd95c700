#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nlbeam {

/// Square banded matrix with `lower` sub- and `upper` super-diagonals,
/// factored in place by Gaussian elimination with partial pivoting. Row
/// exchanges widen the upper band by `lower`, which the storage reserves.
class BandMatrix {
 public:
  BandMatrix(std::size_t size, std::size_t lower, std::size_t upper);

  std::size_t size() const noexcept { return size_; }

  /// Entry (i, j) must lie inside the original band.
  double& at(std::size_t i, std::size_t j);
  double at(std::size_t i, std::size_t j) const;

  /// Throws NumericError on an exactly zero pivot.
  void factor();

  /// Solves in place after factor().
  void solve(std::span<double> rhs) const;

 private:
  double& slot(std::size_t i, std::size_t j) { return data_[i * width_ + (j + lower_ - i)]; }
  double slot(std::size_t i, std::size_t j) const { return data_[i * width_ + (j + lower_ - i)]; }

  std::size_t size_, lower_, upper_, width_;
  std::vector<double> data_;
  std::vector<std::size_t> pivot_;
  bool factored_ = false;
};

}  // namespace nlbeam
