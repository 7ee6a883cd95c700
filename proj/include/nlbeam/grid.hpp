#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nlbeam {

/// Samples of a function at t_i = i/n, i = 0..n.
class GridFunction {
 public:
  GridFunction() = default;

  /// Throws ArgumentError for fewer than two samples or a non-finite entry.
  explicit GridFunction(std::vector<double> values);

  static GridFunction zeros(std::size_t n) { return GridFunction(std::vector<double>(n + 1, 0.0)); }
  static GridFunction constant(std::size_t n, double c) { return GridFunction(std::vector<double>(n + 1, c)); }

  template <class Fn>
  static GridFunction sample(std::size_t n, Fn&& fn) {
    std::vector<double> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = fn(node(i, n));
    return GridFunction(std::move(v));
  }

  static double node(std::size_t i, std::size_t n) { return static_cast<double>(i) / static_cast<double>(n); }

  std::size_t n() const noexcept { return values_.size() - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  double h() const noexcept { return 1.0 / static_cast<double>(n()); }
  double t(std::size_t i) const noexcept { return node(i, n()); }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  double sup_norm() const;
  double min() const;

  /// min >= -1e-12.
  bool nonneg() const;

  /// Piecewise-linear interpolation; `t` is clamped to [0, 1].
  double interpolate(double t) const;

  /// Resamples onto a grid of resolution `n` by interpolation.
  GridFunction resample(std::size_t n) const;

 private:
  std::vector<double> values_;
};

/// max_i |a_i - b_i| on grids of equal resolution.
double sup_distance(const GridFunction& a, const GridFunction& b);

}  // namespace nlbeam
