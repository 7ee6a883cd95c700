#include "nlbeam/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlbeam/error.hpp"
#include "nlbeam/simd.hpp"

namespace nlbeam {

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw ArgumentError("grid function needs at least two samples");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw ArgumentError("non-finite grid value at index " + std::to_string(i));
  }
}

double GridFunction::sup_norm() const { return simd::max_abs(values_); }

double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }

bool GridFunction::nonneg() const { return min() >= -1e-12; }

double GridFunction::interpolate(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  const double x = t * static_cast<double>(n());
  const auto i = std::min(static_cast<std::size_t>(x), n() - 1);
  const double frac = x - static_cast<double>(i);
  return values_[i] + frac * (values_[i + 1] - values_[i]);
}

GridFunction GridFunction::resample(std::size_t n) const {
  if (n == this->n()) return *this;
  return sample(n, [this](double t) { return interpolate(t); });
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
  if (a.n() != b.n()) {
    throw ArgumentError("grid resolutions differ: " + std::to_string(a.n()) + " vs " + std::to_string(b.n()));
  }
  return simd::max_abs_diff(a.values(), b.values());
}

}  // namespace nlbeam
