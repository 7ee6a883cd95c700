#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlbeam {

class GridFunction;

enum class QuadRule { Midpoint, Simpson, Gauss5 };

std::string_view to_string(QuadRule rule);
QuadRule parse_quad_rule(std::string_view name);

/// One settings object controls the accuracy of every integral in the library.
struct QuadratureSettings {
  QuadRule rule = QuadRule::Simpson;
  int panels = 200;

  void validate() const;
};

/// Nodes and weights of a composite rule on [lo, hi]. Weights are positive.
struct QuadratureNodes {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureNodes composite_nodes(double lo, double hi, const QuadratureSettings& settings);

/// Composite approximation of the integral of `fn` over [lo, hi].
/// Exact per panel for polynomials of degree 1 (midpoint), 3 (simpson), 9 (gauss5).
/// Throws NumericError naming the abscissa of the first non-finite sample.
double integrate(const std::function<double(double)>& fn, double lo, double hi,
                 const QuadratureSettings& settings = {});

/// Weights for integrating samples on the uniform grid t_i = i/n over [0, 1].
/// Only Simpson is defined on the grid (odd n closes with a 3/8 panel);
/// the other rules sample off-grid and are rejected with ArgumentError.
std::vector<double> grid_weights(std::size_t n, const QuadratureSettings& settings = {});

double integrate_grid(const GridFunction& values, const QuadratureSettings& settings = {});

/// Trapezoid rule on the uniform grid with the Euler-Maclaurin end terms
///
///     h^2/12 * (F'(0) - F'(1))
///
/// supplied from known endpoint derivatives. Error O(h^4) for integrands that
/// are C^2 with a third-derivative jump at a grid node. Interior weights are all
/// equal to h, which keeps fourth differences of Nystrom solutions smooth.
struct EndCorrectedTrapezoid {
  std::size_t n;

  double h() const { return 1.0 / static_cast<double>(n); }
  double weight(std::size_t j) const { return (j == 0 || j == n) ? 0.5 * h() : h(); }
  double slope_weight() const { return h() * h() / 12.0; }

  double integrate(std::span<const double> values, double slope_lo, double slope_hi) const;
};

}  // namespace nlbeam
