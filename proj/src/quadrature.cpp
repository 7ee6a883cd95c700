#include "nlbeam/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>

#include "nlbeam/error.hpp"
#include "nlbeam/grid.hpp"

namespace nlbeam {

namespace {

// Gauss-Legendre, 5 points on [-1, 1].
constexpr std::array<double, 5> kGaussX = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                           0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussW = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                           0.4786286704993665, 0.2369268850561891};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string_view to_string(QuadRule rule) {
  switch (rule) {
    case QuadRule::Midpoint: return "midpoint";
    case QuadRule::Simpson: return "simpson";
    case QuadRule::Gauss5: return "gauss5";
  }
  return "?";
}

QuadRule parse_quad_rule(std::string_view name) {
  if (name == "midpoint") return QuadRule::Midpoint;
  if (name == "simpson") return QuadRule::Simpson;
  if (name == "gauss5" || name == "gauss5-composite") return QuadRule::Gauss5;
  throw ArgumentError("unknown quadrature rule '" + std::string(name) + "'");
}

void QuadratureSettings::validate() const {
  if (panels < 1) throw ArgumentError("quadrature panels must be >= 1, got " + std::to_string(panels));
}

QuadratureNodes composite_nodes(double lo, double hi, const QuadratureSettings& settings) {
  settings.validate();
  if (!(lo <= hi)) throw ArgumentError("integration bounds out of order: [" + fmt(lo) + ", " + fmt(hi) + "]");
  QuadratureNodes q;
  const auto panels = static_cast<std::size_t>(settings.panels);
  const double width = (hi - lo) / static_cast<double>(panels);
  auto left = [&](std::size_t p) { return p == panels ? hi : lo + static_cast<double>(p) * width; };

  switch (settings.rule) {
    case QuadRule::Midpoint:
      q.nodes.reserve(panels);
      for (std::size_t p = 0; p < panels; ++p) {
        q.nodes.push_back(0.5 * (left(p) + left(p + 1)));
        q.weights.push_back(left(p + 1) - left(p));
      }
      break;
    case QuadRule::Simpson:
      // Shared panel endpoints are merged: 2*panels + 1 nodes.
      q.nodes.resize(2 * panels + 1);
      q.weights.assign(2 * panels + 1, 0.0);
      for (std::size_t p = 0; p < panels; ++p) {
        const double a = left(p), b = left(p + 1), w = (b - a) / 6.0;
        q.nodes[2 * p] = a;
        q.nodes[2 * p + 1] = 0.5 * (a + b);
        q.nodes[2 * p + 2] = b;
        q.weights[2 * p] += w;
        q.weights[2 * p + 1] += 4.0 * w;
        q.weights[2 * p + 2] += w;
      }
      break;
    case QuadRule::Gauss5:
      q.nodes.reserve(5 * panels);
      for (std::size_t p = 0; p < panels; ++p) {
        const double a = left(p), b = left(p + 1);
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t k = 0; k < kGaussX.size(); ++k) {
          q.nodes.push_back(mid + half * kGaussX[k]);
          q.weights.push_back(half * kGaussW[k]);
        }
      }
      break;
  }
  return q;
}

double integrate(const std::function<double(double)>& fn, double lo, double hi,
                 const QuadratureSettings& settings) {
  if (lo == hi) return 0.0;
  const auto q = composite_nodes(lo, hi, settings);
  double sum = 0.0;
  for (std::size_t k = 0; k < q.nodes.size(); ++k) {
    const double v = fn(q.nodes[k]);
    if (!std::isfinite(v)) throw NumericError("non-finite integrand at x = " + fmt(q.nodes[k]));
    sum += q.weights[k] * v;
  }
  return sum;
}

std::vector<double> grid_weights(std::size_t n, const QuadratureSettings& settings) {
  if (settings.rule != QuadRule::Simpson) {
    throw ArgumentError("rule '" + std::string(to_string(settings.rule)) +
                        "' samples off the uniform grid; use simpson for grid integration");
  }
  if (n < 2) throw ArgumentError("grid integration needs n >= 2, got n = " + std::to_string(n));
  const double h = 1.0 / static_cast<double>(n);
  std::vector<double> w(n + 1, 0.0);
  const std::size_t simpson_end = (n % 2 == 0) ? n : n - 3;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (n % 2 == 1) {
    // Simpson 3/8 on the last three intervals.
    const double c = 3.0 * h / 8.0;
    w[n - 3] += c;
    w[n - 2] += 3.0 * c;
    w[n - 1] += 3.0 * c;
    w[n] += c;
  }
  return w;
}

double integrate_grid(const GridFunction& values, const QuadratureSettings& settings) {
  const auto w = grid_weights(values.n(), settings);
  const auto v = values.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * v[i];
  return sum;
}

double EndCorrectedTrapezoid::integrate(std::span<const double> values, double slope_lo, double slope_hi) const {
  if (values.size() != n + 1) {
    throw ArgumentError("grid of " + std::to_string(values.size()) + " samples does not match n = " +
                        std::to_string(n));
  }
  double sum = 0.0;
  for (std::size_t j = 0; j <= n; ++j) sum += weight(j) * values[j];
  return sum + slope_weight() * (slope_lo - slope_hi);
}

}  // namespace nlbeam
