#include "nlbeam/linear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlbeam/error.hpp"
#include "nlbeam/quadrature.hpp"
#include "nlbeam/simd.hpp"

namespace nlbeam {

KernelMatrix::KernelMatrix(const KernelContext& ctx, std::size_t n) : ctx_(ctx), n_(n) {
  if (n < 2) throw ArgumentError("kernel matrix needs n >= 2, got " + std::to_string(n));
  const EndCorrectedTrapezoid rule{n};
  const std::size_t cols = n + 1;

  std::vector<double> correction(cols, 0.0);
  for (std::size_t j = 0; j < cols; ++j) correction[j] = ctx.correction(GridFunction::node(j, n));

  m_.assign(cols * cols, 0.0);
  const double slope_w = rule.slope_weight();
  for (std::size_t i = 0; i < cols; ++i) {
    const double t = GridFunction::node(i, n);
    double* row = m_.data() + i * cols;
    row[0] = slope_w * (green_slope_at_zero(t) + ctx.correction_slope_at_zero());
    for (std::size_t j = 1; j < n; ++j) row[j] = rule.weight(j) * (green(t, GridFunction::node(j, n)) + correction[j]);
    row[n] = 0.0;
  }

  const double scale = 1.0 / (1.0 - ctx.alpha());
  bound_.assign(cols, 0.0);
  bound_[0] = slope_w * scale / 6.0;  // g'(0) = 1/6, g(0) = 0
  for (std::size_t j = 1; j < n; ++j) bound_[j] = rule.weight(j) * scale * g_weight(GridFunction::node(j, n));
}

void KernelMatrix::apply(std::span<const double> y, std::span<double> out) const {
  if (y.size() != n_ + 1 || out.size() != n_ + 1) {
    throw ArgumentError("grid of " + std::to_string(y.size()) + " samples does not match kernel matrix n = " +
                        std::to_string(n_));
  }
  simd::matvec(m_, y, out);
}

GridFunction KernelMatrix::apply(const GridFunction& y) const {
  std::vector<double> out(n_ + 1);
  apply(y.values(), out);
  return GridFunction(std::move(out));
}

GridFunction solve_linear(const GridFunction& y, const KernelMatrix& matrix) { return matrix.apply(y); }

GridFunction solve_linear(const GridFunction& y, const KernelContext& ctx) {
  const KernelMatrix matrix(ctx, y.n());
  return matrix.apply(y);
}

Rational eval_poly(const Polynomial& p, Rational t) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double eval_poly(const Polynomial& p, double t) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + it->to_double();
  return acc;
}

Rational integrate_poly(const Polynomial& p) {
  Rational sum = 0;
  for (std::size_t k = 0; k < p.size(); ++k) sum += p[k] / Rational(static_cast<std::int64_t>(k + 1));
  return sum;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Polynomial polynomial_oracle(const Polynomial& y, const Polynomial& a) {
  const Rational alpha = integrate_poly(a);
  if (!(Rational(0) < alpha && alpha < Rational(1))) {
    throw HypothesisError(Hypothesis::H2, "int_0^1 a = " + alpha.to_string() + " outside (0, 1)");
  }
  // p(t) = -sum y_k t^(k+4) / ((k+1)(k+2)(k+3)(k+4)).
  Polynomial u(y.size() + 4, Rational(0));
  for (std::size_t k = 0; k < y.size(); ++k) {
    const auto k1 = static_cast<std::int64_t>(k + 1);
    u[k + 4] = -y[k] / Rational(k1 * (k1 + 1) * (k1 + 2) * (k1 + 3));
  }
  if (u.size() < 4) u.resize(4, Rational(0));

  Rational slope_at_one = 0;  // p'(1)
  for (std::size_t k = 1; k < u.size(); ++k) slope_at_one += Rational(static_cast<std::int64_t>(k)) * u[k];
  u[3] = -slope_at_one / Rational(3);

  u[0] = integrate_poly(multiply(a, u)) / (Rational(1) - alpha);
  return u;
}

std::pair<std::size_t, std::size_t> inner_range(std::size_t n, double theta) {
  const double nd = static_cast<double>(n);
  // Slack of 1e-9 grid units keeps theta*n values like 99.99999999999999 on the node.
  auto lo = static_cast<std::size_t>(std::floor(theta * nd + 1e-9));
  auto hi = static_cast<std::size_t>(std::ceil((1.0 - theta) * nd - 1e-9));
  hi = std::min(hi, n);
  lo = std::min(lo, hi);
  return {lo, hi};
}

ConeCheck cone_ratio(const GridFunction& u, const KernelContext& ctx) {
  ConeCheck c;
  const auto [lo, hi] = inner_range(u.n(), ctx.theta());
  c.min_inner = u[lo];
  for (std::size_t i = lo; i <= hi; ++i) c.min_inner = std::min(c.min_inner, u[i]);
  c.norm = u.sup_norm();
  c.ratio = c.norm > 0.0 ? c.min_inner / c.norm : 0.0;
  c.threshold = ctx.cone_constant();
  c.satisfied = c.min_inner >= c.threshold * c.norm - 1e-10;
  return c;
}

}  // namespace nlbeam
