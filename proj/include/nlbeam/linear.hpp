#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nlbeam/grid.hpp"
#include "nlbeam/kernel.hpp"
#include "nlbeam/rational.hpp"

namespace nlbeam {

/// Nystrom discretization of y -> int_0^1 H(t, s) y(s) ds on the grid t_i = i/n.
///
/// Row i holds the end-corrected trapezoid weights of s -> H(t_i, s) y(s).
/// H(t, 0) = H(t, 1) = 0 and dH/ds(t, 1) = 0, so only the left slope term
/// survives and it lands in column 0 as h^2/12 * dH/ds(t_i, 0). All entries
/// are nonnegative. The s-integral inside H is evaluated once per column.
class KernelMatrix {
 public:
  /// Throws ArgumentError for n < 2.
  KernelMatrix(const KernelContext& ctx, std::size_t n);

  std::size_t n() const noexcept { return n_; }
  const KernelContext& context() const noexcept { return ctx_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return m_[i * (n_ + 1) + j]; }

  /// out = M y. Sizes must be n + 1.
  void apply(std::span<const double> y, std::span<double> out) const;
  GridFunction apply(const GridFunction& y) const;

  /// Weights b_j with sum_j b_j y_j = (1/(1-alpha)) int_0^1 g(s) y(s) ds under
  /// the same end-corrected trapezoid rule; b_j >= M_ij holds entry by entry.
  std::span<const double> bound_weights() const noexcept { return bound_; }

 private:
  KernelContext ctx_;
  std::size_t n_;
  std::vector<double> m_;
  std::vector<double> bound_;
};

/// Solution of u'''' + y = 0 with u'(0) = u'(1) = u''(0) = 0, u(0) = int a u.
/// Throws ArgumentError when y's grid does not match `matrix`.
GridFunction solve_linear(const GridFunction& y, const KernelMatrix& matrix);
GridFunction solve_linear(const GridFunction& y, const KernelContext& ctx);

using Polynomial = std::vector<Rational>;  // coefficient k multiplies t^k

Rational eval_poly(const Polynomial& p, Rational t);
double eval_poly(const Polynomial& p, double t);

/// int_0^1 p(t) dt, exactly.
Rational integrate_poly(const Polynomial& p);

Polynomial multiply(const Polynomial& a, const Polynomial& b);

/// Exact solution of the linear problem for polynomial y and a, by four
/// antiderivatives of -y and the boundary conditions:
///
///     u = c0 + c3 t^3 + p(t),   p = fourfold antiderivative of -y from 0,
///     c3 = -p'(1)/3,   c0 (1 - alpha) = int_0^1 a (p + c3 t^3).
///
/// Throws HypothesisError(H2) unless int_0^1 a lies in (0, 1).
Polynomial polynomial_oracle(const Polynomial& y, const Polynomial& a);

struct ConeCheck {
  double min_inner = 0.0;  // min of u over the grid points of [theta, 1-theta]
  double norm = 0.0;       // sup |u|
  double ratio = 0.0;      // min_inner / norm, 0 when norm = 0
  double threshold = 0.0;  // theta^3 (1 - alpha + beta)
  bool satisfied = false;  // min_inner >= threshold * norm - 1e-10
};

/// Evaluates min_{[theta, 1-theta]} u >= theta^3 (1-alpha+beta) ||u||.
/// theta is snapped outward to the grid, so the interval never shrinks.
ConeCheck cone_ratio(const GridFunction& u, const KernelContext& ctx);

/// Grid indices [lo, hi] covering [theta, 1 - theta], rounded outward.
std::pair<std::size_t, std::size_t> inner_range(std::size_t n, double theta);

}  // namespace nlbeam
