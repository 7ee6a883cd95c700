#pragma once

#include <vector>

#include "nlbeam/expr.hpp"
#include "nlbeam/quadrature.hpp"

namespace nlbeam {

/// G(t, s) for u'''' + y = 0, u'(0) = u'(1) = u''(0) = 0, u(0) = 0:
///
///     6 G(t, s) = t^3 (1-s)^2 - (t-s)^3   for s <= t
///     6 G(t, s) = t^3 (1-s)^2             for t <= s
///
/// Throws ArgumentError outside [0, 1]^2.
double green(double t, double s);

/// g(s) = s (1-s)^2 / 6 = G(1, s) = max_t G(t, s).
double g_weight(double s);

/// dG/ds at s = 0, which is (3t^2 - 2t^3) / 6.
double green_slope_at_zero(double t);

/// The weight function a, theta, and the integrals
///
///     alpha = int_0^1 a,   beta = int_theta^(1-theta) a.
///
/// Construction enforces (H2). Non-negativity of a is checked on 1001 uniform
/// samples plus the quadrature nodes; a dip between samples goes unnoticed.
/// Immutable after construction.
class KernelContext {
 public:
  static constexpr double kDefaultTheta = 0.25;

  /// Throws ArgumentError for theta outside (0, 1/2) and HypothesisError(H2)
  /// for a negative weight sample or alpha outside (0, 1).
  static KernelContext make(ExpressionFn weight, double theta = kDefaultTheta, QuadratureSettings quad = {});

  const ExpressionFn& weight() const noexcept { return weight_; }
  double theta() const noexcept { return theta_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  const QuadratureSettings& quad() const noexcept { return quad_; }

  /// The t-independent part of the modified kernel,
  /// (1/(1-alpha)) int_0^1 a(tau) G(tau, s) dtau.
  double correction(double s) const;

  /// d/ds of `correction` at s = 0.
  double correction_slope_at_zero() const noexcept { return correction_slope0_; }

  /// theta^3 (1 - alpha + beta).
  double cone_constant() const noexcept;

 private:
  KernelContext() = default;

  ExpressionFn weight_ = ExpressionFn::parse("0");
  double theta_ = kDefaultTheta;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  QuadratureSettings quad_;
  std::vector<double> tau_;         // quadrature nodes on [0, 1]
  std::vector<double> tau_weight_;  // w_k a(tau_k) / (1 - alpha)
  double correction_slope0_ = 0.0;
};

/// Alias for KernelContext::make.
inline KernelContext make_context(ExpressionFn weight, double theta = KernelContext::kDefaultTheta,
                                  QuadratureSettings quad = {}) {
  return KernelContext::make(std::move(weight), theta, quad);
}

/// H(t, s) = G(t, s) + (1/(1-alpha)) int_0^1 a(tau) G(tau, s) dtau.
double modified_kernel(double t, double s, const KernelContext& ctx);

}  // namespace nlbeam
