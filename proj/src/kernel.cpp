#include "nlbeam/kernel.hpp"

#include <cmath>
#include <string>

#include "nlbeam/error.hpp"

namespace nlbeam {

namespace {

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ArgumentError(std::string(name) + " = " + std::to_string(x) + " outside [0, 1]");
  }
}

// Unchecked; callers validate.
double green_raw(double t, double s) {
  const double r = 1.0 - s;
  const double base = t * t * t * r * r;
  if (s <= t) {
    const double d = t - s;
    return (base - d * d * d) / 6.0;
  }
  return base / 6.0;
}

}  // namespace

double green(double t, double s) {
  check_unit(t, "t");
  check_unit(s, "s");
  return green_raw(t, s);
}

double g_weight(double s) {
  check_unit(s, "s");
  const double r = 1.0 - s;
  return s * r * r / 6.0;
}

double green_slope_at_zero(double t) {
  check_unit(t, "t");
  return t * t * (3.0 - 2.0 * t) / 6.0;
}

KernelContext KernelContext::make(ExpressionFn weight, double theta, QuadratureSettings quad) {
  if (!(theta > 0.0 && theta < 0.5)) {
    throw ArgumentError("theta = " + std::to_string(theta) + " outside (0, 1/2)");
  }
  quad.validate();

  KernelContext ctx;
  ctx.weight_ = std::move(weight);
  ctx.theta_ = theta;
  ctx.quad_ = quad;

  const auto& a = ctx.weight_;
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    if (a(t) < 0.0) throw HypothesisError(Hypothesis::H2, "a(" + std::to_string(t) + ") < 0");
  }

  auto q = composite_nodes(0.0, 1.0, quad);
  std::vector<double> wa(q.nodes.size());
  double alpha = 0.0;
  for (std::size_t k = 0; k < q.nodes.size(); ++k) {
    const double v = a(q.nodes[k]);
    if (v < 0.0) throw HypothesisError(Hypothesis::H2, "a(" + std::to_string(q.nodes[k]) + ") < 0");
    if (!std::isfinite(v)) throw NumericError("non-finite weight at t = " + std::to_string(q.nodes[k]));
    wa[k] = q.weights[k] * v;
    alpha += wa[k];
  }
  // The margin keeps 1/(1-alpha) meaningful and absorbs rounding in exact cases like a = 2t.
  constexpr double kMargin = 1e-12;
  if (!(alpha > kMargin)) {
    throw HypothesisError(Hypothesis::H2, "int_0^1 a = " + std::to_string(alpha) + " is not > 0");
  }
  if (!(alpha < 1.0 - kMargin)) {
    throw HypothesisError(Hypothesis::H2, "int_0^1 a = " + std::to_string(alpha) + " is not < 1");
  }
  ctx.alpha_ = alpha;
  ctx.beta_ = integrate([&a](double t) { return a(t); }, theta, 1.0 - theta, quad);

  const double scale = 1.0 / (1.0 - alpha);
  double slope = 0.0;
  for (std::size_t k = 0; k < wa.size(); ++k) {
    wa[k] *= scale;
    slope += wa[k] * green_slope_at_zero(q.nodes[k]);
  }
  ctx.tau_ = std::move(q.nodes);
  ctx.tau_weight_ = std::move(wa);
  ctx.correction_slope0_ = slope;
  return ctx;
}

double KernelContext::correction(double s) const {
  check_unit(s, "s");
  double sum = 0.0;
  for (std::size_t k = 0; k < tau_.size(); ++k) sum += tau_weight_[k] * green_raw(tau_[k], s);
  return sum;
}

double KernelContext::cone_constant() const noexcept { return theta_ * theta_ * theta_ * (1.0 - alpha_ + beta_); }

double modified_kernel(double t, double s, const KernelContext& ctx) { return green(t, s) + ctx.correction(s); }

}  // namespace nlbeam
