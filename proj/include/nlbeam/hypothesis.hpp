#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "nlbeam/expr.hpp"
#include "nlbeam/kernel.hpp"
#include "nlbeam/quadrature.hpp"

namespace nlbeam {

/// A limit of f(u)/u read off a finite geometric schedule. The raw schedule
/// is kept so the convergence call can be audited; a function that changes
/// behaviour beyond the schedule fools the estimate.
struct LimitEstimate {
  double value = 0.0;  // ratio at the last schedule point
  bool converged = false;  // |last - previous| < 1e-4 (1 + |last|)
  bool divergent = false;  // last >= 1e8 and increasing, or f overflowed
  std::vector<std::pair<double, double>> schedule;  // (u, f(u)/u)

  bool is_zero(double tol = 1e-4) const { return converged && !divergent && std::abs(value) < tol; }
};

/// f(u)/u at u = 10^-k, k = 1..12. Throws HypothesisError(H1) if f(u) < 0.
LimitEstimate estimate_f0(const ExpressionFn& f);

/// f(u)/u at u = 10^k, k = 1..8. Throws HypothesisError(H1) if f(u) < 0.
LimitEstimate estimate_finf(const ExpressionFn& f);

/// Certificate for the f0 = 0 existence theorem: f(u) <= epsilon u on (0, rho1]
/// with epsilon = 1 - alpha, the largest value the theorem admits.
struct OriginCertificate {
  double epsilon = 0.0;
  double rho1 = 0.0;
};

/// Empty unless f0 estimates to 0 and a radius rho1 >= 1e-6 is found.
/// rho1 is searched on 10^4 log-spaced points of [1e-12, 1e3] and refined by
/// bisection between the last admissible and the first violating point.
std::optional<OriginCertificate> certify_origin_growth(const ExpressionFn& f, const KernelContext& ctx);

/// Certificate for the finf = 0 existence theorem.
///
/// Bounded case: f <= L on the probe range [0, 1e6].
/// Otherwise: f(u) <= eta u beyond rho2 and f <= eta sigma on [0, rho2], with
/// eta = 1 - alpha and rho_hat2 = max(sigma, rho2).
struct InfinityCertificate {
  bool bounded = false;
  double L = 0.0;
  double eta = 0.0;
  double rho2 = 0.0;
  double sigma = 0.0;
  double rho_hat2 = 0.0;
};

std::optional<InfinityCertificate> certify_infinity_growth(const ExpressionFn& f, const KernelContext& ctx);

struct HypothesisCheck {
  bool h1 = false;
  bool h2 = false;
  double alpha = 0.0;
};

/// Never throws for hypothesis failures; the booleans carry the verdict.
HypothesisCheck check_h1_h2(const ExpressionFn& f, const ExpressionFn& a, const QuadratureSettings& quad = {});

struct HypothesisReport {
  HypothesisCheck hypotheses;
  double alpha = 0.0;
  double beta = 0.0;
  LimitEstimate f0;
  LimitEstimate finf;
  std::optional<OriginCertificate> origin;      // f0 = 0 theorem
  std::optional<InfinityCertificate> infinity;  // finf = 0 theorem
  bool superlinear = false;  // f0 = 0 and finf = inf
  bool sublinear = false;    // f0 = inf and finf = 0

  bool origin_applicable() const { return origin.has_value(); }
  bool infinity_applicable() const { return infinity.has_value(); }
};

/// Runs every check. The certificates need a valid context, so they stay
/// empty when (H2) fails; (H1) failures throw from the limit estimates.
HypothesisReport analyze_hypotheses(const ExpressionFn& f, const ExpressionFn& a, double theta,
                                    const QuadratureSettings& quad = {});

/// 0 followed by `count - 1` log-spaced points of [lo, hi].
std::vector<double> log_scan(double lo, double hi, std::size_t count);

}  // namespace nlbeam
