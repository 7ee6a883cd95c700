#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlbeam/expr.hpp"
#include "nlbeam/grid.hpp"
#include "nlbeam/kernel.hpp"
#include "nlbeam/linear.hpp"

namespace nlbeam {

/// Starting iterate: zero, a constant, or samples on any uniform grid
/// (resampled to the solver grid by linear interpolation).
struct InitialGuess {
  enum class Kind { Zero, Constant, Values };
  Kind kind = Kind::Zero;
  double constant = 0.0;
  std::vector<double> values;

  /// "zero", "constant <c>", or "values <v0> <v1> ..." (commas also accepted).
  /// Throws ArgumentError on malformed input.
  static InitialGuess parse(std::string_view desc);
  std::string describe() const;
  GridFunction on_grid(std::size_t n) const;
};

struct SolveConfig {
  std::size_t n = 800;
  double tol = 1e-10;
  int max_iter = 500;
  double relaxation = 1.0;
  InitialGuess u0;

  void validate() const;
};

enum class SolveStatus { Converged, MaxIterations, Diverged };

std::string_view to_string(SolveStatus status);

struct OdeResidual {
  double interior = 0.0;      // max |D4 u + f(u)| over i = 2..n-2
  double interior_tol = 0.0;  // max(1e-6, 100 eps n^4 ||u||)
  double bc = 0.0;            // max of |u'(0)|, |u'(1)|, |u''(0)|, |u(0) - int a u|
  std::vector<double> pointwise;  // D4 u + f(u); NaN where the stencil does not fit

  bool interior_ok() const { return interior <= interior_tol; }
  bool bc_ok(double tol = 1e-8) const { return bc <= tol; }
};

struct NormBound {
  double bound = 0.0;     // (1/(1-alpha)) int_0^1 g(s) f(u(s)) ds
  double operator_norm = 0.0;  // sup |A u|
  bool holds = false;     // operator_norm <= bound + 1e-10
};

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIterations;
  GridFunction solution;
  GridFunction image;  // A(solution)
  int iterations = 0;
  std::vector<double> delta_trace;
  double residual_integral = 0.0;
  std::optional<OdeResidual> residual_ode;  // needs n >= 9
  ConeCheck cone;
  bool trivial = false;
  double norm_bound = 0.0;          // bound evaluated at the solution
  double norm_bound_initial = 0.0;  // bound evaluated at the initial guess
  double initial_norm = 0.0;
  std::string failure;  // why the iteration diverged, if it did

  bool converged() const { return status == SolveStatus::Converged; }
};

constexpr double kTrivialThreshold = 1e-8;

/// Au(t) = int_0^1 H(t, s) f(u(s)) ds on the grid of `matrix`.
/// Throws ArgumentError if u < -1e-12 somewhere, HypothesisError(H1) if a
/// sampled f(u) is negative.
GridFunction apply_A(const GridFunction& u, const ExpressionFn& f, const KernelMatrix& matrix);
GridFunction apply_A(const GridFunction& u, const ExpressionFn& f, const KernelContext& ctx);

/// Iterates u <- (1-w) u + w A u. Non-convergence is reported, not thrown;
/// hypothesis violations still throw.
SolveReport picard_solve(const ExpressionFn& f, const KernelContext& ctx, const SolveConfig& config);

/// ||u - A u||_inf.
double residual_integral(const GridFunction& u, const ExpressionFn& f, const KernelMatrix& matrix);
double residual_integral(const GridFunction& u, const ExpressionFn& f, const KernelContext& ctx);

/// Finite-difference check of the differential form. Throws ArgumentError for n < 9.
OdeResidual residual_ode(const GridFunction& u, const ExpressionFn& f, const KernelContext& ctx);

NormBound norm_bound_check(const GridFunction& u, const ExpressionFn& f, const KernelMatrix& matrix);
NormBound norm_bound_check(const GridFunction& u, const ExpressionFn& f, const KernelContext& ctx);

struct CollocationResult {
  GridFunction solution;
  bool converged = false;
  int iterations = 0;
  std::string status;
};

/// Independent finite-difference solve of u'''' + f(u) = 0 with the same
/// boundary conditions by damped Newton. Throws ArgumentError for n < 20.
CollocationResult collocation_oracle(const ExpressionFn& f, const KernelContext& ctx, const SolveConfig& config);

}  // namespace nlbeam
