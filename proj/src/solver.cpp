#include "nlbeam/solver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "nlbeam/band.hpp"
#include "nlbeam/error.hpp"
#include "nlbeam/quadrature.hpp"
#include "nlbeam/simd.hpp"
#include "stencil.hpp"

namespace nlbeam {

namespace {

constexpr double kNegativeSlack = 1e-12;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// f at a grid value; values within the slack below zero are evaluated at 0.
double sample_f(const ExpressionFn& f, double x) {
  const double arg = (x < 0.0 && x >= -kNegativeSlack) ? 0.0 : x;
  const double v = f(arg);
  if (v < 0.0) throw HypothesisError(Hypothesis::H1, "f(" + fmt(arg) + ") = " + fmt(v) + " < 0");
  return v;
}

void f_values(const GridFunction& u, const ExpressionFn& f, std::vector<double>& out) {
  out.resize(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] < -kNegativeSlack) {
      throw ArgumentError("operator argument negative at t = " + fmt(u.t(j)) + ": u = " + fmt(u[j]));
    }
    out[j] = sample_f(f, u[j]);
  }
}

void check_grid(const GridFunction& u, const KernelMatrix& matrix) {
  if (u.n() != matrix.n()) {
    throw ArgumentError("grid n = " + std::to_string(u.n()) + " does not match kernel matrix n = " +
                        std::to_string(matrix.n()));
  }
}

double parse_real(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ArgumentError("malformed number '" + std::string(text) + "' in initial guess");
  }
  return v;
}

}  // namespace

InitialGuess InitialGuess::parse(std::string_view desc) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < desc.size()) {
    while (i < desc.size() && (desc[i] == ' ' || desc[i] == '\t' || desc[i] == ',')) ++i;
    std::size_t j = i;
    while (j < desc.size() && desc[j] != ' ' && desc[j] != '\t' && desc[j] != ',') ++j;
    if (j > i) tokens.push_back(desc.substr(i, j - i));
    i = j;
  }
  if (tokens.empty()) throw ArgumentError("empty initial guess");
  InitialGuess g;
  if (tokens[0] == "zero" && tokens.size() == 1) return g;
  if (tokens[0] == "constant" && tokens.size() == 2) {
    g.kind = Kind::Constant;
    g.constant = parse_real(tokens[1]);
    return g;
  }
  if (tokens[0] == "values" && tokens.size() >= 3) {
    g.kind = Kind::Values;
    for (std::size_t k = 1; k < tokens.size(); ++k) g.values.push_back(parse_real(tokens[k]));
    return g;
  }
  throw ArgumentError("initial guess must be 'zero', 'constant <c>' or 'values <v0> <v1> ...', got '" +
                      std::string(desc) + "'");
}

std::string InitialGuess::describe() const {
  switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::Constant: return "constant " + fmt(constant);
    case Kind::Values: return "values (" + std::to_string(values.size()) + " samples)";
  }
  return "?";
}

GridFunction InitialGuess::on_grid(std::size_t n) const {
  switch (kind) {
    case Kind::Zero: return GridFunction::zeros(n);
    case Kind::Constant: return GridFunction::constant(n, constant);
    case Kind::Values: return GridFunction(values).resample(n);
  }
  return GridFunction::zeros(n);
}

void SolveConfig::validate() const {
  if (n < 2) throw ArgumentError("grid n must be >= 2");
  if (!(tol > 0.0)) throw ArgumentError("tol must be > 0");
  if (max_iter < 1) throw ArgumentError("max_iter must be >= 1");
  if (!(relaxation > 0.0 && relaxation <= 1.0)) throw ArgumentError("relaxation must lie in (0, 1]");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::Diverged: return "diverged";
  }
  return "?";
}

GridFunction apply_A(const GridFunction& u, const ExpressionFn& f, const KernelMatrix& matrix) {
  check_grid(u, matrix);
  std::vector<double> fv;
  f_values(u, f, fv);
  std::vector<double> out(u.size());
  matrix.apply(fv, out);
  return GridFunction(std::move(out));
}

GridFunction apply_A(const GridFunction& u, const ExpressionFn& f, const KernelContext& ctx) {
  return apply_A(u, f, KernelMatrix(ctx, u.n()));
}

double residual_integral(const GridFunction& u, const ExpressionFn& f, const KernelMatrix& matrix) {
  return sup_distance(u, apply_A(u, f, matrix));
}

double residual_integral(const GridFunction& u, const ExpressionFn& f, const KernelContext& ctx) {
  return residual_integral(u, f, KernelMatrix(ctx, u.n()));
}

NormBound norm_bound_check(const GridFunction& u, const ExpressionFn& f, const KernelMatrix& matrix) {
  check_grid(u, matrix);
  std::vector<double> fv;
  f_values(u, f, fv);
  std::vector<double> image(u.size());
  matrix.apply(fv, image);
  NormBound nb;
  nb.bound = simd::dot(matrix.bound_weights(), fv);
  nb.operator_norm = simd::max_abs(image);
  nb.holds = nb.operator_norm <= nb.bound + 1e-10;
  return nb;
}

NormBound norm_bound_check(const GridFunction& u, const ExpressionFn& f, const KernelContext& ctx) {
  return norm_bound_check(u, f, KernelMatrix(ctx, u.n()));
}

OdeResidual residual_ode(const GridFunction& u, const ExpressionFn& f, const KernelContext& ctx) {
  const std::size_t n = u.n();
  if (n < 9) throw ArgumentError("ODE residual needs n >= 9, got " + std::to_string(n));
  const auto v = u.values();
  const double h = u.h();
  const double inv_h4 = std::pow(static_cast<double>(n), 4);

  OdeResidual r;
  r.pointwise.assign(n + 1, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 2; i + 2 <= n; ++i) {
    double fi = 0.0;
    if (v[i] < -kNegativeSlack) {
      fi = f(v[i]);
    } else {
      fi = sample_f(f, v[i]);
    }
    r.pointwise[i] = stencil::fourth_difference(v, i) * inv_h4 + fi;
    r.interior = std::max(r.interior, std::fabs(r.pointwise[i]));
  }
  r.interior_tol = std::max(1e-6, 100.0 * std::numeric_limits<double>::epsilon() * inv_h4 * u.sup_norm());

  const auto& a = ctx.weight();
  const auto au = GridFunction::sample(n, [&](double t) { return a(t); });
  std::vector<double> prod(n + 1);
  for (std::size_t i = 0; i <= n; ++i) prod[i] = au[i] * v[i];
  const double nonlocal = v[0] - integrate_grid(GridFunction(std::move(prod)));

  r.bc = std::max({std::fabs(stencil::first_at_left(v, h)), std::fabs(stencil::first_at_right(v, h)),
                   std::fabs(stencil::second_at_left(v, h)), std::fabs(nonlocal)});
  return r;
}

SolveReport picard_solve(const ExpressionFn& f, const KernelContext& ctx, const SolveConfig& config) {
  config.validate();
  const KernelMatrix matrix(ctx, config.n);
  const GridFunction start = config.u0.on_grid(config.n);

  SolveReport report;
  report.initial_norm = start.sup_norm();
  report.norm_bound_initial = norm_bound_check(start, f, matrix).bound;

  std::vector<double> cur(start.values().begin(), start.values().end());
  std::vector<double> fv, image(cur.size()), next(cur.size());
  for (int k = 1; k <= config.max_iter; ++k) {
    try {
      f_values(GridFunction(cur), f, fv);
    } catch (const NumericError& e) {
      report.status = SolveStatus::Diverged;
      report.failure = e.what();
      break;
    }
    matrix.apply(fv, image);
    next = cur;
    simd::blend(next, image, config.relaxation);
    const double delta = simd::max_abs_diff(next, cur);
    const bool finite = std::all_of(next.begin(), next.end(), [](double x) { return std::isfinite(x); });
    if (!finite || !std::isfinite(delta) || simd::max_abs(next) > 1e150) {
      report.status = SolveStatus::Diverged;
      report.failure = "iterate overflowed at iteration " + std::to_string(k);
      break;
    }
    cur.swap(next);
    report.iterations = k;
    report.delta_trace.push_back(delta);
    if (delta < config.tol) {
      report.status = SolveStatus::Converged;
      break;
    }
  }

  report.solution = GridFunction(cur);
  report.trivial = report.solution.sup_norm() < kTrivialThreshold;
  report.cone = cone_ratio(report.solution, ctx);
  if (report.status == SolveStatus::Diverged) {
    report.image = report.solution;
    report.residual_integral = std::numeric_limits<double>::infinity();
    return report;
  }
  report.image = apply_A(report.solution, f, matrix);
  report.residual_integral = sup_distance(report.solution, report.image);
  report.norm_bound = norm_bound_check(report.solution, f, matrix).bound;
  if (config.n >= 9) report.residual_ode = residual_ode(report.solution, f, ctx);
  return report;
}

CollocationResult collocation_oracle(const ExpressionFn& f, const KernelContext& ctx, const SolveConfig& config) {
  config.validate();
  const std::size_t n = config.n;
  if (n < 20) throw ArgumentError("collocation oracle needs n >= 20, got " + std::to_string(n));
  const std::size_t size = n + 1;
  const double h = 1.0 / static_cast<double>(n);
  const double h4 = h * h * h * h;

  // Nonlocal row: u_0 - sum_j w_j a_j u_j. Kept out of the band and folded
  // back in by Sherman-Morrison with B's row 0 set to e_0.
  const auto w = grid_weights(n);
  std::vector<double> v(size);
  for (std::size_t j = 0; j < size; ++j) v[j] = -w[j] * ctx.weight()(GridFunction::node(j, n));

  auto residual = [&](const std::vector<double>& u, std::vector<double>& out) {
    out.assign(size, 0.0);
    out[0] = u[0];
    for (std::size_t j = 0; j < size; ++j) out[0] += v[j] * u[j];
    for (std::size_t k = 0; k < 5; ++k) {
      out[1] += stencil::kFirst[k] * u[k];
      out[2] += stencil::kSecond[k] * u[k];
      out[n] -= stencil::kFirst[k] * u[n - k];
    }
    for (std::size_t r = 3; r < n; ++r) {
      const std::size_t i = r - 1;
      out[r] = stencil::fourth_difference(u, i) + h4 * f(u[i]);
    }
  };
  auto max_abs = [](const std::vector<double>& x) { return simd::max_abs(x); };

  CollocationResult result;
  const GridFunction start = config.u0.on_grid(n);
  std::vector<double> u(start.values().begin(), start.values().end());
  std::vector<double> F, trial, Ftrial, step(size), z(size);
  result.status = "max_iterations";

  try {
    residual(u, F);
    double normF = max_abs(F);
    constexpr int kMaxNewton = 100;
    for (int it = 1; it <= kMaxNewton; ++it) {
      result.iterations = it;
      BandMatrix B(size, 4, 3);
      B.at(0, 0) = 1.0;
      for (std::size_t k = 0; k < 5; ++k) {
        B.at(1, k) = stencil::kFirst[k];
        B.at(2, k) = stencil::kSecond[k];
        B.at(n, n - k) = -stencil::kFirst[k];
      }
      for (std::size_t r = 3; r < n; ++r) {
        const std::size_t i = r - 1;
        const double d = 1e-6 * (1.0 + std::fabs(u[i]));
        const double slope = (f(u[i] + d) - f(u[i] - d)) / (2.0 * d);
        B.at(r, i - 2) = 1.0;
        B.at(r, i - 1) = -4.0;
        B.at(r, i) = 6.0 + h4 * slope;
        B.at(r, i + 1) = -4.0;
        B.at(r, i + 2) = 1.0;
      }
      B.factor();
      for (std::size_t k = 0; k < size; ++k) step[k] = -F[k];
      B.solve(step);
      std::fill(z.begin(), z.end(), 0.0);
      z[0] = 1.0;
      B.solve(z);
      const double vx = simd::dot(v, step);
      const double vz = simd::dot(v, z);
      if (1.0 + vz == 0.0) throw NumericError("singular nonlocal correction");
      const double c = vx / (1.0 + vz);
      for (std::size_t k = 0; k < size; ++k) step[k] -= c * z[k];

      const double step_norm = max_abs(step);
      if (step_norm <= 1e-12 * std::max(1.0, max_abs(u))) {
        for (std::size_t k = 0; k < size; ++k) u[k] += step[k];
        result.converged = true;
        result.status = "converged";
        break;
      }

      double lambda = 1.0;
      bool accepted = false;
      for (int halving = 0; halving <= 30; ++halving, lambda *= 0.5) {
        trial = u;
        for (std::size_t k = 0; k < size; ++k) trial[k] += lambda * step[k];
        residual(trial, Ftrial);
        if (max_abs(Ftrial) < normF) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        // Stencil rows carry O(eps ||u||) rounding; below that no step helps.
        const bool at_floor = normF <= 1e3 * std::numeric_limits<double>::epsilon() * max_abs(u);
        result.converged = at_floor;
        result.status = at_floor ? "converged" : "stagnated";
        break;
      }
      u.swap(trial);
      F.swap(Ftrial);
      normF = max_abs(F);
      if (normF == 0.0) {
        result.converged = true;
        result.status = "converged";
        break;
      }
    }
  } catch (const NumericError& e) {
    result.converged = false;
    result.status = std::string("numeric failure: ") + e.what();
  }
  if (std::all_of(u.begin(), u.end(), [](double x) { return std::isfinite(x); })) {
    result.solution = GridFunction(std::move(u));
  } else {
    result.converged = false;
    result.solution = start;
  }
  return result;
}

}  // namespace nlbeam
