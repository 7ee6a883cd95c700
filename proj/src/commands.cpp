#include "nlbeam/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <random>

#include "nlbeam/error.hpp"
#include "nlbeam/expr.hpp"
#include "nlbeam/hypothesis.hpp"
#include "nlbeam/kernel.hpp"
#include "nlbeam/linear.hpp"

namespace nlbeam::cli {
namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Expression errors print the source with a caret under the offset.
void report_parse_error(std::ostream& err, std::string_view field, std::string_view source, const ParseError& e) {
  err << "error: " << field << ": " << e.what() << '\n';
  err << "  " << source << '\n';
  err << "  " << std::string(std::min(e.offset(), source.size()), ' ') << "^\n";
}

struct ParsedProblem {
  ExpressionFn f;
  ExpressionFn a;
};

// Parse failures are reported to `err` and leave `ok` false.
ParsedProblem parse_expressions(const ProblemFile& problem, std::ostream& err, bool& ok) {
  ok = false;
  ExpressionFn f = ExpressionFn::parse("0");
  ExpressionFn a = ExpressionFn::parse("0");
  try {
    f = ExpressionFn::parse(problem.f, 'u');
  } catch (const ParseError& e) {
    report_parse_error(err, "f", problem.f, e);
    return {f, a};
  }
  try {
    a = ExpressionFn::parse(problem.a, 't');
  } catch (const ParseError& e) {
    report_parse_error(err, "a", problem.a, e);
    return {f, a};
  }
  ok = true;
  return {f, a};
}

void write_schedule(std::ostream& out, std::string_view name, const LimitEstimate& est) {
  out << name << "_estimate: " << fmt(est.value);
  if (est.divergent) {
    out << " (divergent)";
  } else if (est.converged) {
    out << " (converged)";
  } else {
    out << " (not converged)";
  }
  out << '\n' << name << "_schedule:";
  for (const auto& [u, r] : est.schedule) out << ' ' << fmt_short(u) << ':' << fmt_short(r);
  out << '\n';
}

double contraction_factor(const KernelContext& ctx) {
  return integrate(g_weight, 0.0, 1.0, ctx.quad()) / (1.0 - ctx.alpha());
}

}  // namespace

// ---------------------------------------------------------------- lemmas

VerifyOutcome verify_lemmas(const VerifyOptions& options, std::ostream& out) {
  if (options.grid < 3) throw ArgumentError("verify-lemmas: grid needs at least 3 points");
  for (double theta : options.thetas) {
    if (!(theta > 0.0 && theta < 0.5)) throw ArgumentError("verify-lemmas: theta must lie in (0, 1/2), got " + fmt(theta));
  }
  const std::function<double(double, double)> kernel =
      options.corrupt_kernel ? std::function<double(double, double)>([](double t, double s) { return -green(t, s); })
                             : std::function<double(double, double)>(green);
  const std::size_t m = options.grid - 1;
  auto node = [m](std::size_t i) { return static_cast<double>(i) / static_cast<double>(m); };
  const double nan = std::numeric_limits<double>::quiet_NaN();

  VerifyOutcome outcome;

  {
    VerifyRow row{"kernel_nonnegative", nan, 0.0, 0.0, 0.0, true};
    for (std::size_t i = 0; i <= m; ++i) {
      for (std::size_t j = 0; j <= m; ++j) {
        const double v = -kernel(node(i), node(j));
        if (v > row.max_violation) row = {row.check, nan, v, node(i), node(j), true};
      }
    }
    row.pass = row.max_violation <= 1e-14;
    outcome.rows.push_back(row);
  }

  {
    VerifyRow row{"boundary_identity", nan, 0.0, 1.0, 0.0, true};
    for (std::size_t j = 0; j <= m; ++j) {
      const double v = std::abs(kernel(1.0, node(j)) - g_weight(node(j)));
      if (v > row.max_violation) {
        row.max_violation = v;
        row.worst_s = node(j);
      }
    }
    row.pass = row.max_violation <= 1e-14;
    outcome.rows.push_back(row);
  }

  for (double theta : options.thetas) {
    VerifyRow row{"two_sided_bound", theta, 0.0, 0.0, 0.0, true};
    const double c = theta * theta * theta;
    for (std::size_t i = 0; i <= m; ++i) {
      const double t = node(i);
      if (t < theta || t > 1.0 - theta) continue;
      for (std::size_t j = 0; j <= m; ++j) {
        const double s = node(j);
        const double gv = kernel(t, s);
        const double gs = g_weight(s);
        const double v = std::max(c * gs - gv, gv - gs);
        if (v > row.max_violation) {
          row.max_violation = v;
          row.worst_t = t;
          row.worst_s = s;
        }
      }
    }
    row.pass = row.max_violation <= 1e-12;
    outcome.rows.push_back(row);
  }

  // Random loads y = sum c_k B_{k,4}(t) with c_k >= 0 against a = t^2.
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> coeff(0.0, 1.0);
  std::vector<std::vector<double>> loads;
  for (std::size_t k = 0; k < options.random_cases; ++k) {
    std::vector<double> c(5);
    for (double& x : c) x = coeff(rng);
    std::vector<double> y(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
      const double t = node(i);
      const double s = 1.0 - t;
      y[i] = c[0] * s * s * s * s + 4 * c[1] * t * s * s * s + 6 * c[2] * t * t * s * s + 4 * c[3] * t * t * t * s +
             c[4] * t * t * t * t;
    }
    loads.push_back(std::move(y));
  }
  for (double theta : options.thetas) {
    const KernelContext ctx = KernelContext::make(ExpressionFn::parse("t^2", 't'), theta);
    const KernelMatrix matrix(ctx, m);
    VerifyRow row{"cone_inequality", theta, 0.0, 0.0, 0.0, true};
    for (std::size_t k = 0; k < loads.size(); ++k) {
      const GridFunction u = solve_linear(GridFunction(loads[k]), matrix);
      const ConeCheck cone = cone_ratio(u, ctx);
      const double v = std::max({0.0, cone.threshold * cone.norm - cone.min_inner, -u.min()});
      if (v > row.max_violation) {
        row.max_violation = v;
        row.worst_s = static_cast<double>(k);
      }
      row.pass = row.pass && cone.satisfied && u.nonneg();
    }
    outcome.rows.push_back(row);
  }

  out << "check,theta,max_violation,worst_t,worst_s,status\n";
  bool all = true;
  for (const auto& row : outcome.rows) {
    out << row.check << ',' << (std::isnan(row.theta) ? std::string() : fmt_short(row.theta)) << ','
        << fmt(row.max_violation) << ',' << fmt_short(row.worst_t) << ',' << fmt_short(row.worst_s) << ','
        << (row.pass ? "PASS" : "FAIL") << '\n';
    all = all && row.pass;
  }
  out << "result: " << (all ? "PASS" : "FAIL") << '\n';
  outcome.exit_code = all ? kOk : kLemmaViolation;
  return outcome;
}

// ---------------------------------------------------------------- solve

void write_solution_csv(const SolveReport& report, std::ostream& out) {
  out << "t,u,Au,fourth_diff_residual\n";
  const GridFunction& u = report.solution;
  for (std::size_t i = 0; i < u.size(); ++i) {
    out << fmt(u.t(i)) << ',' << fmt(u[i]) << ',' << fmt(report.image[i]) << ',';
    if (report.residual_ode && !std::isnan(report.residual_ode->pointwise[i])) out << fmt(report.residual_ode->pointwise[i]);
    out << '\n';
  }
}

SolveOutcome run_solve(const ProblemFile& problem_in, const SolveOptions& options, std::ostream& out,
                       std::string_view label) {
  ProblemFile problem = problem_in;
  if (options.theta) problem.theta = *options.theta;
  if (options.grid) problem.grid_n = *options.grid;
  if (options.u0) problem.u0 = *options.u0;

  SolveOutcome outcome;
  outcome.oracle_agreement = std::numeric_limits<double>::quiet_NaN();
  bool ok = false;
  const ParsedProblem parsed = parse_expressions(problem, out, ok);
  if (!ok) {
    outcome.exit_code = kParseFailure;
    return outcome;
  }
  SolveConfig config;
  try {
    config = problem.solve_config();
  } catch (const ArgumentError& e) {
    out << "error: " << e.what() << '\n';
    outcome.exit_code = kParseFailure;
    return outcome;
  }

  out << "problem: " << label << '\n';
  out << "f: " << parsed.f.to_string() << '\n';
  out << "a: " << parsed.a.to_string() << '\n';
  out << "theta: " << fmt_short(problem.theta) << '\n';
  out << "grid_n: " << config.n << '\n';
  out << "quadrature: " << to_string(problem.quad_rule) << ' ' << problem.quad_panels << '\n';
  out << "u0: " << config.u0.describe() << '\n';

  outcome.hypotheses = check_h1_h2(parsed.f, parsed.a, problem.quad());
  out << "h1: " << (outcome.hypotheses.h1 ? "holds" : "violated") << '\n';
  out << "h2: " << (outcome.hypotheses.h2 ? "holds" : "violated") << '\n';
  out << "alpha: " << fmt(outcome.hypotheses.alpha) << '\n';
  if (!outcome.hypotheses.h1 || !outcome.hypotheses.h2) {
    outcome.exit_code = kHypothesisViolation;
    return outcome;
  }

  try {
    const KernelContext ctx = KernelContext::make(parsed.a, problem.theta, problem.quad());
    outcome.contraction_factor = contraction_factor(ctx);
    out << "beta: " << fmt(ctx.beta()) << '\n';
    out << "contraction_factor: " << fmt(outcome.contraction_factor) << '\n';

    SolveReport report = picard_solve(parsed.f, ctx, config);
    out << "status: " << to_string(report.status) << '\n';
    out << "iterations: " << report.iterations << '\n';
    if (!report.delta_trace.empty()) out << "final_delta: " << fmt(report.delta_trace.back()) << '\n';
    if (!report.failure.empty()) out << "failure: " << report.failure << '\n';
    out << "sup_norm: " << fmt(report.solution.sup_norm()) << '\n';
    out << "u(0): " << fmt(report.solution[0]) << '\n';
    out << "u(1): " << fmt(report.solution[report.solution.n()]) << '\n';
    out << "trivial: " << yes_no(report.trivial) << '\n';
    out << "residual_integral: " << fmt(report.residual_integral) << '\n';
    if (report.residual_ode) {
      out << "residual_ode_interior: " << fmt(report.residual_ode->interior) << " (tol "
          << fmt_short(report.residual_ode->interior_tol) << ")\n";
      out << "residual_ode_bc: " << fmt(report.residual_ode->bc) << '\n';
    }
    out << "cone_ratio: " << fmt(report.cone.ratio) << " (threshold " << fmt(report.cone.threshold) << ", "
        << (report.cone.satisfied ? "satisfied" : "violated") << ")\n";
    out << "norm_bound: " << fmt(report.norm_bound) << '\n';
    out << "norm_bound_initial: " << fmt(report.norm_bound_initial) << '\n';
    out << "initial_norm: " << fmt(report.initial_norm) << '\n';
    const bool origin = certify_origin_growth(parsed.f, ctx).has_value();
    const bool infinity = certify_infinity_growth(parsed.f, ctx).has_value();
    out << "origin_theorem (f0 = 0): " << (origin ? "applies" : "does not apply") << '\n';
    out << "infinity_theorem (finf = 0): " << (infinity ? "applies" : "does not apply") << '\n';
    if (report.trivial) {
      out << "note: the computed fixed point is u = 0";
      if (origin || infinity) out << " although an existence theorem applies";
      out << "; ||A u|| <= " << fmt_short(outcome.contraction_factor)
          << " sup f(u), so f(u) <= u contracts every iterate toward zero\n";
    }

    if (config.n >= 20) {
      outcome.collocation = collocation_oracle(parsed.f, ctx, config);
      out << "collocation: " << outcome.collocation->status << " after " << outcome.collocation->iterations
          << " Newton steps\n";
      if (outcome.collocation->converged) {
        outcome.oracle_agreement = sup_distance(report.solution, outcome.collocation->solution);
        out << "collocation_agreement: " << fmt(outcome.oracle_agreement) << '\n';
      }
    }

    if (options.csv) {
      std::ofstream file(*options.csv);
      if (!file) throw ArgumentError("cannot write " + options.csv->string());
      write_solution_csv(report, file);
      out << "csv: " << options.csv->string() << '\n';
    }
    if (options.plot_data) {
      std::ofstream file(*options.plot_data);
      if (!file) throw ArgumentError("cannot write " + options.plot_data->string());
      file << "t,u\n";
      for (std::size_t i = 0; i < report.solution.size(); ++i) {
        file << fmt(report.solution.t(i)) << ',' << fmt(report.solution[i]) << '\n';
      }
      out << "plot_data: " << options.plot_data->string() << '\n';
    }

    outcome.exit_code = report.converged() ? kOk : kNonConvergence;
    outcome.report = std::move(report);
  } catch (const HypothesisError& e) {
    out << "error: " << e.what() << '\n';
    outcome.exit_code = kHypothesisViolation;
  }
  return outcome;
}

// ---------------------------------------------------------------- analyze

AnalyzeOutcome run_analyze(const ProblemFile& problem, std::ostream& out, std::string_view label,
                           std::optional<double> theta_override) {
  AnalyzeOutcome outcome;
  bool ok = false;
  const ParsedProblem parsed = parse_expressions(problem, out, ok);
  if (!ok) {
    outcome.exit_code = kParseFailure;
    return outcome;
  }
  const double theta = theta_override.value_or(problem.theta);
  out << "problem: " << label << '\n';
  out << "f: " << parsed.f.to_string() << '\n';
  out << "a: " << parsed.a.to_string() << '\n';
  out << "theta: " << fmt_short(theta) << '\n';

  HypothesisReport report;
  try {
    report = analyze_hypotheses(parsed.f, parsed.a, theta, problem.quad());
  } catch (const HypothesisError& e) {
    out << "h1: violated\n";
    out << "error: " << e.what() << '\n';
    outcome.exit_code = kHypothesisViolation;
    return outcome;
  }
  out << "h1: " << (report.hypotheses.h1 ? "holds" : "violated") << '\n';
  out << "h2: " << (report.hypotheses.h2 ? "holds" : "violated") << '\n';
  out << "alpha: " << fmt(report.alpha) << '\n';
  out << "beta: " << fmt(report.beta) << '\n';
  write_schedule(out, "f0", report.f0);
  write_schedule(out, "finf", report.finf);

  out << "origin_theorem (f0 = 0): " << (report.origin_applicable() ? "applies" : "does not apply") << '\n';
  if (report.origin) {
    out << "  epsilon: " << fmt(report.origin->epsilon) << '\n';
    out << "  rho1: " << fmt(report.origin->rho1) << '\n';
  }
  out << "infinity_theorem (finf = 0): " << (report.infinity_applicable() ? "applies" : "does not apply") << '\n';
  if (report.infinity) {
    const auto& c = *report.infinity;
    if (c.bounded) {
      out << "  case: bounded\n";
      out << "  L: " << fmt(c.L) << '\n';
    } else {
      out << "  case: eventually sublinear\n";
      out << "  eta: " << fmt(c.eta) << '\n';
      out << "  rho2: " << fmt(c.rho2) << '\n';
      out << "  sigma: " << fmt(c.sigma) << '\n';
      out << "  rho_hat2: " << fmt(c.rho_hat2) << '\n';
    }
  }
  out << "superlinear (f0 = 0, finf = inf): " << (report.superlinear ? "holds" : "fails") << '\n';
  out << "sublinear (f0 = inf, finf = 0): " << (report.sublinear ? "holds" : "fails") << '\n';
  outcome.exit_code = (report.hypotheses.h1 && report.hypotheses.h2) ? kOk : kHypothesisViolation;
  outcome.report = std::move(report);
  return outcome;
}

// ---------------------------------------------------------------- examples

const std::vector<BuiltinExample>& builtin_examples() {
  static const std::vector<BuiltinExample> examples = {
      {"example_a",
       "# u'''' + u (1 - e^-u) = 0, u'(0) = u'(1) = u''(0) = 0, u(0) = int_0^1 s^2 u(s) ds\n"
       "f = u*(1-exp(-u))\n"
       "a = t^2\n"
       "theta = 0.25\n"
       "grid_n = 800\n"
       "quad_panels = 200\n"
       "tol = 1e-10\n"
       "max_iter = 500\n"
       "u0 = constant 1\n"},
      {"example_b",
       "# u'''' + 1 - e^-u = 0, u'(0) = u'(1) = u''(0) = 0, u(0) = int_0^1 s^2 u(s) ds\n"
       "f = 1-exp(-u)\n"
       "a = t^2\n"
       "theta = 0.25\n"
       "grid_n = 800\n"
       "quad_panels = 200\n"
       "tol = 1e-10\n"
       "max_iter = 500\n"
       "u0 = constant 1\n"},
  };
  return examples;
}

ReproduceOutcome run_reproduce(const ReproduceOptions& options, std::ostream& out) {
  ReproduceOutcome outcome;
  SolveOptions solve_options;
  solve_options.theta = options.theta;
  solve_options.grid = options.grid;
  for (const auto& example : builtin_examples()) {
    const ProblemFile problem = ProblemFile::parse(example.text);
    out << "== " << example.name << " ==\n";
    AnalyzeOutcome analysis = run_analyze(problem, out, example.name, options.theta);
    out << "--\n";
    SolveOutcome solve = run_solve(problem, solve_options, out, example.name);
    if (outcome.exit_code == kOk) outcome.exit_code = analysis.exit_code != kOk ? analysis.exit_code : solve.exit_code;
    outcome.analyses.push_back(std::move(analysis));
    outcome.solves.push_back(std::move(solve));
  }
  return outcome;
}

// ---------------------------------------------------------------- entry points

int cmd_verify_lemmas(const VerifyOptions& options, std::ostream& out) {
  try {
    return verify_lemmas(options, out).exit_code;
  } catch (const ArgumentError& e) {
    out << "error: " << e.what() << '\n';
    return kParseFailure;
  }
}

namespace {

template <class Fn>
int with_problem(const std::filesystem::path& file, std::ostream& err, Fn&& fn) {
  ProblemFile problem;
  try {
    problem = ProblemFile::load(file);
  } catch (const ParseError& e) {
    err << "error: " << file.string() << ':' << e.offset() << ": " << e.what() << '\n';
    return kParseFailure;
  }
  try {
    return fn(problem);
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << '\n';
    return kHypothesisViolation;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kParseFailure;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  }
}

}  // namespace

int cmd_solve(const std::filesystem::path& file, const SolveOptions& options, std::ostream& out, std::ostream& err) {
  return with_problem(file, err, [&](const ProblemFile& problem) {
    return run_solve(problem, options, out, file.string()).exit_code;
  });
}

int cmd_analyze(const std::filesystem::path& file, std::ostream& out, std::ostream& err) {
  return with_problem(file, err, [&](const ProblemFile& problem) {
    return run_analyze(problem, out, file.string()).exit_code;
  });
}

int cmd_reproduce_examples(const ReproduceOptions& options, std::ostream& out) {
  try {
    return run_reproduce(options, out).exit_code;
  } catch (const ArgumentError& e) {
    out << "error: " << e.what() << '\n';
    return kParseFailure;
  }
}

}  // namespace nlbeam::cli
