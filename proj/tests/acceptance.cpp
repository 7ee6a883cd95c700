// One line per acceptance criterion; nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nlbeam/commands.hpp"
#include "nlbeam/hypothesis.hpp"
#include "nlbeam/kernel.hpp"
#include "nlbeam/linear.hpp"
#include "nlbeam/quadrature.hpp"
#include "nlbeam/solver.hpp"

using namespace nlbeam;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fixture(const char* name) { return std::string(NLBEAM_FIXTURES_DIR) + "/" + name + ".problem"; }

ExpressionFn fn(const char* src) { return ExpressionFn::parse(src, 'u'); }
ExpressionFn weight(const char* src) { return ExpressionFn::parse(src, 't'); }

double node(int i, int m) { return double(i) / m; }

Verdict kernel_nonnegativity() {
  double lo = INFINITY;
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j <= 200; ++j) lo = std::min(lo, green(node(i, 200), node(j, 200)));
  }
  return {lo >= -1e-14, "min G = " + num(lo)};
}

Verdict kernel_two_sided_bound() {
  double worst = -INFINITY;
  for (double theta : {0.1, 0.25, 0.4}) {
    const double c = theta * theta * theta;
    for (int i = 0; i <= 200; ++i) {
      const double t = node(i, 200);
      if (t < theta || t > 1 - theta) continue;
      for (int j = 0; j <= 200; ++j) {
        const double s = node(j, 200);
        worst = std::max({worst, c * g_weight(s) - green(t, s), green(t, s) - g_weight(s)});
      }
    }
  }
  return {worst <= 1e-12, "max violation = " + num(std::max(worst, 0.0))};
}

Verdict boundary_identity() {
  double worst = 0;
  for (int j = 0; j <= 200; ++j) worst = std::max(worst, std::abs(green(1.0, node(j, 200)) - g_weight(node(j, 200))));
  return {worst < 1e-14, "max |G(1,s) - g(s)| = " + num(worst)};
}

Verdict linear_oracle() {
  const auto ctx = KernelContext::make(weight("t^2"));
  const auto u = solve_linear(GridFunction::constant(2000, 1.0), ctx);
  double err = 0;
  for (std::size_t i = 0; i <= 2000; ++i) {
    const double t = u.t(i);
    err = std::max(err, std::abs(u[i] - (-t * t * t * t / 24 + t * t * t / 18 + 5.0 / 1008)));
  }
  const double e0 = std::abs(u[0] - 5.0 / 1008), e1 = std::abs(u[2000] - 19.0 / 1008);
  return {err < 1e-8 && e0 < 1e-8 && e1 < 1e-8, "sup error = " + num(err) + ", |u(0)-5/1008| = " + num(e0) +
                                                      ", |u(1)-19/1008| = " + num(e1)};
}

Verdict cone_inequality() {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coeff(0.0, 1.0);
  int satisfied = 0, total = 0;
  double worst_ratio = INFINITY;
  std::vector<std::array<double, 5>> loads(20);
  for (auto& c : loads) {
    for (double& x : c) x = coeff(rng);
  }
  for (double theta : {0.1, 0.25, 0.4}) {
    const auto ctx = KernelContext::make(weight("t^2"), theta);
    const KernelMatrix m(ctx, 400);
    for (const auto& c : loads) {
      const auto y = GridFunction::sample(400, [&](double t) {
        const double s = 1 - t;
        return c[0] * s * s * s * s + 4 * c[1] * t * s * s * s + 6 * c[2] * t * t * s * s + 4 * c[3] * t * t * t * s +
               c[4] * t * t * t * t;
      });
      const auto cone = cone_ratio(solve_linear(y, m), ctx);
      ++total;
      if (cone.satisfied) ++satisfied;
      worst_ratio = std::min(worst_ratio, cone.ratio / cone.threshold);
    }
  }
  return {satisfied == total, std::to_string(satisfied) + "/" + std::to_string(total) +
                                  " satisfied, min ratio/threshold = " + num(worst_ratio)};
}

Verdict operator_bound() {
  const auto ctx = KernelContext::make(weight("t^2"));
  const KernelMatrix m(ctx, 400);
  const char* fs[] = {"u", "u^2", "1", "1+u"};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> c(0.0, 3.0);
  int held = 0;
  double worst = -INFINITY;
  for (int k = 0; k < 20; ++k) {
    const double p = c(rng), q = c(rng), r = c(rng), w = 1 + c(rng) * 5;
    const auto u = GridFunction::sample(400, [&](double t) { return p + q * t * t * t + r * std::pow(std::sin(w * t), 2); });
    const auto nb = norm_bound_check(u, fn(fs[k % 4]), m);
    if (nb.operator_norm <= nb.bound + 1e-10) ++held;
    worst = std::max(worst, nb.operator_norm - nb.bound);
  }
  return {held == 20, std::to_string(held) + "/20 hold, max(||Au|| - bound) = " + num(worst)};
}

Verdict cross_oracle() {
  const auto ctx = KernelContext::make(weight("t^2"));
  SolveConfig config;
  config.n = 800;
  const auto f = fn("1+u");
  const auto picard = picard_solve(f, ctx, config);
  const auto colloc = collocation_oracle(f, ctx, config);
  if (!picard.converged() || !colloc.converged) return {false, "a solver did not converge"};
  const double gap = sup_distance(picard.solution, colloc.solution);
  const auto rp = *picard.residual_ode;
  const auto rc = residual_ode(colloc.solution, f, ctx);
  const bool ok = gap < 1e-6 && rp.interior_ok() && rp.bc_ok() && rc.interior_ok() && rc.bc_ok();
  return {ok, "sup gap = " + num(gap) + ", picard interior/bc = " + num(rp.interior) + "/" + num(rp.bc) +
                  " (tol " + num(rp.interior_tol) + "), collocation interior/bc = " + num(rc.interior) + "/" +
                  num(rc.bc) + " (tol " + num(rc.interior_tol) + ")"};
}

Verdict example_one_analysis() {
  const auto ctx = KernelContext::make(weight("t^2"));
  const auto f = fn("u*(1-exp(-u))");
  const auto f0 = estimate_f0(f), finf = estimate_finf(f);
  const auto cert = certify_origin_growth(f, ctx);
  if (!cert) return {false, "no certificate"};
  const bool eps_exact = cert->epsilon == 1.0 - ctx.alpha() && std::abs(cert->epsilon - 2.0 / 3.0) < 1e-14;
  const double drho = std::abs(cert->rho1 - std::log(3.0));
  const bool ok = f0.value < 1e-4 && std::abs(finf.value - 1.0) < 1e-3 && eps_exact && drho < 1e-6;
  return {ok, "f0 = " + num(f0.value) + ", finf = " + num(finf.value) + ", eps - 2/3 = " +
                  num(cert->epsilon - 2.0 / 3.0) + ", |rho1 - ln 3| = " + num(drho)};
}

Verdict example_two_analysis() {
  const auto ctx = KernelContext::make(weight("t^2"));
  const auto f = fn("1-exp(-u)");
  const auto f0 = estimate_f0(f), finf = estimate_finf(f);
  const auto cert = certify_infinity_growth(f, ctx);
  if (!cert) return {false, "no certificate"};
  const double dl = std::abs(cert->L - 1.0);
  const bool ok = finf.value < 1e-4 && std::abs(f0.value - 1.0) < 1e-3 && cert->bounded && dl <= 1e-6;
  return {ok, "finf = " + num(finf.value) + ", f0 = " + num(f0.value) + ", bounded = " +
                  (cert->bounded ? "yes" : "no") + ", |L - 1| = " + num(dl)};
}

Verdict example_solves() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"example_a", "example_b"}) {
    const auto problem = ProblemFile::load(fixture(name));
    std::ostringstream sink;
    const auto outcome = cli::run_solve(problem, {}, sink, name);
    if (!outcome.report) return {false, std::string(name) + ": no report"};
    const auto& r = *outcome.report;
    const double u0_norm = r.initial_norm;
    const bool this_ok = r.converged() && r.iterations <= 500 && r.delta_trace.back() < 1e-10 &&
                         r.solution.sup_norm() < 1e-8;
    ok = ok && this_ok;
    detail += std::string(name) + ": iterations = " + std::to_string(r.iterations) + ", ||u|| = " +
              num(r.solution.sup_norm());
    if (std::string(name) == "example_a") {
      const bool bound_ok = r.norm_bound_initial <= u0_norm / 48 && r.norm_bound <= u0_norm / 48;
      ok = ok && bound_ok;
      detail += ", bound at u0 = " + num(r.norm_bound_initial) + " <= " + num(u0_norm / 48);
    }
    detail += "; ";
  }
  return {ok, detail};
}

Verdict grid_self_consistency() {
  const auto problem = ProblemFile::load(fixture("affine"));
  std::ostringstream sink;
  cli::SolveOptions coarse, fine;
  coarse.grid = 200;
  fine.grid = 1600;
  const auto a = cli::run_solve(problem, coarse, sink, "affine");
  const auto b = cli::run_solve(problem, fine, sink, "affine");
  if (!a.report || !b.report || a.exit_code != 0 || b.exit_code != 0) return {false, "solve failed"};
  double gap = 0;
  for (std::size_t i = 0; i <= 200; ++i) gap = std::max(gap, std::abs(a.report->solution[i] - b.report->solution[8 * i]));
  return {gap < 1e-6, "sup |u_200 - u_1600| = " + num(gap)};
}

Verdict quadrature_values() {
  const double e1 = std::abs(integrate([](double s) { return s * s; }, 0, 1) - 1.0 / 3.0);
  const double e2 = std::abs(integrate(g_weight, 0, 1) - 1.0 / 72.0);
  const double e3 = std::abs(KernelContext::make(weight("t^2"), 0.25).beta() - 13.0 / 96.0);
  return {e1 < 1e-12 && e2 < 1e-12 && e3 < 1e-12,
          "errors: int s^2 " + num(e1) + ", int g " + num(e2) + ", beta " + num(e3)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"kernel nonnegativity", kernel_nonnegativity},
      {"kernel two-sided bound", kernel_two_sided_bound},
      {"boundary identity", boundary_identity},
      {"linear oracle", linear_oracle},
      {"cone inequality", cone_inequality},
      {"operator bound", operator_bound},
      {"cross-oracle solve", cross_oracle},
      {"first example analysis", example_one_analysis},
      {"second example analysis", example_two_analysis},
      {"example solves", example_solves},
      {"grid self-consistency", grid_self_consistency},
      {"quadrature", quadrature_values},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v{false, ""};
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("[%s] %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, v.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
