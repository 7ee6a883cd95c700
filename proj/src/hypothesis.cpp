#include "nlbeam/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nlbeam/error.hpp"

namespace nlbeam {

namespace {

constexpr std::size_t kScanPoints = 10000;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double nonneg_f(const ExpressionFn& f, double u) {
  const double v = f(u);
  if (v < 0.0) throw HypothesisError(Hypothesis::H1, "f(" + fmt(u) + ") = " + fmt(v) + " < 0");
  return v;
}

LimitEstimate estimate_on(const ExpressionFn& f, int first_exp, int last_exp, int sign) {
  LimitEstimate est;
  for (int k = first_exp; k <= last_exp; ++k) {
    const double u = std::pow(10.0, sign * k);
    double ratio = 0.0;
    try {
      ratio = nonneg_f(f, u) / u;
    } catch (const NumericError&) {
      est.divergent = true;
      break;
    }
    est.schedule.emplace_back(u, ratio);
  }
  if (est.schedule.empty()) return est;
  const std::size_t m = est.schedule.size();
  est.value = est.schedule.back().second;
  if (m >= 2) {
    const double prev = est.schedule[m - 2].second;
    est.converged = !est.divergent && std::fabs(est.value - prev) < 1e-4 * (1.0 + std::fabs(est.value));
  }
  if (!est.divergent && m >= 3 && est.value >= 1e8) {
    est.divergent = est.schedule[m - 3].second < est.schedule[m - 2].second && est.schedule[m - 2].second < est.value;
  }
  if (est.divergent) {
    est.converged = false;
    est.value = std::numeric_limits<double>::infinity();
  }
  return est;
}

// Maximizes f on [lo, hi] by golden-section search.
double refine_max(const ExpressionFn& f, double lo, double hi) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  double best = std::max({f(lo), f(hi), fc, fd});
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
    best = std::max({best, fc, fd});
  }
  return best;
}

}  // namespace

std::vector<double> log_scan(double lo, double hi, std::size_t count) {
  std::vector<double> pts(count);
  pts[0] = 0.0;
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (std::size_t k = 1; k < count; ++k) {
    const double frac = static_cast<double>(k - 1) / static_cast<double>(count - 2);
    pts[k] = std::pow(10.0, llo + frac * (lhi - llo));
  }
  pts[count - 1] = hi;
  return pts;
}

LimitEstimate estimate_f0(const ExpressionFn& f) { return estimate_on(f, 1, 12, -1); }

LimitEstimate estimate_finf(const ExpressionFn& f) { return estimate_on(f, 1, 8, +1); }

std::optional<OriginCertificate> certify_origin_growth(const ExpressionFn& f, const KernelContext& ctx) {
  if (!estimate_f0(f).is_zero()) return std::nullopt;
  OriginCertificate cert;
  cert.epsilon = 1.0 - ctx.alpha();
  const double eps = cert.epsilon;
  auto admissible = [&](double u) { return nonneg_f(f, u) <= eps * u; };

  const auto pts = log_scan(1e-12, 1e3, kScanPoints);
  std::size_t first_bad = pts.size();
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (!admissible(pts[k])) {
      first_bad = k;
      break;
    }
  }
  if (first_bad == pts.size()) {
    cert.rho1 = pts.back();
  } else {
    if (first_bad == 1) return std::nullopt;
    double lo = pts[first_bad - 1], hi = pts[first_bad];
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (admissible(mid) ? lo : hi) = mid;
    }
    cert.rho1 = lo;
  }
  if (cert.rho1 < 1e-6) return std::nullopt;
  return cert;
}

std::optional<InfinityCertificate> certify_infinity_growth(const ExpressionFn& f, const KernelContext& ctx) {
  if (!estimate_finf(f).is_zero()) return std::nullopt;
  const auto pts = log_scan(1e-12, 1e6, kScanPoints);
  std::vector<double> vals(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) vals[k] = nonneg_f(f, pts[k]);

  double lower_max = 0.0, all_max = 0.0;
  std::size_t argmax = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (pts[k] <= 1e5) lower_max = std::max(lower_max, vals[k]);
    if (vals[k] > all_max) {
      all_max = vals[k];
      argmax = k;
    }
  }

  InfinityCertificate cert;
  // Bounded when the last decade of the probe adds nothing to the supremum.
  if (all_max <= lower_max * (1.0 + 1e-6)) {
    cert.bounded = true;
    const double lo = pts[argmax == 0 ? 0 : argmax - 1];
    const double hi = pts[std::min(argmax + 1, pts.size() - 1)];
    const double sup = std::max(all_max, refine_max(f, lo, hi));
    cert.L = std::max(sup * (1.0 + 1e-6), std::numeric_limits<double>::min());
    return cert;
  }

  cert.eta = 1.0 - ctx.alpha();
  if (vals.back() > cert.eta * pts.back()) return std::nullopt;
  std::size_t tail = pts.size() - 1;
  while (tail > 0 && vals[tail - 1] <= cert.eta * pts[tail - 1]) --tail;
  cert.rho2 = tail >= 2 ? pts[tail - 1] : pts[1];
  double head_max = 0.0;
  for (std::size_t k = 0; k < pts.size() && pts[k] <= cert.rho2; ++k) head_max = std::max(head_max, vals[k]);
  cert.sigma = head_max / cert.eta;
  cert.rho_hat2 = std::max(cert.sigma, cert.rho2);
  return cert;
}

HypothesisCheck check_h1_h2(const ExpressionFn& f, const ExpressionFn& a, const QuadratureSettings& quad) {
  HypothesisCheck c;
  c.h1 = true;
  try {
    for (double u : log_scan(1e-12, 1e6, kScanPoints)) {
      if (!(f(u) >= 0.0)) {
        c.h1 = false;
        break;
      }
    }
  } catch (const NumericError&) {
    c.h1 = false;
  }
  try {
    c.alpha = integrate([&a](double t) { return a(t); }, 0.0, 1.0, quad);
    (void)KernelContext::make(a, KernelContext::kDefaultTheta, quad);
    c.h2 = true;
  } catch (const HypothesisError&) {
    c.h2 = false;
  } catch (const NumericError&) {
    c.h2 = false;
    c.alpha = std::numeric_limits<double>::quiet_NaN();
  }
  return c;
}

HypothesisReport analyze_hypotheses(const ExpressionFn& f, const ExpressionFn& a, double theta,
                                    const QuadratureSettings& quad) {
  HypothesisReport r;
  r.hypotheses = check_h1_h2(f, a, quad);
  r.alpha = r.hypotheses.alpha;
  r.f0 = estimate_f0(f);
  r.finf = estimate_finf(f);
  r.superlinear = r.f0.is_zero() && r.finf.divergent;
  r.sublinear = r.f0.divergent && r.finf.is_zero();
  if (r.hypotheses.h2) {
    const auto ctx = KernelContext::make(a, theta, quad);
    r.beta = ctx.beta();
    r.origin = certify_origin_growth(f, ctx);
    r.infinity = certify_infinity_growth(f, ctx);
  } else {
    r.beta = integrate([&a](double t) { return a(t); }, theta, 1.0 - theta, quad);
  }
  return r;
}

}  // namespace nlbeam
