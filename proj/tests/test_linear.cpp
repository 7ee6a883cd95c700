#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nlbeam/band.hpp"
#include "nlbeam/error.hpp"
#include "nlbeam/kernel.hpp"
#include "nlbeam/linear.hpp"

using namespace nlbeam;

namespace {

KernelContext ctx_of(const char* a, double theta = 0.25) { return KernelContext::make(ExpressionFn::parse(a, 't'), theta); }

Polynomial derivative(const Polynomial& p) {
  Polynomial d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<std::int64_t>(k)));
  if (d.empty()) d.push_back(0);
  return d;
}

Polynomial binomial_power(Rational c, int i, int j) {  // c t^i (1-t)^j
  Polynomial p{c};
  for (int k = 0; k < i; ++k) p = multiply(p, {0, 1});
  for (int k = 0; k < j; ++k) p = multiply(p, {1, -1});
  return p;
}

Polynomial add(Polynomial a, const Polynomial& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k] += b[k];
  return a;
}

std::string poly_expr(const Polynomial& p) {
  std::string s = "0";
  for (std::size_t k = 0; k < p.size(); ++k) {
    s += "+(" + std::to_string(p[k].num()) + "/" + std::to_string(p[k].den()) + ")*t^" + std::to_string(k);
  }
  return s;
}

// Random nonnegative y of degree 4 in Bernstein form and a weight with
// 0 < int a < 1, both with small rational coefficients.
std::pair<Polynomial, Polynomial> random_pair(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(0, 9), den(1, 7), wnum(0, 3);
  const int binom[] = {1, 4, 6, 4, 1};
  Polynomial y{0};
  for (int k = 0; k <= 4; ++k) y = add(y, binomial_power(Rational(binom[k] * num(rng), den(rng)), k, 4 - k));
  Polynomial a{Rational(1 + wnum(rng), 8), Rational(wnum(rng), 8), Rational(wnum(rng), 8)};
  return {y, a};
}

}  // namespace

TEST_SUITE("linear") {
  TEST_CASE("rational arithmetic") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(3, 4) * Rational(4, 3) == Rational(1));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(5, 1008).to_string() == "5/1008");
    CHECK_THROWS_AS(Rational(1, 0), NumericError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), NumericError);
    CHECK_THROWS_AS(Rational(INT64_MAX / 2) * Rational(4), NumericError);
  }

  TEST_CASE("polynomial oracle for the constant load") {
    const Polynomial u = polynomial_oracle({1}, {0, 0, 1});
    REQUIRE(u.size() == 5);
    CHECK(u[0] == Rational(5, 1008));
    CHECK(u[1] == Rational(0));
    CHECK(u[2] == Rational(0));
    CHECK(u[3] == Rational(1, 18));
    CHECK(u[4] == Rational(-1, 24));
    CHECK(eval_poly(u, Rational(1)) == Rational(19, 1008));
    CHECK(eval_poly(u, Rational(1, 4)) == Rational(731, 129024));
    const Polynomial v = polynomial_oracle({24}, {0, 0, 1});
    CHECK(v[0] == Rational(5, 42));
    CHECK(v[3] == Rational(4, 3));
    CHECK(v[4] == Rational(-1));
    CHECK_THROWS_AS(polynomial_oracle({1}, {0, 2}), HypothesisError);
  }

  TEST_CASE("solve_linear against the closed form at n = 2000") {
    const auto ctx = ctx_of("t^2");
    const auto u = solve_linear(GridFunction::constant(2000, 1.0), ctx);
    const auto exact = [](double t) { return -t * t * t * t / 24 + t * t * t / 18 + 5.0 / 1008; };
    double err = 0;
    for (std::size_t i = 0; i <= 2000; ++i) err = std::max(err, std::abs(u[i] - exact(u.t(i))));
    CHECK(err < 1e-8);
    CHECK(std::abs(u[0] - 5.0 / 1008) < 1e-8);
    CHECK(std::abs(u[2000] - 19.0 / 1008) < 1e-8);
    CHECK(std::abs(u[500] - 731.0 / 129024) < 1e-8);
  }

  TEST_CASE("property: oracle polynomials satisfy the boundary value problem exactly") {
    std::mt19937 rng(2024);
    for (int k = 0; k < 10; ++k) {
      const auto [y, a] = random_pair(rng);
      const Polynomial u = polynomial_oracle(y, a);
      const Polynomial d1 = derivative(u), d2 = derivative(d1), d4 = derivative(derivative(d2));
      for (std::size_t j = 0; j < std::max(d4.size(), y.size()); ++j) {
        const Rational lhs = j < d4.size() ? d4[j] : Rational(0);
        const Rational rhs = j < y.size() ? -y[j] : Rational(0);
        CHECK(lhs == rhs);
      }
      CHECK(eval_poly(d1, Rational(0)) == Rational(0));
      CHECK(eval_poly(d1, Rational(1)) == Rational(0));
      CHECK(eval_poly(d2, Rational(0)) == Rational(0));
      CHECK(eval_poly(u, Rational(0)) == integrate_poly(multiply(a, u)));
    }
  }

  TEST_CASE("property: Nystrom solve matches random rational oracles at n = 2000") {
    std::mt19937 rng(2024);
    for (int k = 0; k < 10; ++k) {
      const auto [y, a] = random_pair(rng);
      const Polynomial u = polynomial_oracle(y, a);
      const auto ctx = KernelContext::make(ExpressionFn::parse(poly_expr(a), 't'));
      const auto yg = GridFunction::sample(2000, [&](double t) { return eval_poly(y, t); });
      const auto ug = solve_linear(yg, ctx);
      double err = 0;
      for (std::size_t i = 0; i <= 2000; ++i) err = std::max(err, std::abs(ug[i] - eval_poly(u, ug.t(i))));
      CHECK(err < 1e-8);
    }
  }

  TEST_CASE("matrix entries are nonnegative and dominated by the bound weights") {
    const auto ctx = ctx_of("t^2");
    const KernelMatrix m(ctx, 64);
    const auto b = m.bound_weights();
    for (std::size_t i = 0; i <= 64; ++i) {
      for (std::size_t j = 0; j <= 64; ++j) {
        REQUIRE(m(i, j) >= 0.0);
        REQUIRE(m(i, j) <= b[j] * (1 + 1e-14));
      }
    }
    CHECK_THROWS_AS(KernelMatrix(ctx, 1), ArgumentError);
    CHECK_THROWS_AS(solve_linear(GridFunction::constant(10, 1.0), m), ArgumentError);
  }

  TEST_CASE("property: linearity, nonnegativity and the cone") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> c(0.0, 1.0);
    for (double theta : {0.1, 0.25, 0.4}) {
      const auto ctx = ctx_of("t^2", theta);
      const KernelMatrix m(ctx, 400);
      for (int k = 0; k < 5; ++k) {
        const double p = c(rng), q = c(rng), r = c(rng);
        const auto y1 = GridFunction::sample(400, [&](double t) { return p + q * t * t; });
        const auto y2 = GridFunction::sample(400, [&](double t) { return r * std::exp(-t); });
        const auto y12 = GridFunction::sample(400, [&](double t) { return 2 * (p + q * t * t) + 3 * r * std::exp(-t); });
        const auto u1 = solve_linear(y1, m), u2 = solve_linear(y2, m), u12 = solve_linear(y12, m);
        for (std::size_t i = 0; i <= 400; ++i) {
          CHECK(u12[i] == doctest::Approx(2 * u1[i] + 3 * u2[i]).epsilon(1e-13));
        }
        CHECK(u1.nonneg());
        CHECK(cone_ratio(u1, ctx).satisfied);
        CHECK(cone_ratio(u12, ctx).satisfied);
      }
    }
  }

  TEST_CASE("boundary conditions of the discrete solution at n = 2000") {
    const auto ctx = ctx_of("t^2");
    const std::size_t n = 2000;
    const auto u = solve_linear(GridFunction::sample(n, [](double t) { return 1 + t; }), ctx);
    const double h = 1.0 / n;
    // One-sided 4-point differences of order 3.
    CHECK(std::abs((-11 * u[0] + 18 * u[1] - 9 * u[2] + 2 * u[3]) / (6 * h)) < 1e-6);
    CHECK(std::abs((11 * u[n] - 18 * u[n - 1] + 9 * u[n - 2] - 2 * u[n - 3]) / (6 * h)) < 1e-6);
    CHECK(std::abs((2 * u[0] - 5 * u[1] + 4 * u[2] - u[3]) / (h * h)) < 1e-6);
    const auto au = GridFunction::sample(n, [&](double t) { return t * t * u.interpolate(t); });
    CHECK(std::abs(u[0] - integrate_grid(au)) < 1e-8);
  }

  TEST_CASE("zero load and zero oracle") {
    const auto u = solve_linear(GridFunction::zeros(50), ctx_of("t^2"));
    CHECK(u.sup_norm() == 0.0);
    const Polynomial p = polynomial_oracle({0}, {Rational(1, 2)});
    for (const auto& c : p) CHECK(c == Rational(0));
  }

  TEST_CASE("cone values for the constant load") {
    const auto ctx = ctx_of("t^2");
    const auto cone = cone_ratio(solve_linear(GridFunction::constant(2000, 1.0), ctx), ctx);
    CHECK(std::abs(cone.min_inner - 731.0 / 129024) < 1e-8);
    CHECK(cone.threshold * cone.norm == doctest::Approx((77.0 / 96) * (1.0 / 64) * (19.0 / 1008)).epsilon(1e-8));
    CHECK(cone.satisfied);
    const auto ramp = cone_ratio(GridFunction::sample(2000, [](double t) { return t; }), ctx);
    CHECK(ramp.min_inner == doctest::Approx(0.25));
    CHECK(ramp.satisfied);
  }

  TEST_CASE("scaling is exact to rounding") {
    const auto ctx = ctx_of("t^2");
    const KernelMatrix m(ctx, 300);
    const auto y = GridFunction::sample(300, [](double t) { return std::exp(t) + t; });
    const auto cy = GridFunction::sample(300, [](double t) { return 7.5 * (std::exp(t) + t); });
    const auto u = solve_linear(y, m), cu = solve_linear(cy, m);
    for (std::size_t i = 0; i <= 300; ++i) CHECK(cu[i] == doctest::Approx(7.5 * u[i]).epsilon(1e-12));
  }

  TEST_CASE("cone bookkeeping") {
    const auto ctx = ctx_of("t^2");
    CHECK(inner_range(8, 0.25) == std::pair<std::size_t, std::size_t>{2, 6});
    CHECK(inner_range(10, 0.25) == std::pair<std::size_t, std::size_t>{2, 8});
    const auto zero = cone_ratio(GridFunction::zeros(10), ctx);
    CHECK(zero.ratio == 0.0);
    CHECK(zero.satisfied);
    const auto spike = cone_ratio(GridFunction::sample(10, [](double t) { return t > 0.95 ? 1.0 : 0.0; }), ctx);
    CHECK_FALSE(spike.satisfied);
    CHECK(spike.threshold == doctest::Approx(77.0 / 6144.0));
  }

  TEST_CASE("banded solver reproduces a dense product") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const std::size_t size = 40, kl = 4, ku = 3;
    BandMatrix band(size, kl, ku);
    std::vector<std::vector<double>> dense(size, std::vector<double>(size, 0.0));
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = (i >= kl ? i - kl : 0); j <= std::min(size - 1, i + ku); ++j) {
        const double v = d(rng) + (i == j ? 0.1 : 0.0);
        band.at(i, j) = v;
        dense[i][j] = v;
      }
    }
    std::vector<double> x(size), b(size, 0.0);
    for (auto& v : x) v = d(rng);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) b[i] += dense[i][j] * x[j];
    }
    band.factor();
    band.solve(b);
    for (std::size_t i = 0; i < size; ++i) CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-9));
    BandMatrix singular(3, 1, 1);
    CHECK_THROWS_AS(singular.factor(), NumericError);
    CHECK_THROWS_AS(band.at(0, 10), ArgumentError);
  }
}
