#include <doctest.h>

#include "nlbeam/error.hpp"
#include "nlbeam/problem.hpp"

using namespace nlbeam;

namespace {

std::size_t error_line(const char* text) {
  try {
    (void)ProblemFile::parse(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  FAIL("no ParseError");
  return 0;
}

}  // namespace

TEST_SUITE("problem") {
  TEST_CASE("full file") {
    const auto p = ProblemFile::parse(
        "# comment\n"
        "f = u*(1-exp(-u))   # trailing\n"
        "\n"
        "a=t^2\n"
        "theta = 0.1\n"
        "grid_n = 64\n"
        "quad_panels = 50\n"
        "quad_rule = gauss5\n"
        "tol = 1e-12\n"
        "max_iter = 20\n"
        "relaxation = 0.5\n"
        "u0 = constant 2\n");
    CHECK(p.f == "u*(1-exp(-u))");
    CHECK(p.a == "t^2");
    CHECK(p.theta == 0.1);
    CHECK(p.grid_n == 64);
    CHECK(p.quad().panels == 50);
    CHECK(p.quad().rule == QuadRule::Gauss5);
    const auto c = p.solve_config();
    CHECK(c.n == 64);
    CHECK(c.tol == 1e-12);
    CHECK(c.max_iter == 20);
    CHECK(c.relaxation == 0.5);
    CHECK(c.u0.kind == InitialGuess::Kind::Constant);
  }

  TEST_CASE("defaults") {
    const auto p = ProblemFile::parse("f = 1\na = t^2\n");
    CHECK(p.theta == 0.25);
    CHECK(p.grid_n == 800);
    CHECK(p.quad().panels == 200);
    CHECK(p.u0 == "zero");
  }

  TEST_CASE("errors report the line") {
    CHECK(error_line("f = 1\na = t\nbogus = 3\n") == 3);
    CHECK(error_line("f = 1\nf = 2\na = t\n") == 2);
    CHECK_THROWS_AS(ProblemFile::parse("f = 1\n"), ParseError);
    CHECK_THROWS_AS(ProblemFile::parse("a = t\n"), ParseError);
    CHECK(error_line("f = 1\na = t\ngrid_n = 8\n") == 3);
    CHECK(error_line("f = 1\na = t\ngrid_n = many\n") == 3);
    CHECK(error_line("f = 1\na = t\ntheta = 0.7\n") == 3);
    CHECK(error_line("f 1\na = t\n") == 1);
    CHECK(error_line("f = \na = t\n") == 1);
    CHECK_THROWS_AS(ProblemFile::load("/nonexistent/file.problem"), ParseError);
  }

  TEST_CASE("fixtures load") {
    for (const char* name : {"example_a", "example_b", "constant_load", "affine", "quadratic", "bad_h1", "bad_h2",
                             "bad_syntax", "slow_iteration"}) {
      CHECK_NOTHROW(ProblemFile::load(std::string(NLBEAM_FIXTURES_DIR) + "/" + name + ".problem"));
    }
  }
}
