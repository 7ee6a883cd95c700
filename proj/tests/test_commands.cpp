#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nlbeam/commands.hpp"

using namespace nlbeam;
using namespace nlbeam::cli;

namespace {

std::string fixture(const char* name) { return std::string(NLBEAM_FIXTURES_DIR) + "/" + name + ".problem"; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const char* name) { return std::filesystem::temp_directory_path() / name; }

std::string without_paths(const std::string& text) {
  std::istringstream in(text);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.rfind("csv:", 0) != 0 && line.rfind("plot_data:", 0) != 0) kept += line + '\n';
  }
  return kept;
}

}  // namespace

TEST_SUITE("commands") {
  TEST_CASE("verify-lemmas passes on the true kernel and fails on the corrupted one") {
    std::ostringstream out;
    const auto ok = verify_lemmas({}, out);
    CHECK(ok.exit_code == kOk);
    CHECK(ok.rows.size() == 2 + 3 + 3);
    CHECK(out.str().find("result: PASS") != std::string::npos);

    VerifyOptions corrupt;
    corrupt.corrupt_kernel = true;
    std::ostringstream bad;
    const auto fail = verify_lemmas(corrupt, bad);
    CHECK(fail.exit_code == kLemmaViolation);
    CHECK_FALSE(fail.rows[0].pass);
    CHECK(fail.rows[0].max_violation > 0.0);

    VerifyOptions wrong;
    wrong.thetas = {0.6};
    std::ostringstream sink;
    CHECK(cmd_verify_lemmas(wrong, sink) == kParseFailure);
  }

  TEST_CASE("solve exit codes on fixtures") {
    std::ostringstream out, err;
    SolveOptions options;
    options.csv = scratch("nlbeam_exit.csv");
    CHECK(cmd_solve(fixture("affine"), options, out, err) == kOk);
    CHECK(cmd_solve(fixture("bad_h1"), options, out, err) == kHypothesisViolation);
    CHECK(cmd_solve(fixture("bad_h2"), options, out, err) == kHypothesisViolation);
    CHECK(cmd_solve(fixture("bad_syntax"), options, out, err) == kParseFailure);
    CHECK(cmd_solve(fixture("no_such_file"), options, out, err) == kParseFailure);
    CHECK(cmd_solve(fixture("slow_iteration"), options, out, err) == kNonConvergence);
    options.u0 = "constant -";
    CHECK(cmd_solve(fixture("affine"), options, out, err) == kParseFailure);
  }

  TEST_CASE("solution CSV layout and reproducibility") {
    const auto problem = ProblemFile::load(fixture("affine"));
    SolveOptions options;
    options.grid = 100;
    options.csv = scratch("nlbeam_a.csv");
    options.plot_data = scratch("nlbeam_plot.csv");
    std::ostringstream out1, out2;
    const auto first = run_solve(problem, options, out1, "affine");
    REQUIRE(first.exit_code == kOk);
    const std::string csv = slurp(*options.csv);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t,u,Au,fourth_diff_residual");
    std::size_t rows = 0, empty_residual = 0;
    while (std::getline(lines, line)) {
      ++rows;
      if (line.back() == ',') ++empty_residual;
    }
    CHECK(rows == 101);
    CHECK(empty_residual == 4);
    CHECK(slurp(*options.plot_data).rfind("t,u\n", 0) == 0);

    options.csv = scratch("nlbeam_b.csv");
    const auto second = run_solve(problem, options, out2, "affine");
    CHECK(slurp(*options.csv) == csv);
    CHECK(without_paths(out1.str()) == without_paths(out2.str()));
  }

  TEST_CASE("solve summary reports the oracle cross-check") {
    const auto problem = ProblemFile::load(fixture("affine"));
    std::ostringstream out;
    const auto outcome = run_solve(problem, {}, out, "affine");
    REQUIRE(outcome.report.has_value());
    REQUIRE(outcome.collocation.has_value());
    CHECK(outcome.oracle_agreement < 1e-6);
    CHECK(outcome.contraction_factor == doctest::Approx(1.0 / 48.0).epsilon(1e-12));
    CHECK(out.str().find("collocation_agreement:") != std::string::npos);
    CHECK(out.str().find("norm_bound:") != std::string::npos);
  }

  TEST_CASE("verify-lemmas near the theta boundary") {
    VerifyOptions options;
    options.thetas = {0.49};
    options.grid = 401;
    std::ostringstream out;
    CHECK(verify_lemmas(options, out).exit_code == kOk);
  }

  TEST_CASE("constant load through the command") {
    std::ostringstream out, err;
    const auto problem = ProblemFile::load(fixture("constant_load"));
    const auto outcome = run_solve(problem, {}, out, "constant_load");
    REQUIRE(outcome.exit_code == kOk);
    const auto& u = outcome.report->solution;
    CHECK(std::abs(u[0] - 5.0 / 1008) < 1e-8);
    CHECK(std::abs(u[u.n()] - 19.0 / 1008) < 1e-8);
  }

  TEST_CASE("non-convergence still writes the CSV") {
    SolveOptions options;
    options.csv = scratch("nlbeam_slow.csv");
    std::filesystem::remove(*options.csv);
    std::ostringstream out, err;
    CHECK(cmd_solve(fixture("slow_iteration"), options, out, err) == kNonConvergence);
    CHECK(std::filesystem::exists(*options.csv));
    CHECK(out.str().find("status: max_iterations") != std::string::npos);
  }

  TEST_CASE("theta does not change theorem verdicts") {
    std::ostringstream out;
    ReproduceOptions narrow;
    narrow.theta = 0.1;
    narrow.grid = 100;
    ReproduceOptions wide;
    wide.grid = 100;
    const auto a = run_reproduce(narrow, out), b = run_reproduce(wide, out);
    REQUIRE(a.exit_code == kOk);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(a.analyses[k].report->origin_applicable() == b.analyses[k].report->origin_applicable());
      CHECK(a.analyses[k].report->infinity_applicable() == b.analyses[k].report->infinity_applicable());
      CHECK(a.analyses[k].report->f0.value == b.analyses[k].report->f0.value);
      CHECK(a.analyses[k].report->finf.value == b.analyses[k].report->finf.value);
    }
  }

  TEST_CASE("grid refinement through the command") {
    const auto problem = ProblemFile::load(fixture("affine"));
    std::ostringstream out;
    SolveOptions coarse, fine;
    coarse.grid = 200;
    fine.grid = 1600;
    const auto a = run_solve(problem, coarse, out, "affine"), b = run_solve(problem, fine, out, "affine");
    CHECK(sup_distance(a.report->solution, b.report->solution.resample(200)) < 1e-6);
  }

  TEST_CASE("analyze") {
    std::ostringstream out, err;
    CHECK(cmd_analyze(fixture("example_a"), out, err) == kOk);
    CHECK(out.str().find("origin_theorem (f0 = 0): applies") != std::string::npos);
    CHECK(cmd_analyze(fixture("bad_h2"), out, err) == kHypothesisViolation);
    CHECK(cmd_analyze(fixture("bad_h1"), out, err) == kHypothesisViolation);
    CHECK(cmd_analyze(fixture("bad_syntax"), out, err) == kParseFailure);
  }

  TEST_CASE("built-in examples match the shipped fixtures") {
    for (const auto& example : builtin_examples()) {
      CHECK(slurp(fixture(std::string(example.name).c_str())) == std::string(example.text));
    }
  }

  TEST_CASE("reproduce-examples") {
    std::ostringstream out;
    ReproduceOptions options;
    options.grid = 200;
    const auto outcome = run_reproduce(options, out);
    CHECK(outcome.exit_code == kOk);
    REQUIRE(outcome.solves.size() == 2);
    for (const auto& s : outcome.solves) {
      REQUIRE(s.report.has_value());
      CHECK(s.report->trivial);
      CHECK(s.report->solution.n() == 200);
    }
    CHECK(outcome.analyses[0].report->origin_applicable());
    CHECK(outcome.analyses[1].report->infinity_applicable());
  }
}
