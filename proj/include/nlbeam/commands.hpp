#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nlbeam/hypothesis.hpp"
#include "nlbeam/problem.hpp"
#include "nlbeam/solver.hpp"

namespace nlbeam::cli {

enum ExitCode : int {
  kOk = 0,
  kLemmaViolation = 1,
  kHypothesisViolation = 2,
  kParseFailure = 3,
  kNonConvergence = 4,
};

struct VerifyOptions {
  std::vector<double> thetas = {0.1, 0.25, 0.4};
  std::size_t grid = 201;  // points per axis
  std::size_t random_cases = 20;
  std::uint64_t seed = 0x5eed2024;
  bool corrupt_kernel = false;  // test hook: flips the sign of G
};

struct VerifyRow {
  std::string check;
  double theta = 0.0;  // NaN for theta-free checks
  double max_violation = 0.0;
  double worst_t = 0.0;
  double worst_s = 0.0;  // for the cone check: index of the random case
  bool pass = true;
};

struct VerifyOutcome {
  std::vector<VerifyRow> rows;
  int exit_code = kOk;
};

/// Kernel sign and bounds on the grid, the boundary identity G(1,s) = g(s),
/// and the cone inequality for random nonnegative polynomial loads.
VerifyOutcome verify_lemmas(const VerifyOptions& options, std::ostream& out);

struct SolveOptions {
  std::optional<std::string> u0;
  std::optional<std::filesystem::path> csv;
  std::optional<std::filesystem::path> plot_data;
  std::optional<double> theta;
  std::optional<std::size_t> grid;
};

struct SolveOutcome {
  int exit_code = kOk;
  HypothesisCheck hypotheses;
  std::optional<SolveReport> report;
  std::optional<CollocationResult> collocation;
  double oracle_agreement = 0.0;  // sup |picard - collocation|, NaN when skipped
  double contraction_factor = 0.0;  // (1/(1-alpha)) int_0^1 g
};

/// The solve pipeline on an already loaded problem. Writes the summary to
/// `out` and the CSV files named in `options`.
SolveOutcome run_solve(const ProblemFile& problem, const SolveOptions& options, std::ostream& out,
                       std::string_view label);

struct AnalyzeOutcome {
  int exit_code = kOk;
  std::optional<HypothesisReport> report;
};

AnalyzeOutcome run_analyze(const ProblemFile& problem, std::ostream& out, std::string_view label,
                           std::optional<double> theta = std::nullopt);

struct ReproduceOptions {
  std::optional<double> theta;
  std::optional<std::size_t> grid;
};

struct ReproduceOutcome {
  int exit_code = kOk;
  std::vector<AnalyzeOutcome> analyses;
  std::vector<SolveOutcome> solves;
};

ReproduceOutcome run_reproduce(const ReproduceOptions& options, std::ostream& out);

/// Entry points used by the executable; parse failures print to `err`.
int cmd_verify_lemmas(const VerifyOptions& options, std::ostream& out);
int cmd_solve(const std::filesystem::path& file, const SolveOptions& options, std::ostream& out, std::ostream& err);
int cmd_analyze(const std::filesystem::path& file, std::ostream& out, std::ostream& err);
int cmd_reproduce_examples(const ReproduceOptions& options, std::ostream& out);

struct BuiltinExample {
  std::string_view name;
  std::string_view text;  // identical to fixtures/<name>.problem
};

const std::vector<BuiltinExample>& builtin_examples();

/// Solution CSV: header `t,u,Au,fourth_diff_residual`, one row per grid
/// point, 17 significant digits; the residual is empty where the stencil
/// does not fit.
void write_solution_csv(const SolveReport& report, std::ostream& out);

}  // namespace nlbeam::cli
