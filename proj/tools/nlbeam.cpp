#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlbeam/commands.hpp"

int main(int argc, char** argv) {
  using namespace nlbeam::cli;

  CLI::App app{"Nonlocal fourth-order beam problem: kernel checks, fixed-point solver, hypothesis analysis"};
  app.require_subcommand(1);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify-lemmas", "Check kernel sign, bounds and the cone inequality on a grid");
  verify_cmd->add_option("--theta", verify.thetas, "Comma-separated theta values in (0, 1/2)")->delimiter(',');
  verify_cmd->add_option("--grid", verify.grid, "Points per axis")->check(CLI::Range(3, 100001));
  verify_cmd->add_flag("--corrupt-kernel", verify.corrupt_kernel)->group("");

  std::string solve_file;
  std::string u0;
  std::string plot_data;
  std::string csv = "solution.csv";
  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file by Picard iteration");
  solve_cmd->add_option("file", solve_file, "Problem file")->required();
  solve_cmd->add_option("--u0", u0, "Initial guess: zero | constant <c> | values <v0> <v1> ...");
  solve_cmd->add_option("--plot-data", plot_data, "Write t,u pairs to this path");
  solve_cmd->add_option("--csv", csv, "Solution CSV path")->capture_default_str();

  std::string analyze_file;
  auto* analyze_cmd = app.add_subcommand("analyze", "Report hypotheses, limit estimates and existence certificates");
  analyze_cmd->add_option("file", analyze_file, "Problem file")->required();

  ReproduceOptions reproduce;
  auto* reproduce_cmd = app.add_subcommand("reproduce-examples", "Analyze and solve the two built-in examples");
  reproduce_cmd->add_option("--theta", reproduce.theta, "Cone parameter in (0, 1/2)");
  reproduce_cmd->add_option("--grid", reproduce.grid, "Grid intervals")->check(CLI::Range(9, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseFailure;
  }

  if (*verify_cmd) return cmd_verify_lemmas(verify, std::cout);
  if (*solve_cmd) {
    SolveOptions options;
    if (solve_cmd->count("--u0") > 0) options.u0 = u0;
    if (!plot_data.empty()) options.plot_data = plot_data;
    if (!csv.empty()) options.csv = csv;
    return cmd_solve(solve_file, options, std::cout, std::cerr);
  }
  if (*analyze_cmd) return cmd_analyze(analyze_file, std::cout, std::cerr);
  return cmd_reproduce_examples(reproduce, std::cout);
}
