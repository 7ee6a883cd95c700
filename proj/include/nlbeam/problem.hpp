#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nlbeam/quadrature.hpp"
#include "nlbeam/solver.hpp"

namespace nlbeam {

/// Flat `key = value` problem description, one pair per line, `#` comments.
///
///     f = u*(1-exp(-u))     # required, variable u
///     a = t^2               # required, variable t
///     theta = 0.25
///     grid_n = 800
///     quad_panels = 200
///     quad_rule = simpson
///     tol = 1e-10
///     max_iter = 500
///     relaxation = 1
///     u0 = zero             # or "constant 1", "values 0 0.5 1"
struct ProblemFile {
  std::string f;
  std::string a;
  double theta = 0.25;
  std::size_t grid_n = 800;
  int quad_panels = 200;
  QuadRule quad_rule = QuadRule::Simpson;
  double tol = 1e-10;
  int max_iter = 500;
  double relaxation = 1.0;
  std::string u0 = "zero";

  /// Throws ParseError (offset = 1-based line) on unknown or repeated keys,
  /// malformed values, missing f or a, and out-of-range settings.
  static ProblemFile parse(std::string_view text);
  static ProblemFile load(const std::filesystem::path& path);

  QuadratureSettings quad() const { return {quad_rule, quad_panels}; }
  SolveConfig solve_config() const;
};

}  // namespace nlbeam
