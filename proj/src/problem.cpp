#include "nlbeam/problem.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nlbeam/error.hpp"

namespace nlbeam {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ParseError("problem file line " + std::to_string(line) + ": " + msg, line);
}

double to_real(std::string_view v, std::size_t line, std::string_view key) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x)) {
    fail(line, "'" + std::string(key) + "' expects a real number, got '" + std::string(v) + "'");
  }
  return x;
}

long long to_int(std::string_view v, std::size_t line, std::string_view key) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    fail(line, "'" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
  }
  return x;
}

}  // namespace

ProblemFile ProblemFile::parse(std::string_view text) {
  ProblemFile p;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (value.empty()) fail(line_no, "empty value for '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) fail(line_no, "duplicate key '" + std::string(key) + "'");

    if (key == "f") {
      p.f = value;
    } else if (key == "a") {
      p.a = value;
    } else if (key == "theta") {
      p.theta = to_real(value, line_no, key);
      if (!(p.theta > 0.0 && p.theta < 0.5)) fail(line_no, "theta must lie in (0, 1/2)");
    } else if (key == "grid_n") {
      const auto n = to_int(value, line_no, key);
      if (n < 9) fail(line_no, "grid_n must be >= 9");
      p.grid_n = static_cast<std::size_t>(n);
    } else if (key == "quad_panels") {
      const auto n = to_int(value, line_no, key);
      if (n < 1 || n > 1000000) fail(line_no, "quad_panels must lie in [1, 1e6]");
      p.quad_panels = static_cast<int>(n);
    } else if (key == "quad_rule") {
      try {
        p.quad_rule = parse_quad_rule(value);
      } catch (const ArgumentError& e) {
        fail(line_no, e.what());
      }
    } else if (key == "tol") {
      p.tol = to_real(value, line_no, key);
      if (!(p.tol > 0.0)) fail(line_no, "tol must be > 0");
    } else if (key == "max_iter") {
      const auto n = to_int(value, line_no, key);
      if (n < 1 || n > 100000000) fail(line_no, "max_iter must lie in [1, 1e8]");
      p.max_iter = static_cast<int>(n);
    } else if (key == "relaxation") {
      p.relaxation = to_real(value, line_no, key);
      if (!(p.relaxation > 0.0 && p.relaxation <= 1.0)) fail(line_no, "relaxation must lie in (0, 1]");
    } else if (key == "u0") {
      try {
        (void)InitialGuess::parse(value);
      } catch (const ArgumentError& e) {
        fail(line_no, e.what());
      }
      p.u0 = value;
    } else {
      fail(line_no, "unknown key '" + std::string(key) + "'");
    }
    if (end == text.size()) break;
  }
  if (p.f.empty()) fail(line_no, "missing required key 'f'");
  if (p.a.empty()) fail(line_no, "missing required key 'a'");
  return p;
}

ProblemFile ProblemFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file '" + path.string() + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

SolveConfig ProblemFile::solve_config() const {
  SolveConfig c;
  c.n = grid_n;
  c.tol = tol;
  c.max_iter = max_iter;
  c.relaxation = relaxation;
  c.u0 = InitialGuess::parse(u0);
  return c;
}

}  // namespace nlbeam
