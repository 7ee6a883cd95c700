#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlbeam {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition failure on a caller-supplied value (domain, shape, range).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Non-finite sample, division by zero, overflow, or a singular system.
class NumericError : public Error {
 public:
  using Error::Error;
};

enum class Hypothesis { H1, H2 };

/// (H1): f is nonnegative on [0, inf). (H2): a >= 0 and 0 < int_0^1 a < 1.
class HypothesisError : public Error {
 public:
  HypothesisError(Hypothesis which, const std::string& what)
      : Error(std::string(which == Hypothesis::H1 ? "H1" : "H2") + " violated: " + what),
        which_(which) {}

  Hypothesis which() const noexcept { return which_; }

 private:
  Hypothesis which_;
};

/// Syntax error in an expression or a problem file. `offset` is a byte offset
/// into the expression source, or a 1-based line number for problem files.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected = {})
      : Error(what), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace nlbeam
