#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace nlbeam {

namespace detail {
struct Node;
}

/// A parsed scalar function of one variable.
///
/// Grammar, loosest binding first:
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' intpow)?
///     intpow  := INTEGER ('^' intpow)?
///     primary := NUMBER | 'u' | 't' | 'exp' '(' expr ')' | '(' expr ')'
///
/// Exponents are nonnegative integer literals, so `-u^2` is `-(u^2)` and
/// `2^3^2` is `2^9`. There is no implicit multiplication. The only built-in
/// function is `exp`; new ones go in `parse_primary` and `eval_node`.
///
/// Trees are immutable and shared, so copies are cheap and evaluation is
/// safe from any number of threads.
class ExpressionFn {
 public:
  /// Parses `src`. Either `u` or `t` may appear, but not both.
  /// Throws ParseError carrying the byte offset of the first error.
  static ExpressionFn parse(std::string_view src);

  /// Parses `src`, additionally rejecting any variable other than `variable`.
  static ExpressionFn parse(std::string_view src, char variable);

  /// Throws NumericError on division by zero or overflow.
  double operator()(double x) const;
  double eval(double x) const { return (*this)(x); }

  /// Fully parenthesized form; reparses to a structurally identical tree.
  std::string to_string() const;

  const std::string& source() const noexcept { return source_; }

  /// 'u', 't', or '\0' when the expression is constant.
  char variable() const noexcept { return variable_; }

  /// Structural equality of the trees; source offsets are ignored.
  friend bool operator==(const ExpressionFn& a, const ExpressionFn& b);

 private:
  ExpressionFn(std::shared_ptr<const detail::Node> root, std::string source, char variable)
      : root_(std::move(root)), source_(std::move(source)), variable_(variable) {}

  std::shared_ptr<const detail::Node> root_;
  std::string source_;
  char variable_ = '\0';
};

}  // namespace nlbeam
