#include "nlbeam/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "nlbeam/error.hpp"

namespace nlbeam {

namespace detail {

enum class Op { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Exp };

struct Node {
  Op op = Op::Number;
  double value = 0.0;        // Number
  std::uint32_t power = 0;   // Pow
  std::size_t offset = 0;    // operator or token position in the source
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
};

}  // namespace detail

namespace {

using detail::Node;
using detail::Op;

constexpr std::uint64_t kMaxExponent = 4096;

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  std::string_view text;
};

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
 public:
  Parser(std::string_view src, char restrict_to) : src_(src), restrict_to_(restrict_to) { advance(); }

  std::unique_ptr<Node> parse_all() {
    auto root = parse_expr();
    if (tok_.kind != Tok::End) {
      fail("unexpected token '" + std::string(tok_.text) + "'", {"operator", "')'", "end of input"});
    }
    return root;
  }

  char variable() const { return variable_; }

 private:
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) {
    std::string what = "parse error at offset " + std::to_string(tok_.offset) + ": " + msg;
    if (!expected.empty()) {
      what += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) what += ", ";
        what += expected[i];
      }
      what += ")";
    }
    throw ParseError(what, tok_.offset, std::move(expected));
  }

  void advance() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r' || src_[pos_] == '\n')) {
      ++pos_;
    }
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      tok_.text = "end of input";
      return;
    }
    const char c = src_[pos_];
    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      std::size_t end = pos_;
      while (end < src_.size() && is_digit(src_[end])) ++end;
      if (end < src_.size() && src_[end] == '.') {
        ++end;
        while (end < src_.size() && is_digit(src_[end])) ++end;
      }
      if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
        std::size_t exp_end = end + 1;
        if (exp_end < src_.size() && (src_[exp_end] == '+' || src_[exp_end] == '-')) ++exp_end;
        if (exp_end < src_.size() && is_digit(src_[exp_end])) {
          while (exp_end < src_.size() && is_digit(src_[exp_end])) ++exp_end;
          end = exp_end;
        }
      }
      tok_.kind = Tok::Number;
      tok_.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    if (is_ident_start(c)) {
      std::size_t end = pos_;
      while (end < src_.size() && (is_ident_start(src_[end]) || is_digit(src_[end]))) ++end;
      tok_.kind = Tok::Ident;
      tok_.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    tok_.text = src_.substr(pos_, 1);
    switch (c) {
      case '+': tok_.kind = Tok::Plus; break;
      case '-': tok_.kind = Tok::Minus; break;
      case '*': tok_.kind = Tok::Star; break;
      case '/': tok_.kind = Tok::Slash; break;
      case '^': tok_.kind = Tok::Caret; break;
      case '(': tok_.kind = Tok::LParen; break;
      case ')': tok_.kind = Tok::RParen; break;
      default:
        fail("unexpected character '" + std::string(1, c) + "'", {});
    }
    ++pos_;
  }

  static std::unique_ptr<Node> binary(Op op, std::size_t offset, std::unique_ptr<Node> l, std::unique_ptr<Node> r) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->offset = offset;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  std::unique_ptr<Node> parse_expr() {
    auto lhs = parse_term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const Op op = tok_.kind == Tok::Plus ? Op::Add : Op::Sub;
      const std::size_t at = tok_.offset;
      advance();
      lhs = binary(op, at, std::move(lhs), parse_term());
    }
    return lhs;
  }

  std::unique_ptr<Node> parse_term() {
    auto lhs = parse_unary();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      const Op op = tok_.kind == Tok::Star ? Op::Mul : Op::Div;
      const std::size_t at = tok_.offset;
      advance();
      lhs = binary(op, at, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  std::unique_ptr<Node> parse_unary() {
    if (tok_.kind == Tok::Minus) {
      auto n = std::make_unique<Node>();
      n->op = Op::Neg;
      n->offset = tok_.offset;
      advance();
      n->lhs = parse_unary();
      return n;
    }
    return parse_power();
  }

  std::unique_ptr<Node> parse_power() {
    auto base = parse_primary();
    if (tok_.kind != Tok::Caret) return base;
    auto n = std::make_unique<Node>();
    n->op = Op::Pow;
    n->offset = tok_.offset;
    advance();
    n->power = static_cast<std::uint32_t>(parse_int_power());
    n->lhs = std::move(base);
    return n;
  }

  // Right-associative chain of integer literals, folded at parse time.
  std::uint64_t parse_int_power() {
    if (tok_.kind != Tok::Number) fail("exponent must be a nonnegative integer literal", {"integer"});
    std::uint64_t value = 0;
    const auto text = tok_.text;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail("exponent must be a nonnegative integer literal", {"integer"});
    }
    advance();
    if (tok_.kind == Tok::Caret) {
      const std::size_t at = tok_.offset;
      advance();
      const std::uint64_t inner = parse_int_power();
      std::uint64_t folded = 1;
      for (std::uint64_t i = 0; i < inner && folded <= kMaxExponent; ++i) folded *= value;
      value = folded;
      if (value > kMaxExponent) {
        throw ParseError("parse error at offset " + std::to_string(at) + ": exponent too large", at);
      }
    }
    if (value > kMaxExponent) fail("exponent too large", {});
    return value;
  }

  std::unique_ptr<Node> parse_primary() {
    static const std::vector<std::string> kOperand = {"number", "'u'", "'t'", "'exp'", "'('", "'-'"};
    switch (tok_.kind) {
      case Tok::Number: {
        auto n = std::make_unique<Node>();
        n->op = Op::Number;
        n->offset = tok_.offset;
        const auto text = tok_.text;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n->value);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(n->value)) {
          fail("malformed number '" + std::string(text) + "'", {"number"});
        }
        advance();
        return n;
      }
      case Tok::Ident: {
        const auto name = tok_.text;
        if (name == "exp") {
          auto n = std::make_unique<Node>();
          n->op = Op::Exp;
          n->offset = tok_.offset;
          advance();
          if (tok_.kind != Tok::LParen) fail("expected '(' after exp", {"'('"});
          advance();
          n->lhs = parse_expr();
          if (tok_.kind != Tok::RParen) fail("unbalanced parenthesis", {"')'"});
          advance();
          return n;
        }
        if (name == "u" || name == "t") {
          const char v = name[0];
          if (restrict_to_ != '\0' && v != restrict_to_) {
            fail("variable '" + std::string(name) + "' not allowed here", {std::string("'") + restrict_to_ + "'"});
          }
          if (variable_ != '\0' && v != variable_) {
            fail("expression mixes variables 'u' and 't'", {std::string("'") + variable_ + "'"});
          }
          variable_ = v;
          auto n = std::make_unique<Node>();
          n->op = Op::Variable;
          n->offset = tok_.offset;
          advance();
          return n;
        }
        fail("unknown identifier '" + std::string(name) + "'", kOperand);
      }
      case Tok::LParen: {
        advance();
        auto inner = parse_expr();
        if (tok_.kind != Tok::RParen) fail("unbalanced parenthesis", {"')'"});
        advance();
        return inner;
      }
      case Tok::End:
        fail("unexpected end of input", kOperand);
      default:
        fail("unexpected token '" + std::string(tok_.text) + "'", kOperand);
    }
  }

  std::string_view src_;
  char restrict_to_;
  char variable_ = '\0';
  std::size_t pos_ = 0;
  Token tok_;
};

[[noreturn]] void numeric_fail(const char* what, const Node& n) {
  throw NumericError(std::string(what) + " at offset " + std::to_string(n.offset));
}

double checked(double r, const Node& n) {
  if (!std::isfinite(r)) numeric_fail("overflow", n);
  return r;
}

double int_pow(double base, std::uint32_t p) {
  double result = 1.0;
  while (p) {
    if (p & 1u) result *= base;
    p >>= 1;
    if (p) base *= base;
  }
  return result;
}

double eval_node(const Node& n, double x) {
  switch (n.op) {
    case Op::Number: return n.value;
    case Op::Variable: return x;
    case Op::Neg: return -eval_node(*n.lhs, x);
    case Op::Add: return checked(eval_node(*n.lhs, x) + eval_node(*n.rhs, x), n);
    case Op::Sub: return checked(eval_node(*n.lhs, x) - eval_node(*n.rhs, x), n);
    case Op::Mul: return checked(eval_node(*n.lhs, x) * eval_node(*n.rhs, x), n);
    case Op::Div: {
      const double num = eval_node(*n.lhs, x);
      const double den = eval_node(*n.rhs, x);
      if (den == 0.0) numeric_fail("division by zero", n);
      return checked(num / den, n);
    }
    case Op::Pow: return checked(int_pow(eval_node(*n.lhs, x), n.power), n);
    case Op::Exp: return checked(std::exp(eval_node(*n.lhs, x)), n);
  }
  return 0.0;
}

void print_node(const Node& n, char var, std::string& out) {
  switch (n.op) {
    case Op::Number: {
      char buf[32];
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
      out.append(buf, ptr);
      return;
    }
    case Op::Variable: out.push_back(var); return;
    case Op::Neg:
      out += "(-";
      print_node(*n.lhs, var, out);
      out += ")";
      return;
    case Op::Exp:
      out += "exp(";
      print_node(*n.lhs, var, out);
      out += ")";
      return;
    case Op::Pow:
      out += "(";
      print_node(*n.lhs, var, out);
      out += "^" + std::to_string(n.power) + ")";
      return;
    default: break;
  }
  const char sym = n.op == Op::Add ? '+' : n.op == Op::Sub ? '-' : n.op == Op::Mul ? '*' : '/';
  out += "(";
  print_node(*n.lhs, var, out);
  out.push_back(sym);
  print_node(*n.rhs, var, out);
  out += ")";
}

bool same_tree(const Node* a, const Node* b) {
  if (!a || !b) return a == b;
  if (a->op != b->op) return false;
  if (a->op == Op::Number && a->value != b->value) return false;
  if (a->op == Op::Pow && a->power != b->power) return false;
  return same_tree(a->lhs.get(), b->lhs.get()) && same_tree(a->rhs.get(), b->rhs.get());
}

}  // namespace

ExpressionFn ExpressionFn::parse(std::string_view src) { return parse(src, '\0'); }

ExpressionFn ExpressionFn::parse(std::string_view src, char variable) {
  if (src.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError("parse error at offset 0: empty expression", 0, {"expression"});
  }
  Parser parser(src, variable);
  std::shared_ptr<const Node> root = parser.parse_all();
  return ExpressionFn(std::move(root), std::string(src), parser.variable());
}

double ExpressionFn::operator()(double x) const { return eval_node(*root_, x); }

std::string ExpressionFn::to_string() const {
  std::string out;
  print_node(*root_, variable_ == '\0' ? 'u' : variable_, out);
  return out;
}

bool operator==(const ExpressionFn& a, const ExpressionFn& b) {
  return a.variable_ == b.variable_ && same_tree(a.root_.get(), b.root_.get());
}

}  // namespace nlbeam
