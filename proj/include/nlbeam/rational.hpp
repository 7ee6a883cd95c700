#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "nlbeam/error.hpp"

namespace nlbeam {

/// Exact fraction over 64-bit integers, kept in lowest terms with a positive
/// denominator. Overflow throws NumericError rather than wrapping.
class Rational {
  __extension__ using wide = __int128;

 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

  friend Rational operator+(Rational a, Rational b) {
    return reduce(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
                  static_cast<wide>(a.den_) * b.den_);
  }
  friend Rational operator-(Rational a, Rational b) { return a + Rational(-b.num_, b.den_); }
  friend Rational operator*(Rational a, Rational b) {
    return reduce(static_cast<wide>(a.num_) * b.num_, static_cast<wide>(a.den_) * b.den_);
  }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num_ == 0) throw NumericError("rational division by zero");
    return reduce(static_cast<wide>(a.num_) * b.den_, static_cast<wide>(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(Rational b) { return *this = *this + b; }
  Rational& operator-=(Rational b) { return *this = *this - b; }
  Rational& operator*=(Rational b) { return *this = *this * b; }

  friend bool operator==(Rational a, Rational b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator<(Rational a, Rational b) {
    return static_cast<wide>(a.num_) * b.den_ < static_cast<wide>(b.num_) * a.den_;
  }
  friend bool operator<=(Rational a, Rational b) { return !(b < a); }

 private:
  static Rational make(std::int64_t n, std::int64_t d) { return reduce(n, d); }

  static Rational reduce(wide n, wide d) {
    if (d == 0) throw NumericError("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    wide a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      const wide t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr wide kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax) throw NumericError("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace nlbeam
