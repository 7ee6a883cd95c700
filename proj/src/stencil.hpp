#pragma once

#include <array>
#include <span>

// One-sided derivative stencils at the ends of a uniform grid.
namespace nlbeam::stencil {

// 12 h u'(0) ~ sum c_k u_k, fourth order; exact for quartics.
inline constexpr std::array<double, 5> kFirst = {-25.0, 48.0, -36.0, 16.0, -3.0};
inline constexpr double kFirstScale = 12.0;

// 12 h^2 u''(0) ~ sum c_k u_k, third order; exact for quartics.
inline constexpr std::array<double, 5> kSecond = {35.0, -104.0, 114.0, -56.0, 11.0};
inline constexpr double kSecondScale = 12.0;

inline double first_at_left(std::span<const double> u, double h) {
  double s = 0.0;
  for (std::size_t k = 0; k < kFirst.size(); ++k) s += kFirst[k] * u[k];
  return s / (kFirstScale * h);
}

inline double first_at_right(std::span<const double> u, double h) {
  const std::size_t n = u.size() - 1;
  double s = 0.0;
  for (std::size_t k = 0; k < kFirst.size(); ++k) s -= kFirst[k] * u[n - k];
  return s / (kFirstScale * h);
}

inline double second_at_left(std::span<const double> u, double h) {
  double s = 0.0;
  for (std::size_t k = 0; k < kSecond.size(); ++k) s += kSecond[k] * u[k];
  return s / (kSecondScale * h * h);
}

// u_{i-2} - 4 u_{i-1} + 6 u_i - 4 u_{i+1} + u_{i+2}, unscaled.
inline double fourth_difference(std::span<const double> u, std::size_t i) {
  return u[i - 2] - 4.0 * u[i - 1] + 6.0 * u[i] - 4.0 * u[i + 1] + u[i + 2];
}

}  // namespace nlbeam::stencil
