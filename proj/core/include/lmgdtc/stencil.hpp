#pragma once

// Fourth-order central five-point finite differences. Samples are ordered
// f(x - 2h), f(x - h), f(x), f(x + h), f(x + 2h).

#include <array>

namespace lmgdtc::stencil {

inline constexpr std::array<double, 5> kFirstDerivative{1.0, -8.0, 0.0, 8.0, -1.0};
inline constexpr std::array<double, 5> kSecondDerivative{-1.0, 16.0, -30.0, 16.0, -1.0};

template <typename T>
T first_derivative(const std::array<T, 5>& f, double h) {
  return (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h);
}

template <typename T>
T second_derivative(const std::array<T, 5>& f, double h) {
  return (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
}

}  // namespace lmgdtc::stencil
