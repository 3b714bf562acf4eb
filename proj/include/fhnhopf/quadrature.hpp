#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace fhn {

namespace detail {
template <typename T>
T trapezoid_impl(std::span<const T> values, double dx) {
  if (values.size() < 2) return T{};
  T sum{};
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  sum += 0.5 * (values.front() + values.back());
  return sum * dx;
}
}  // namespace detail

/// Composite trapezoid rule on a uniform grid with spacing dx.
inline double trapezoid(std::span<const double> values, double dx) {
  return detail::trapezoid_impl(values, dx);
}

inline std::complex<double> trapezoid(std::span<const std::complex<double>> values, double dx) {
  return detail::trapezoid_impl(values, dx);
}

}  // namespace fhn
