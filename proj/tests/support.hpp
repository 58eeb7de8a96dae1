#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "movingwell/grid.hpp"
#include "movingwell/units.hpp"

namespace testing {

using movingwell::cplx;
inline constexpr double kPi = std::numbers::pi;

inline const movingwell::PhysicalParams& natural() {
  static const auto p = movingwell::PhysicalParams::natural();
  return p;
}

inline const movingwell::PhysicalParams& si() {
  static const auto p = movingwell::PhysicalParams::si();
  return p;
}

// Unnormalised Gaussian, |g|^2 has standard deviation `width`.
inline cplx gauss(double y, double y0, double width, double k = 0.0) {
  const double d = y - y0;
  return std::exp(-d * d / (4.0 * width * width)) * std::polar(1.0, k * y);
}

// Same profile normalised on [0, 1] and sampled there.
inline movingwell::ComplexField comoving_gauss(std::size_t n, double y0,
                                               double width, double k = 0.0) {
  auto f = movingwell::ComplexField::sample(
      movingwell::SpatialGrid(0.0, 1.0, n),
      [&](double y) { return gauss(y, y0, width, k); },
      movingwell::Frame::comoving_y);
  f.values.front() = 0.0;
  f.values.back() = 0.0;
  const double norm = movingwell::l2_norm(f);
  for (auto& v : f.values) v /= norm;
  return f;
}

}  // namespace testing
