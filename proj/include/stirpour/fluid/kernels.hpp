// Copyright 2026 The stirpour Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#ifndef STIRPOUR_FLUID_KERNELS_HPP
#define STIRPOUR_FLUID_KERNELS_HPP

#include <array>
#include <cmath>
#include <numbers>

namespace stirpour::kernels {

// Two-dimensional smoothing kernels with support radius h. Each integrates to
// one over the plane.

/// Poly6 density kernel, 4/(pi h^8) (h^2 - r^2)^3.
inline double poly6(double r, double h) {
  if (r >= h) return 0.0;
  const double h2 = h * h;
  const double d = h2 - r * r;
  return 4.0 / (std::numbers::pi * h2 * h2 * h2 * h2) * d * d * d;
}

/// Radial derivative of the spiky kernel 10/(pi h^5) (h - r)^3. Always <= 0.
inline double spiky_derivative(double r, double h) {
  if (r >= h) return 0.0;
  const double d = h - r;
  const double h5 = h * h * h * h * h;
  return -30.0 / (std::numbers::pi * h5) * d * d;
}

namespace detail {

constexpr int kBoundaryTableSize = 256;

// Fraction of the poly6 kernel mass lying in a half-plane at normalized
// distance u = d/h from the kernel center, sampled on [0, 1].
inline const std::array<double, kBoundaryTableSize + 1>& boundary_table() {
  static const auto table = [] {
    std::array<double, kBoundaryTableSize + 1> t{};
    // Integrand (1 - y^2)^{7/2} scaled by 128/(35 pi); integrated from u to 1
    // with composite Simpson on a fine sub-grid.
    const double scale = 128.0 / (35.0 * std::numbers::pi);
    const auto f = [](double y) { return std::pow(std::max(0.0, 1.0 - y * y), 3.5); };
    t[kBoundaryTableSize] = 0.0;
    constexpr int kSub = 16;
    for (int i = kBoundaryTableSize - 1; i >= 0; --i) {
      const double a = static_cast<double>(i) / kBoundaryTableSize;
      const double b = static_cast<double>(i + 1) / kBoundaryTableSize;
      const double step = (b - a) / kSub;
      double acc = f(a) + f(b);
      for (int k = 1; k < kSub; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(a + k * step);
      t[i] = t[i + 1] + scale * acc * step / 3.0;
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// Fraction of a full kernel neighbourhood hidden behind a straight wall at
/// distance d. Equals 0.5 at contact and 0 beyond h.
inline double boundary_fraction(double d, double h) {
  if (d >= h) return 0.0;
  const double u = std::max(0.0, d / h) * detail::kBoundaryTableSize;
  const int i = static_cast<int>(u);
  const auto& t = detail::boundary_table();
  if (i >= detail::kBoundaryTableSize) return 0.0;
  const double frac = u - i;
  return t[i] + frac * (t[i + 1] - t[i]);
}

/// d/dd of boundary_fraction, in 1/m. Always <= 0.
inline double boundary_fraction_derivative(double d, double h) {
  if (d >= h) return 0.0;
  const double u = std::max(0.0, d / h);
  const double a = 1.0 - u * u;
  return -128.0 / (35.0 * std::numbers::pi * h) * a * a * a * std::sqrt(a);
}

}  // namespace stirpour::kernels

#endif  // STIRPOUR_FLUID_KERNELS_HPP
