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

#ifndef STIRPOUR_FLUID_PARAMS_HPP
#define STIRPOUR_FLUID_PARAMS_HPP

#include <cmath>
#include <string>

#include "stirpour/errors.hpp"

namespace stirpour {

/// A point of the simulator parameter box [0,1]^2.
///
/// Both axes are normalized simulator inputs rather than physical quantities:
/// `viscosity` scales velocity smoothing, `cohesion` scales the artificial
/// pressure term of the density solve.
class FluidParams {
 public:
  FluidParams() = default;

  FluidParams(double viscosity, double cohesion) : viscosity_(viscosity), cohesion_(cohesion) {
    if (!in_unit(viscosity) || !in_unit(cohesion)) {
      throw DomainError("fluid parameters must lie in [0,1]^2, got (" + std::to_string(viscosity) +
                        ", " + std::to_string(cohesion) + ")");
    }
  }

  double viscosity() const noexcept { return viscosity_; }
  double cohesion() const noexcept { return cohesion_; }

  /// Component access in (viscosity, cohesion) order.
  double operator[](int axis) const noexcept { return axis == 0 ? viscosity_ : cohesion_; }

  /// Velocity-smoothing coefficient handed to the solver.
  double xsph_coefficient() const noexcept { return 0.5 * viscosity_; }
  /// Artificial-pressure strength handed to the solver.
  double artificial_pressure() const noexcept { return 0.1 * cohesion_; }

  friend bool operator==(const FluidParams&, const FluidParams&) = default;

 private:
  static bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

  double viscosity_ = 0.0;
  double cohesion_ = 0.0;
};

}  // namespace stirpour

#endif  // STIRPOUR_FLUID_PARAMS_HPP
