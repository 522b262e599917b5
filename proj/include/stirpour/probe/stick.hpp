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

#ifndef STIRPOUR_PROBE_STICK_HPP
#define STIRPOUR_PROBE_STICK_HPP

#include <cmath>
#include <numbers>
#include <string>

#include "stirpour/errors.hpp"
#include "stirpour/geometry.hpp"
#include "stirpour/probe/stir_action.hpp"

namespace stirpour {

/// Uniform rigid rod hanging from the gripper.
struct StickProperties {
  double mass = 0.05;      // kg
  double damping = 0.02;   // N m s, linear in angular velocity
  double gravity = 9.81;   // m/s^2
};

/// Inclination is signed, radians from the downward vertical; positive moves
/// the tip toward +x.
struct StickState {
  double inclination = 0.0;       // rad
  double angular_velocity = 0.0;  // rad/s
  Vec2 pivot{0.0, 0.0};           // m
  Vec2 pivot_velocity{0.0, 0.0};  // m/s, as of the last step
  double length = 0.3;            // m
  double submerged_length = 0.0;  // m

  Vec2 direction() const { return {std::sin(inclination), -std::cos(inclination)}; }
  Vec2 tip() const { return pivot + length * direction(); }
};

/// Moment of inertia of the rod about its pivot.
inline double stick_inertia(const StickProperties& props, double length) {
  return props.mass * length * length / 3.0;
}

/// One semi-implicit Euler step of the driven pendulum.
///
/// Torques: gravity about the pivot, the inertial torque of the pivot
/// acceleration (finite-differenced from the stored pivot velocity), the
/// fluid force applied at the midpoint of the submerged segment, and linear
/// damping.
inline StickState stick_step(const StickState& state, const PivotMotion& pivot, const Vec2& fluid_force,
                             double dt, const StickProperties& props = {}) {
  if (!(dt > 0.0)) throw DomainError("stick step needs dt > 0");
  if (!(std::abs(state.inclination) < std::numbers::pi / 2)) {
    throw DomainError("stick inclination out of range before step");
  }
  const double L = state.length;
  const double th = state.inclination;
  const double s = std::sin(th);
  const double c = std::cos(th);
  const Vec2 accel = (pivot.velocity - state.pivot_velocity) / dt;

  const double lever = L - 0.5 * state.submerged_length;
  const double fluid_torque = lever * (s * fluid_force.y() + c * fluid_force.x());
  const double inertial_torque =
      -props.mass * 0.5 * L * ((props.gravity + accel.y()) * s + accel.x() * c);
  const double torque = inertial_torque + fluid_torque - props.damping * state.angular_velocity;

  StickState next = state;
  next.angular_velocity = state.angular_velocity + dt * torque / stick_inertia(props, L);
  next.inclination = th + dt * next.angular_velocity;
  next.pivot = pivot.position;
  next.pivot_velocity = pivot.velocity;
  if (!(std::abs(next.inclination) < std::numbers::pi / 2)) {
    throw CapsizeError("stick capsized (inclination " + std::to_string(next.inclination) + " rad)");
  }
  return next;
}

}  // namespace stirpour

#endif  // STIRPOUR_PROBE_STICK_HPP
