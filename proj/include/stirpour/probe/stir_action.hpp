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

#ifndef STIRPOUR_PROBE_STIR_ACTION_HPP
#define STIRPOUR_PROBE_STIR_ACTION_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "stirpour/errors.hpp"
#include "stirpour/geometry.hpp"

namespace stirpour {

/// Cyclic end-effector path visiting the vertices of an m-point star polygon.
///
/// The star lives in the horizontal plane of the gripper; its first coordinate
/// is the in-plane horizontal axis of the 2D fluid world and its second is the
/// out-of-plane depth, which the 2D world does not resolve.
struct StirAction {
  int m = 9;                    // star points
  double radius = 0.04;         // m
  double cycle_speed = 0.15;    // m/s along the path
  double duration = 4.0;        // s
  Vec2 center{0.0, 0.0};        // m
  double sample_rate = 30.0;    // Hz

  void validate() const {
    if (m < 5 || m % 2 == 0) throw ConfigError("star order m must be odd and >= 5, got " + std::to_string(m));
    if (!(radius > 0.0)) throw ConfigError("star radius must be positive");
    if (!(duration > 0.0)) throw ConfigError("stir duration must be positive");
    if (!(sample_rate > 0.0)) throw ConfigError("sample rate must be positive");
    if (!(cycle_speed >= 0.0) || !std::isfinite(cycle_speed)) throw ConfigError("cycle speed must be finite and >= 0");
  }
};

/// Vertices of the {m / floor(m/2)} star in visiting order, starting at angle
/// zero and closing back on the first vertex (m + 1 points).
inline std::vector<Vec2> star_waypoints(const StirAction& action) {
  action.validate();
  const int step = action.m / 2;
  std::vector<Vec2> points;
  points.reserve(static_cast<std::size_t>(action.m) + 1);
  for (int k = 0; k <= action.m; ++k) {
    const int vertex = (k * step) % action.m;
    const double angle = 2.0 * std::numbers::pi * vertex / action.m;
    points.push_back(action.center + action.radius * Vec2(std::cos(angle), std::sin(angle)));
  }
  return points;
}

inline double star_path_length(const StirAction& action) {
  const auto pts = star_waypoints(action);
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) len += (pts[i + 1] - pts[i]).norm();
  return len;
}

struct PivotMotion {
  Vec2 position{0.0, 0.0};  // m
  Vec2 velocity{0.0, 0.0};  // m/s
};

/// Constant-speed traversal of the closed star path, wrapping cyclically.
inline PivotMotion pivot_at(const StirAction& action, double t) {
  if (!(t >= 0.0 && t <= action.duration)) {
    throw DomainError("pivot time " + std::to_string(t) + " outside [0, T]");
  }
  const auto pts = star_waypoints(action);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += (pts[i + 1] - pts[i]).norm();

  double s = std::fmod(t * action.cycle_speed, total);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec2 seg = pts[i + 1] - pts[i];
    const double len = seg.norm();
    if (s <= len || i + 2 == pts.size()) {
      const Vec2 dir = seg / len;
      return {pts[i] + std::min(s, len) * dir, action.cycle_speed * dir};
    }
    s -= len;
  }
  return {pts.front(), Vec2::Zero()};  // unreachable for m >= 5
}

}  // namespace stirpour

#endif  // STIRPOUR_PROBE_STIR_ACTION_HPP
