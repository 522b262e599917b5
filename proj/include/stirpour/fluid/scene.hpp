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

#ifndef STIRPOUR_FLUID_SCENE_HPP
#define STIRPOUR_FLUID_SCENE_HPP

#include <string>
#include <vector>

#include "stirpour/errors.hpp"
#include "stirpour/geometry.hpp"

namespace stirpour {

/// Static scene description shared by every step of a rollout.
///
/// Each container is a closed polyline. Its consecutive vertices form solid
/// walls; the implied closing edge (last vertex back to the first) is the open
/// mouth and does not collide.
struct SceneConfig {
  std::vector<Polygon> containers;
  Rect fill;
  Rect world{Vec2(-0.5, -0.5), Vec2(0.5, 0.5)};
  double spacing = 0.004;        // m
  double rest_density = 20.0;    // kg/m^2
  double gravity = 9.81;         // m/s^2, acting along -y
  double dt = 1.0 / 300.0;       // s
  int solver_iterations = 3;

  double smoothing_radius() const { return 2.0 * spacing; }
  double particle_radius() const { return 0.5 * spacing; }

  /// Throws ConfigError when any invariant is violated.
  void validate() const {
    if (!(spacing > 0.0)) throw ConfigError("particle spacing must be positive");
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (solver_iterations < 1) throw ConfigError("solver_iterations must be >= 1");
    if (!(rest_density > 0.0)) throw ConfigError("rest density must be positive");
    if (!std::isfinite(gravity)) throw ConfigError("gravity must be finite");
    if (world.empty()) throw ConfigError("world bounds are empty");
    if (fill.empty()) throw ConfigError("fill region is empty");
    if (fill.min.x() < world.min.x() || fill.min.y() < world.min.y() ||
        fill.max.x() > world.max.x() || fill.max.y() > world.max.y()) {
      throw ConfigError("fill region leaves the world bounds");
    }
    for (std::size_t i = 0; i < containers.size(); ++i) {
      if (is_degenerate_or_self_intersecting(containers[i])) {
        throw ConfigError("container " + std::to_string(i) + " is degenerate or self-intersecting");
      }
    }
    if (!fill_inside_container()) throw ConfigError("fill region is not inside any container");
  }

  bool fill_inside_container() const {
    // Corners pulled in slightly so a fill region flush with a wall still counts.
    constexpr double kInset = 1e-9;
    const Vec2 lo = fill.min + Vec2(kInset, kInset);
    const Vec2 hi = fill.max - Vec2(kInset, kInset);
    const Vec2 corners[4] = {lo, Vec2(hi.x(), lo.y()), hi, Vec2(lo.x(), hi.y())};
    for (const auto& poly : containers) {
      bool all = true;
      for (const auto& c : corners) all = all && point_in_polygon(poly, c);
      if (all) return true;
    }
    return false;
  }
};

}  // namespace stirpour

#endif  // STIRPOUR_FLUID_SCENE_HPP
