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

#ifndef STIRPOUR_SCENARIO_POUR_HPP
#define STIRPOUR_SCENARIO_POUR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "stirpour/errors.hpp"
#include "stirpour/fluid/solver.hpp"

namespace stirpour {

/// One-shot pour: constant tilt rate and lip offset from the target centre.
struct PourAction {
  double omega = 1.0;  // rad/s
  double p = 0.0;      // m
};

struct SpillResult {
  std::size_t spilled = 0;
  std::size_t total = 0;
  double ratio = 0.0;  // spilled / total
  std::size_t in_source = 0;
  std::size_t in_target = 0;
};

inline SpillResult make_spill_result(std::size_t spilled, std::size_t total, std::size_t in_source = 0,
                                     std::size_t in_target = 0) {
  if (total == 0 || spilled > total) throw DomainError("spill counts out of range");
  return {spilled, total, static_cast<double>(spilled) / static_cast<double>(total), in_source, in_target};
}

/// Cups and fluid physics for the pouring experiment. Geometry is generated
/// per action: the source cup's right lip sits `p` to the left of the target
/// centre (upstream of the pour) and the cup rotates clockwise about that lip,
/// so the stream leaves toward +x.
struct PourSetup {
  SceneConfig physics = default_physics();
  double cup_width = 0.08;       // m, source cup
  double target_width = 0.08;    // m
  double target_height = 0.1;    // m
  double source_height = 0.08;   // m
  double lip_height = 0.185;     // m above the target floor
  double fill_height = 0.0665;   // m of liquid in the source
  double target_center = 0.0;    // m
  double max_tilt = 0.75 * std::numbers::pi;  // rad, total rotation
  double pre_settle = 0.3;       // s before the rotation starts
  double post_settle = 2.0;      // s after the rotation ends

  static SceneConfig default_physics() {
    SceneConfig cfg;
    cfg.spacing = 0.0035;
    cfg.world = Rect{Vec2(-0.3, -0.02), Vec2(0.3, 0.35)};
    return cfg;
  }

  double lip_x(double p) const { return target_center - p; }

  Polygon source_polygon(double p) const {
    const double x1 = lip_x(p);
    const double x0 = x1 - cup_width;
    const double y1 = lip_height;
    const double y0 = lip_height - source_height;
    return {Vec2(x0, y1), Vec2(x0, y0), Vec2(x1, y0), Vec2(x1, y1)};
  }

  Polygon target_polygon() const {
    const double x0 = target_center - 0.5 * target_width;
    const double x1 = target_center + 0.5 * target_width;
    return {Vec2(x0, target_height), Vec2(x0, 0.0), Vec2(x1, 0.0), Vec2(x1, target_height)};
  }

  /// Scene with both cups as static containers and the source filled.
  SceneConfig scene(double p) const {
    SceneConfig cfg = physics;
    cfg.containers = {source_polygon(p), target_polygon()};
    const double x1 = lip_x(p);
    const double y0 = lip_height - source_height;
    cfg.fill = Rect{Vec2(x1 - cup_width, y0), Vec2(x1, y0 + fill_height)};
    return cfg;
  }

  double tilt_at(double omega, double t) const { return std::min(omega * t, max_tilt); }
};

namespace detail {

inline Polygon rotated_polygon(const Polygon& poly, const Vec2& pivot, double clockwise) {
  Polygon out;
  out.reserve(poly.size());
  for (const auto& v : poly) out.push_back(rotate_about(v, pivot, -clockwise));
  return out;
}

inline void source_colliders(const Polygon& upright, const Vec2& lip, double tilt0, double tilt1, double dt,
                             std::vector<ColliderSegment>& out) {
  const Polygon a = rotated_polygon(upright, lip, tilt0);
  const Polygon b = rotated_polygon(upright, lip, tilt1);
  out.clear();
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    out.push_back({a[i], a[i + 1], (b[i] - a[i]) / dt, (b[i + 1] - a[i + 1]) / dt});
  }
}

}  // namespace detail

/// Pours at constant `omega` until the tilt cap, lets the liquid settle, and
/// counts particles outside both cups.
inline SpillResult run_pour(const FluidParams& params, const PourAction& action, const PourSetup& setup,
                            std::uint64_t seed) {
  if (!(action.omega > 0.0) || !std::isfinite(action.omega) || !std::isfinite(action.p)) {
    throw DomainError("pour action needs omega > 0 and finite p");
  }
  const SceneConfig full = setup.scene(action.p);
  FluidSolver solver;
  SimState fluid = init_scene(full, seed, solver.tuning());

  // The source cup moves, so it is handed to the solver as colliders.
  SceneConfig dynamic = full;
  dynamic.containers = {setup.target_polygon()};
  const Polygon upright = setup.source_polygon(action.p);
  const Vec2 lip = upright.back();
  const double dt = full.dt;

  std::vector<ColliderSegment> colliders;
  const auto pre = static_cast<long>(std::ceil(setup.pre_settle / dt - 1e-9));
  detail::source_colliders(upright, lip, 0.0, 0.0, dt, colliders);
  for (long k = 0; k < pre; ++k) solver.advance(fluid, params, dynamic, colliders);

  const double rotation_time = setup.max_tilt / action.omega;
  const auto rotate = static_cast<long>(std::ceil(rotation_time / dt - 1e-9));
  for (long k = 0; k < rotate; ++k) {
    const double a0 = setup.tilt_at(action.omega, static_cast<double>(k) * dt);
    const double a1 = setup.tilt_at(action.omega, static_cast<double>(k + 1) * dt);
    detail::source_colliders(upright, lip, a0, a1, dt, colliders);
    solver.advance(fluid, params, dynamic, colliders);
  }

  const double final_tilt = setup.max_tilt;
  detail::source_colliders(upright, lip, final_tilt, final_tilt, dt, colliders);
  const auto post = static_cast<long>(std::ceil(setup.post_settle / dt - 1e-9));
  for (long k = 0; k < post; ++k) solver.advance(fluid, params, dynamic, colliders);

  const Polygon source_final = detail::rotated_polygon(upright, lip, final_tilt);
  const Polygon target = setup.target_polygon();
  std::size_t in_source = 0;
  std::size_t in_target = 0;
  for (std::size_t i = 0; i < fluid.particle_count; ++i) {
    const Vec2& x = fluid.positions[i];
    if (point_in_polygon(source_final, x)) {
      ++in_source;
    } else if (point_in_polygon(target, x)) {
      ++in_target;
    }
  }
  const std::size_t total = fluid.particle_count;
  return make_spill_result(total - in_source - in_target, total, in_source, in_target);
}

}  // namespace stirpour

#endif  // STIRPOUR_SCENARIO_POUR_HPP
