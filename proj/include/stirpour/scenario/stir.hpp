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

#ifndef STIRPOUR_SCENARIO_STIR_HPP
#define STIRPOUR_SCENARIO_STIR_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "stirpour/errors.hpp"
#include "stirpour/fluid/solver.hpp"
#include "stirpour/probe/stick.hpp"
#include "stirpour/probe/stir_action.hpp"
#include "stirpour/scenario/trace.hpp"

namespace stirpour {

/// Tank, fluid physics and stick for the stirring experiment.
struct StirSetup {
  SceneConfig scene = default_scene();
  StickProperties stick;
  double stick_length = 0.3;   // m
  double immersion = 0.03;     // m of stick below the initial fill surface
  double settle_time = 0.5;    // s of fluid settling before the action starts

  /// 0.2 m wide tank filled 0.04 m deep at 4 mm spacing (500 particles).
  static SceneConfig default_scene() {
    SceneConfig cfg;
    cfg.spacing = 0.004;
    cfg.world = Rect{Vec2(-0.12, -0.01), Vec2(0.12, 0.2)};
    cfg.containers = {Polygon{Vec2(-0.1, 0.15), Vec2(-0.1, 0.0), Vec2(0.1, 0.0), Vec2(0.1, 0.15)}};
    cfg.fill = Rect{Vec2(-0.1, 0.0), Vec2(0.1, 0.04)};
    return cfg;
  }

  double pivot_height() const { return scene.fill.max.y() - immersion + stick_length; }
};

namespace detail {

inline ColliderSegment stick_collider(const StickState& now, const StickState& next, double dt) {
  const Vec2 a0 = now.pivot;
  const Vec2 b0 = now.tip();
  const Vec2 a1 = next.pivot;
  const Vec2 b1 = next.tip();
  return {a0, b0, (a1 - a0) / dt, (b1 - b0) / dt};
}

/// Depth of the stick below the local fluid surface, measured along the stick.
inline double submerged_length(const SimState& fluid, const StickState& stick, double h) {
  const Vec2 tip = stick.tip();
  double surface = -1e300;
  for (std::size_t i = 0; i < fluid.particle_count; ++i) {
    const Vec2& p = fluid.positions[i];
    if (std::abs(p.x() - tip.x()) < h && p.y() > surface) surface = p.y();
  }
  if (surface < tip.y()) return 0.0;
  const double along = (surface - tip.y()) / std::max(1e-6, std::cos(stick.inclination));
  return std::clamp(along, 0.0, stick.length);
}

}  // namespace detail

/// Stirs the liquid with the stick following `action` and records the
/// inclination at the action's sample rate. A capsize returns a trace with
/// `failed` set; numerical divergence propagates.
inline InclinationTrace run_stir(const FluidParams& params, const StirAction& action, const StirSetup& setup,
                                 std::uint64_t seed) {
  action.validate();
  const SceneConfig& cfg = setup.scene;
  const double dt = cfg.dt;
  const double h = cfg.smoothing_radius();
  FluidSolver solver;
  SimState fluid = init_scene(cfg, seed, solver.tuning());

  const auto world_pivot = [&](const PivotMotion& m) {
    return PivotMotion{Vec2(m.position.x(), setup.pivot_height()), Vec2(m.velocity.x(), 0.0)};
  };

  StickState stick;
  stick.length = setup.stick_length;
  stick.pivot = world_pivot(pivot_at(action, 0.0)).position;

  // Let the fluid settle around the stick before it starts moving.
  const auto settle_steps = static_cast<long>(std::ceil(setup.settle_time / dt - 1e-9));
  for (long k = 0; k < settle_steps; ++k) {
    const std::array<ColliderSegment, 1> held{detail::stick_collider(stick, stick, dt)};
    solver.advance(fluid, params, cfg, held);
  }
  stick.submerged_length = detail::submerged_length(fluid, stick, h);

  InclinationTrace trace;
  trace.sample_rate = action.sample_rate;
  const auto sample_count = static_cast<std::size_t>(std::floor(action.duration * action.sample_rate + 1e-9)) + 1;
  trace.samples.reserve(sample_count);
  trace.samples.push_back({0.0, stick.inclination});

  const auto steps = static_cast<long>(std::ceil(action.duration / dt - 1e-9));
  for (long k = 0; k < steps && trace.samples.size() < sample_count; ++k) {
    const double t0 = static_cast<double>(k) * dt;
    const double t1 = std::min(action.duration, static_cast<double>(k + 1) * dt);
    const PivotMotion motion = world_pivot(pivot_at(action, t1));

    StickState predicted = stick;
    predicted.pivot = motion.position;
    predicted.inclination = stick.inclination + dt * stick.angular_velocity;
    const std::array<ColliderSegment, 1> collider{detail::stick_collider(stick, predicted, dt)};
    const Vec2 force = solver.advance(fluid, params, cfg, collider)[0];

    const double prev_angle = stick.inclination;
    try {
      stick = stick_step(stick, motion, force, dt, setup.stick);
    } catch (const CapsizeError&) {
      trace.failed = true;
      return trace;
    }
    stick.submerged_length = detail::submerged_length(fluid, stick, h);

    while (trace.samples.size() < sample_count) {
      const double ts = static_cast<double>(trace.samples.size()) / action.sample_rate;
      if (ts > t1 + 1e-12) break;
      const double w = t1 > t0 ? (ts - t0) / (t1 - t0) : 1.0;
      trace.samples.push_back({ts, prev_angle + std::clamp(w, 0.0, 1.0) * (stick.inclination - prev_angle)});
    }
  }
  return trace;
}

}  // namespace stirpour

#endif  // STIRPOUR_SCENARIO_STIR_HPP
