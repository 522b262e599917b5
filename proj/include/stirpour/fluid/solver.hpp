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

#ifndef STIRPOUR_FLUID_SOLVER_HPP
#define STIRPOUR_FLUID_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "stirpour/errors.hpp"
#include "stirpour/fluid/kernels.hpp"
#include "stirpour/fluid/params.hpp"
#include "stirpour/fluid/scene.hpp"
#include "stirpour/geometry.hpp"

namespace stirpour {

struct SimState {
  std::vector<Vec2> positions;   // m
  std::vector<Vec2> velocities;  // m/s
  std::size_t particle_count = 0;
  double time = 0.0;             // s
  std::uint64_t rng_seed = 0;
  std::int64_t step_index = 0;
};

/// A straight collider over one step: endpoints at the start of the step and
/// their velocities. The end-of-step position is `a + velocity_a * dt`.
struct ColliderSegment {
  Vec2 a{0.0, 0.0};
  Vec2 b{0.0, 0.0};
  Vec2 velocity_a{0.0, 0.0};
  Vec2 velocity_b{0.0, 0.0};
};

struct StepResult {
  SimState state;
  /// Net force the fluid applied to each external collider during the step (N).
  std::vector<Vec2> collider_forces;
};

/// Solver constants that are not part of the parameter space.
struct SolverTuning {
  double jitter = 0.05;           // initial placement jitter, fraction of spacing
  double relaxation = 0.5;        // constraint softening, fraction of a full-neighbourhood gradient norm
  double tensile_clamp = 0.2;     // lower bound on the density constraint
  double artificial_pressure_dq = 0.2;  // reference distance, fraction of h
  double wall_density_scale = 1.0;
};

namespace detail {

inline double lattice_kernel_sum(double spacing) {
  const double h = 2.0 * spacing;
  double sum = 0.0;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) sum += kernels::poly6(spacing * std::hypot(i, j), h);
  return sum;
}

inline double lattice_gradient_norm2(double spacing, double mass_over_rho) {
  const double h = 2.0 * spacing;
  double sum = 0.0;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) {
      if (i == 0 && j == 0) continue;
      const double g = mass_over_rho * kernels::spiky_derivative(spacing * std::hypot(i, j), h);
      sum += g * g;
    }
  return sum;
}

inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Wall {
  Vec2 a0, b0;  // start of step
  Vec2 a1, b1;  // end of step
  Vec2 va, vb;
  int collider = -1;  // index into the external collider list, -1 for container walls
  Vec2 lo, hi;        // bounding box of the swept segment, padded by the interaction reach

  bool near(const Vec2& p) const {
    return p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y();
  }
};

struct WallContact {
  int wall = 0;
  double distance = 0.0;
  Vec2 normal{0.0, 0.0};  // from wall toward particle
  Vec2 wall_velocity{0.0, 0.0};
};

class Workspace {
 public:
  std::vector<Vec2> predicted;
  std::vector<Vec2> delta;
  std::vector<double> density;
  std::vector<double> lambda;
  std::vector<int> cell_start;
  std::vector<int> sorted;
  std::vector<int> cell_of;
  std::vector<int> fill;
  std::vector<std::pair<int, int>> pairs;  // i < j, within the smoothing radius
  std::vector<double> pair_kernel;         // poly6 per pair
  std::vector<Vec2> pair_gradient;         // (m/rho0) grad_i W per pair
  std::vector<Vec2> grad;
  std::vector<double> grad2;
  std::vector<Wall> walls;
  std::vector<Vec2> displacement;  // per wall, accumulated particle displacement
  std::vector<WallContact> contacts;
  std::vector<int> contact_start;
};

inline Workspace& thread_workspace() {
  thread_local Workspace ws;
  return ws;
}

}  // namespace detail

/// Mass of one particle: rest density divided by the kernel sum over a
/// perfect lattice, so an undisturbed lattice sits exactly at rest density.
inline double particle_mass(const SceneConfig& cfg) {
  return cfg.rest_density / detail::lattice_kernel_sum(cfg.spacing);
}

/// Seeds particles on a jittered grid covering the fill region.
inline SimState init_scene(const SceneConfig& cfg, std::uint64_t seed,
                           const SolverTuning& tuning = {}) {
  cfg.validate();
  const auto nx = static_cast<std::size_t>(std::floor(cfg.fill.width() / cfg.spacing + 1e-9));
  const auto ny = static_cast<std::size_t>(std::floor(cfg.fill.height() / cfg.spacing + 1e-9));
  if (nx == 0 || ny == 0) throw ConfigError("fill region smaller than one particle spacing");

  SimState state;
  state.rng_seed = seed;
  state.positions.reserve(nx * ny);
  std::mt19937_64 rng(seed);
  const double amp = tuning.jitter * cfg.spacing;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double jx = (2.0 * detail::unit_uniform(rng) - 1.0) * amp;
      const double jy = (2.0 * detail::unit_uniform(rng) - 1.0) * amp;
      state.positions.emplace_back(cfg.fill.min.x() + (static_cast<double>(i) + 0.5) * cfg.spacing + jx,
                                   cfg.fill.min.y() + (static_cast<double>(j) + 0.5) * cfg.spacing + jy);
    }
  }
  state.velocities.assign(state.positions.size(), Vec2::Zero());
  state.particle_count = state.positions.size();
  return state;
}

/// Position-based fluids solver. Holds scratch buffers only; `step` is a pure
/// function of its arguments.
class FluidSolver {
 public:
  explicit FluidSolver(SolverTuning tuning = {}) : tuning_(tuning) {}

  const SolverTuning& tuning() const { return tuning_; }

  StepResult step(const SimState& state, const FluidParams& params, const SceneConfig& cfg,
                  std::span<const ColliderSegment> colliders = {}) const {
    StepResult out{state, {}};
    out.collider_forces = advance(out.state, params, cfg, colliders);
    return out;
  }

  /// In-place variant of `step`; returns the collider forces.
  std::vector<Vec2> advance(SimState& state, const FluidParams& params, const SceneConfig& cfg,
                            std::span<const ColliderSegment> colliders = {}) const;

 private:
  void build_walls(const SceneConfig& cfg, std::span<const ColliderSegment> colliders) const;
  void build_neighbors(const SceneConfig& cfg, std::size_t n) const;
  void gather_contacts(const SceneConfig& cfg, std::size_t n) const;
  void project(const SceneConfig& cfg, const SimState& state) const;

  SolverTuning tuning_;
  mutable detail::Workspace ws_;
};

inline void FluidSolver::build_walls(const SceneConfig& cfg,
                                     std::span<const ColliderSegment> colliders) const {
  auto& walls = ws_.walls;
  walls.clear();
  for (const auto& poly : cfg.containers) {
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
      walls.push_back({poly[i], poly[i + 1], poly[i], poly[i + 1], Vec2::Zero(), Vec2::Zero(), -1, {}, {}});
    }
  }
  for (std::size_t c = 0; c < colliders.size(); ++c) {
    const auto& s = colliders[c];
    walls.push_back({s.a, s.b, s.a + cfg.dt * s.velocity_a, s.b + cfg.dt * s.velocity_b,
                     s.velocity_a, s.velocity_b, static_cast<int>(c), {}, {}});
  }
  const double pad = 2.0 * cfg.smoothing_radius();
  for (auto& w : walls) {
    w.lo = w.a0.cwiseMin(w.b0).cwiseMin(w.a1).cwiseMin(w.b1) - Vec2(pad, pad);
    w.hi = w.a0.cwiseMax(w.b0).cwiseMax(w.a1).cwiseMax(w.b1) + Vec2(pad, pad);
  }
  ws_.displacement.assign(walls.size(), Vec2::Zero());
}

inline void FluidSolver::build_neighbors(const SceneConfig& cfg, std::size_t n) const {
  const double h = cfg.smoothing_radius();
  const int nx = std::max(1, static_cast<int>(std::ceil(cfg.world.width() / h)));
  const int ny = std::max(1, static_cast<int>(std::ceil(cfg.world.height() / h)));

  // Counting sort of particles by cell; stable, so iteration order is fixed.
  auto& start = ws_.cell_start;
  auto& cell = ws_.cell_of;
  start.assign(static_cast<std::size_t>(nx) * ny + 1, 0);
  cell.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = ws_.predicted[i];
    const int cx = std::clamp(static_cast<int>((p.x() - cfg.world.min.x()) / h), 0, nx - 1);
    const int cy = std::clamp(static_cast<int>((p.y() - cfg.world.min.y()) / h), 0, ny - 1);
    cell[i] = cy * nx + cx;
    ++start[static_cast<std::size_t>(cell[i]) + 1];
  }
  for (std::size_t c = 1; c < start.size(); ++c) start[c] += start[c - 1];
  ws_.sorted.assign(n, 0);
  ws_.fill.assign(start.begin(), start.end() - 1);
  for (std::size_t i = 0; i < n; ++i) ws_.sorted[static_cast<std::size_t>(ws_.fill[cell[i]]++)] = static_cast<int>(i);

  const double h2 = h * h;
  ws_.pairs.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const int cx = cell[i] % nx;
    const int cy = cell[i] / nx;
    for (int y = std::max(0, cy - 1); y <= std::min(ny - 1, cy + 1); ++y) {
      for (int x = std::max(0, cx - 1); x <= std::min(nx - 1, cx + 1); ++x) {
        const int c = y * nx + x;
        for (int k = start[c]; k < start[c + 1]; ++k) {
          const int j = ws_.sorted[static_cast<std::size_t>(k)];
          if (j <= static_cast<int>(i)) continue;
          if ((ws_.predicted[i] - ws_.predicted[j]).squaredNorm() < h2) ws_.pairs.emplace_back(static_cast<int>(i), j);
        }
      }
    }
  }
}

inline void FluidSolver::gather_contacts(const SceneConfig& cfg, std::size_t n) const {
  const double h = cfg.smoothing_radius();
  ws_.contacts.clear();
  ws_.contact_start.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = ws_.predicted[i];
    for (std::size_t w = 0; w < ws_.walls.size(); ++w) {
      const auto& wall = ws_.walls[w];
      if (!wall.near(p)) continue;
      const auto cp = closest_on_segment(wall.a1, wall.b1, p);
      if (cp.distance >= h || cp.t <= 0.0 || cp.t >= 1.0 || cp.distance <= 0.0) continue;
      const Vec2 normal = (p - cp.point) / cp.distance;
      const Vec2 v = wall.va + cp.t * (wall.vb - wall.va);
      ws_.contacts.push_back({static_cast<int>(w), cp.distance, normal, v});
    }
    ws_.contact_start[i + 1] = static_cast<int>(ws_.contacts.size());
  }
}

inline void FluidSolver::project(const SceneConfig& cfg, const SimState& state) const {
  const double r = cfg.particle_radius();
  const double reach = 2.0 * cfg.smoothing_radius();
  const std::size_t n = state.particle_count;
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 x = ws_.predicted[i];
    const Vec2& x0 = state.positions[i];
    for (std::size_t w = 0; w < ws_.walls.size(); ++w) {
      const auto& wall = ws_.walls[w];
      if (!wall.near(x) && !wall.near(x0)) continue;
      const Vec2 before = x;
      const Vec2 e1 = wall.b1 - wall.a1;
      const double len = e1.norm();
      const Vec2 nrm = Vec2(-e1.y(), e1.x()) / len;

      const auto c0 = closest_on_segment(wall.a0, wall.b0, x0);
      bool crossed = false;
      double side0 = cross(wall.b0 - wall.a0, x0 - wall.a0) >= 0.0 ? 1.0 : -1.0;
      if (c0.distance < reach) {
        // Carry the start point along with the wall so moving walls do not sweep past it.
        const Vec2 carried = x0 + (wall.a1 + c0.t * e1) - c0.point;
        crossed = segments_cross(carried, x, wall.a1, wall.b1);
      }
      const auto c1 = closest_on_segment(wall.a1, wall.b1, x);
      if (crossed) {
        x = c1.point + side0 * r * nrm;
      } else if (c1.distance < r) {
        if (c1.t > 0.0 && c1.t < 1.0) {
          const double side = cross(e1, x - wall.a1) >= 0.0 ? 1.0 : -1.0;
          x = c1.point + side * r * nrm;
        } else if (c1.distance > 0.0) {
          x = c1.point + (x - c1.point) * (r / c1.distance);
        } else {
          x = c1.point + side0 * r * nrm;
        }
      }
      if (wall.collider >= 0) ws_.displacement[w] += x - before;
    }
    x.x() = std::clamp(x.x(), cfg.world.min.x() + r, cfg.world.max.x() - r);
    x.y() = std::clamp(x.y(), cfg.world.min.y() + r, cfg.world.max.y() - r);
    ws_.predicted[i] = x;
  }
}

inline std::vector<Vec2> FluidSolver::advance(SimState& state, const FluidParams& params,
                                              const SceneConfig& cfg,
                                              std::span<const ColliderSegment> colliders) const {
  const std::size_t n = state.particle_count;
  const double dt = cfg.dt;
  const double h = cfg.smoothing_radius();
  const double rho0 = cfg.rest_density;
  const double mass = particle_mass(cfg);
  const double m_over_rho = mass / rho0;
  const double grad_ref = detail::lattice_gradient_norm2(cfg.spacing, m_over_rho);
  const double eps = tuning_.relaxation * grad_ref;
  const double wall_scale = tuning_.wall_density_scale;
  const double dq_kernel = kernels::poly6(tuning_.artificial_pressure_dq * h, h);
  const double ap_strength = params.artificial_pressure() / grad_ref;
  const double xsph = params.xsph_coefficient();

  build_walls(cfg, colliders);

  auto& x = ws_.predicted;
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    state.velocities[i].y() -= dt * cfg.gravity;
    x[i] = state.positions[i] + dt * state.velocities[i];
  }
  project(cfg, state);
  build_neighbors(cfg, n);

  const std::size_t np = ws_.pairs.size();
  ws_.pair_kernel.resize(np);
  ws_.pair_gradient.resize(np);
  ws_.density.assign(n, 0.0);
  ws_.lambda.assign(n, 0.0);
  for (int iter = 0; iter < cfg.solver_iterations; ++iter) {
    gather_contacts(cfg, n);
    ws_.density.assign(n, mass * kernels::poly6(0.0, h));
    ws_.grad.assign(n, Vec2::Zero());
    ws_.grad2.assign(n, 0.0);
    for (std::size_t k = 0; k < np; ++k) {
      const auto [i, j] = ws_.pairs[k];
      const Vec2 d = x[i] - x[j];
      const double r = d.norm();
      const double w = kernels::poly6(r, h);
      ws_.pair_kernel[k] = w;
      ws_.density[i] += mass * w;
      ws_.density[j] += mass * w;
      const Vec2 g = r > 0.0 ? Vec2(m_over_rho * kernels::spiky_derivative(r, h) / r * d) : Vec2::Zero();
      ws_.pair_gradient[k] = g;
      ws_.grad[i] += g;
      ws_.grad[j] -= g;
      const double g2 = g.squaredNorm();
      ws_.grad2[i] += g2;
      ws_.grad2[j] += g2;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double rho = ws_.density[i];
      Vec2 grad_i = ws_.grad[i];
      for (int k = ws_.contact_start[i]; k < ws_.contact_start[i + 1]; ++k) {
        const auto& c = ws_.contacts[static_cast<std::size_t>(k)];
        rho += wall_scale * rho0 * kernels::boundary_fraction(c.distance, h);
        grad_i += wall_scale * kernels::boundary_fraction_derivative(c.distance, h) * c.normal;
      }
      ws_.density[i] = rho;
      const double constraint = std::max(rho / rho0 - 1.0, -tuning_.tensile_clamp);
      ws_.lambda[i] = -constraint / (grad_i.squaredNorm() + ws_.grad2[i] + eps);
    }
    ws_.delta.assign(n, Vec2::Zero());
    for (std::size_t k = 0; k < np; ++k) {
      const auto [i, j] = ws_.pairs[k];
      const double ratio = ws_.pair_kernel[k] / dq_kernel;
      const double r2 = ratio * ratio;
      const Vec2 c = (ws_.lambda[i] + ws_.lambda[j] - ap_strength * r2 * r2) * ws_.pair_gradient[k];
      ws_.delta[i] += c;
      ws_.delta[j] -= c;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (int k = ws_.contact_start[i]; k < ws_.contact_start[i + 1]; ++k) {
        const auto& c = ws_.contacts[static_cast<std::size_t>(k)];
        const Vec2 push = ws_.lambda[i] * wall_scale *
                          kernels::boundary_fraction_derivative(c.distance, h) * c.normal;
        ws_.delta[i] += push;
        if (ws_.walls[static_cast<std::size_t>(c.wall)].collider >= 0) ws_.displacement[static_cast<std::size_t>(c.wall)] += push;
      }
      x[i] += ws_.delta[i];
    }
    project(cfg, state);
  }

  // Velocity update, then XSPH smoothing against neighbours and walls.
  for (std::size_t i = 0; i < n; ++i) state.velocities[i] = (x[i] - state.positions[i]) / dt;
  gather_contacts(cfg, n);
  auto& dv = ws_.delta;
  dv.assign(n, Vec2::Zero());
  for (const auto& [i, j] : ws_.pairs) {
    const double w = kernels::poly6((x[i] - x[j]).norm(), h);
    const Vec2 dvel = state.velocities[j] - state.velocities[i];
    dv[i] += (mass / ws_.density[j]) * w * dvel;
    dv[j] -= (mass / ws_.density[i]) * w * dvel;
  }
  auto smoothed = std::move(ws_.grad);
  smoothed.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = ws_.contact_start[i]; k < ws_.contact_start[i + 1]; ++k) {
      const auto& c = ws_.contacts[static_cast<std::size_t>(k)];
      const Vec2 wall_dv = kernels::boundary_fraction(c.distance, h) * (c.wall_velocity - state.velocities[i]);
      dv[i] += wall_dv;
      if (ws_.walls[static_cast<std::size_t>(c.wall)].collider >= 0) ws_.displacement[static_cast<std::size_t>(c.wall)] += xsph * dt * wall_dv;
    }
    smoothed[i] = state.velocities[i] + xsph * dv[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    state.velocities[i] = smoothed[i];
    state.positions[i] = x[i];
    if (!std::isfinite(x[i].x()) || !std::isfinite(x[i].y()) || !std::isfinite(smoothed[i].x()) ||
        !std::isfinite(smoothed[i].y())) {
      throw NumericalDivergence(state.step_index, "non-finite particle " + std::to_string(i));
    }
  }
  ws_.grad = std::move(smoothed);
  state.time += dt;
  ++state.step_index;

  std::vector<Vec2> forces(colliders.size(), Vec2::Zero());
  for (std::size_t w = 0; w < ws_.walls.size(); ++w) {
    const int c = ws_.walls[w].collider;
    if (c >= 0) forces[c] -= mass * ws_.displacement[w] / (dt * dt);
  }
  return forces;
}

/// One solver step. Uses a per-thread scratch workspace.
inline StepResult step(const SimState& state, const FluidParams& params, const SceneConfig& cfg,
                       std::span<const ColliderSegment> colliders = {}) {
  thread_local FluidSolver solver;
  return solver.step(state, params, cfg, colliders);
}

/// Max over particles of |rho_i / rho_0 - 1|, using the solver's kernel and
/// wall contributions.
/// Per-particle density with the solver's kernel, including the wall term.
/// O(n^2); meant for instrumentation, not the time loop.
inline std::vector<double> particle_densities(const SimState& state, const SceneConfig& cfg,
                                              const SolverTuning& tuning = {}) {
  const double h = cfg.smoothing_radius();
  const double mass = particle_mass(cfg);
  const double h2 = h * h;
  std::vector<std::pair<Vec2, Vec2>> walls;
  for (const auto& poly : cfg.containers)
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) walls.emplace_back(poly[i], poly[i + 1]);

  std::vector<double> out(state.particle_count, 0.0);
  for (std::size_t i = 0; i < state.particle_count; ++i) {
    const Vec2& p = state.positions[i];
    double rho = 0.0;
    for (std::size_t j = 0; j < state.particle_count; ++j) {
      const double r2 = (p - state.positions[j]).squaredNorm();
      if (r2 < h2) rho += mass * kernels::poly6(std::sqrt(r2), h);
    }
    for (const auto& [a, b] : walls) {
      const auto cp = closest_on_segment(a, b, p);
      if (cp.distance < h && cp.t > 0.0 && cp.t < 1.0 && cp.distance > 0.0)
        rho += tuning.wall_density_scale * cfg.rest_density * kernels::boundary_fraction(cp.distance, h);
    }
    out[i] = rho;
  }
  return out;
}

/// max_i |rho_i / rho0 - 1|.
inline double density_residual(const SimState& state, const SceneConfig& cfg,
                               const SolverTuning& tuning = {}) {
  if (state.particle_count == 0) throw DomainError("density residual of an empty state");
  double worst = 0.0;
  for (const double rho : particle_densities(state, cfg, tuning))
    worst = std::max(worst, std::abs(rho / cfg.rest_density - 1.0));
  return worst;
}

/// Particles inside `region` (min edges inclusive, max edges exclusive).
inline std::size_t count_in_region(const SimState& state, const Rect& region) {
  return static_cast<std::size_t>(std::count_if(
      state.positions.begin(), state.positions.begin() + static_cast<std::ptrdiff_t>(state.particle_count),
      [&](const Vec2& p) { return region.contains(p); }));
}

}  // namespace stirpour

#endif  // STIRPOUR_FLUID_SOLVER_HPP
