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

#ifndef STIRPOUR_BO_HPP
#define STIRPOUR_BO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "stirpour/errors.hpp"
#include "stirpour/gp.hpp"

namespace stirpour {

/// Axis-aligned search box in the optimizer's native units.
struct Box {
  Point2 lo = Point2(0.0, 0.0);
  Point2 hi = Point2(1.0, 1.0);

  void validate() const {
    if (!(lo[0] < hi[0] && lo[1] < hi[1])) throw ConfigError("search box needs lower < upper on both axes");
  }
  Point2 from_unit(const Point2& u) const { return lo + u.cwiseProduct(hi - lo); }
  Point2 to_unit(const Point2& x) const { return (x - lo).cwiseQuotient(hi - lo); }
  bool contains(const Point2& x) const {
    return x[0] >= lo[0] && x[0] <= hi[0] && x[1] >= lo[1] && x[1] <= hi[1];
  }
};

struct BoConfig {
  int initial_design = 5;
  double beta = 2.0;   // lower-confidence-bound weight
  int grid = 101;      // acquisition lattice points per axis
  KernelConfig kernel;
};

/// Lattice cell (i, j) of a resolution x resolution grid over the unit square;
/// i indexes the first axis and is the row in row-major order.
inline Point2 unit_grid_point(int i, int j, int resolution) {
  const double d = static_cast<double>(resolution - 1);
  return {static_cast<double>(i) / d, static_cast<double>(j) / d};
}

/// Row-major argmin of `score(unit point)` over the lattice; the first
/// (lowest-index) cell wins ties.
template <class Score>
Point2 grid_argmin(Score&& score, int resolution) {
  if (resolution < 2) throw DomainError("grid resolution must be >= 2");
  double best = std::numeric_limits<double>::infinity();
  Point2 arg = unit_grid_point(0, 0, resolution);
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const Point2 u = unit_grid_point(i, j, resolution);
      const double v = score(u);
      if (v < best) {
        best = v;
        arg = u;
      }
    }
  }
  return arg;
}

/// Latin-hypercube design of `n` points in `box`: each axis is split into n
/// strata and every stratum holds exactly one point.
inline std::vector<Point2> initial_design(int n, const Box& box, std::uint64_t seed) {
  if (n < 1) throw DomainError("initial design needs n >= 1");
  box.validate();
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
  std::vector<std::vector<int>> perms(2, std::vector<int>(static_cast<std::size_t>(n)));
  for (auto& perm : perms) {
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
  }
  std::vector<Point2> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Point2 u;
    for (int axis = 0; axis < 2; ++axis) {
      u[axis] = (perms[static_cast<std::size_t>(axis)][static_cast<std::size_t>(k)] + uniform()) / n;
    }
    points.push_back(box.from_unit(u));
  }
  return points;
}

/// Minimizer of mu - beta * sigma over the acquisition lattice. The model is
/// fitted on unit-normalized inputs; the result is in box units.
inline Point2 propose_next(const GpModel& model, const Box& box, double beta = 2.0, int resolution = 101) {
  const Point2 u = grid_argmin(
      [&](const Point2& q) {
        const auto p = model.predict(q);
        return p.mu - beta * p.sigma;
      },
      resolution);
  return box.from_unit(u);
}

/// Argmin of the posterior mean over the lattice, in box units.
inline Point2 posterior_mean_argmin(const GpModel& model, const Box& box, int resolution = 101) {
  return box.from_unit(grid_argmin([&](const Point2& q) { return model.predict(q).mu; }, resolution));
}

struct Evaluation {
  double value = 0.0;
  bool failed = false;
};

struct BoRecord {
  int iteration = 0;
  Point2 x;
  Evaluation eval;
};

struct BoRun {
  std::vector<BoRecord> history;
  GpModel model;
};

inline GpModel fit_history(const std::vector<BoRecord>& history, const Box& box, const KernelConfig& kernel) {
  std::vector<GpModel::Observation> obs;
  obs.reserve(history.size());
  for (const auto& r : history) obs.emplace_back(box.to_unit(r.x), r.eval.value);
  return GpModel::fit(obs, kernel);
}

/// Sequential GP/LCB minimization of `objective` over `box` with `budget`
/// evaluations in total, the first min(initial_design, budget) from a Latin
/// hypercube.
template <class Objective>
BoRun minimize(Objective&& objective, const Box& box, int budget, std::uint64_t seed, const BoConfig& cfg) {
  if (budget < 1) throw DomainError("optimizer budget must be >= 1");
  box.validate();
  const int n0 = std::min(cfg.initial_design, budget);
  std::vector<BoRecord> history;
  history.reserve(static_cast<std::size_t>(budget));
  int k = 0;
  for (const auto& x : initial_design(n0, box, seed)) {
    history.push_back({k++, x, objective(x)});
  }
  GpModel model = fit_history(history, box, cfg.kernel);
  while (k < budget) {
    const Point2 x = propose_next(model, box, cfg.beta, cfg.grid);
    history.push_back({k++, x, objective(x)});
    model = fit_history(history, box, cfg.kernel);
  }
  return {std::move(history), std::move(model)};
}

}  // namespace stirpour

#endif  // STIRPOUR_BO_HPP
