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

#ifndef STIRPOUR_POUR_OPTIMIZER_HPP
#define STIRPOUR_POUR_OPTIMIZER_HPP

#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "stirpour/bo.hpp"
#include "stirpour/errors.hpp"
#include "stirpour/fluid/params.hpp"
#include "stirpour/scenario/pour.hpp"
#include "stirpour/seeds.hpp"

namespace stirpour {

struct PourSearchSpace {
  double omega_min = 0.3;   // rad/s
  double omega_max = 3.0;
  double p_min = 0.0;       // m
  double p_max = 0.08;

  void validate() const {
    if (!(omega_min < omega_max) || !(p_min < p_max)) throw ConfigError("pour search space needs lower < upper");
    if (!(omega_min > 0.0)) throw ConfigError("pour angular velocity must be positive");
  }
  Box box() const { return {Point2(omega_min, p_min), Point2(omega_max, p_max)}; }
  bool contains(const PourAction& a) const {
    return a.omega >= omega_min && a.omega <= omega_max && a.p >= p_min && a.p <= p_max;
  }
};

struct PourRecord {
  PourAction action;
  double z = 0.0;
};

struct PourOptimization {
  PourAction best;               // best observed action
  double predicted_z = 0.0;      // its spill ratio under the optimized parameters
  PourAction posterior_argmin;   // posterior-mean argmin, logged only
  std::vector<PourRecord> history;
};

inline constexpr int kPourInitialDesign = 4;

/// Seed of every pour rollout inside one optimization.
inline std::uint64_t pour_rollout_seed(std::uint64_t seed) { return derive_seed(seed, {0x90a1ULL}); }

/// Bayesian optimization of the pour over `space` with `budget` rollouts under
/// `theta`. Returns the best observed action; the first evaluated one wins ties.
inline PourOptimization optimize_pour(const FluidParams& theta, const PourSearchSpace& space, const PourSetup& setup,
                                      int budget, std::uint64_t seed, BoConfig cfg = {}) {
  space.validate();
  if (budget < kPourInitialDesign) throw DomainError("pour budget must be >= 4");
  cfg.initial_design = kPourInitialDesign;
  const std::uint64_t rollout_seed = pour_rollout_seed(seed);
  const auto objective = [&](const Point2& x) {
    return Evaluation{run_pour(theta, {x[0], x[1]}, setup, rollout_seed).ratio, false};
  };
  const Box box = space.box();
  BoRun run = minimize(objective, box, budget, seed, cfg);

  PourOptimization out;
  out.predicted_z = std::numeric_limits<double>::infinity();
  for (const auto& r : run.history) {
    const PourAction a{r.x[0], r.x[1]};
    out.history.push_back({a, r.eval.value});
    if (r.eval.value < out.predicted_z) {
      out.predicted_z = r.eval.value;
      out.best = a;
    }
  }
  const Point2 pm = posterior_mean_argmin(run.model, box, cfg.grid);
  out.posterior_argmin = {pm[0], pm[1]};
  return out;
}

struct PourVerification {
  std::vector<double> per_seed;
  double mean_z = 0.0;
};

/// Executes `action` under the hidden parameters once per seed.
inline PourVerification verify_pour(const FluidParams& theta_true, const PourAction& action, const PourSetup& setup,
                                    std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw DomainError("verification needs at least one seed");
  PourVerification v;
  for (const auto s : seeds) v.per_seed.push_back(run_pour(theta_true, action, setup, s).ratio);
  v.mean_z = std::accumulate(v.per_seed.begin(), v.per_seed.end(), 0.0) / static_cast<double>(v.per_seed.size());
  return v;
}

}  // namespace stirpour

#endif  // STIRPOUR_POUR_OPTIMIZER_HPP
