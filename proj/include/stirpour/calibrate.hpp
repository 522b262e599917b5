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

#ifndef STIRPOUR_CALIBRATE_HPP
#define STIRPOUR_CALIBRATE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "stirpour/bo.hpp"
#include "stirpour/discrepancy.hpp"
#include "stirpour/errors.hpp"
#include "stirpour/fluid/params.hpp"
#include "stirpour/gp.hpp"
#include "stirpour/scenario/stir.hpp"
#include "stirpour/seeds.hpp"

namespace stirpour {

struct CalibrationConfig {
  BoConfig bo;                            // initial design 5, LCB beta 2, 101 x 101 grid
  double penalty = kDefaultCapsizePenalty;
  int repetitions = 1;                    // simulated rollouts averaged per parameter point
};

struct CalibrationStep {
  int iteration = 0;
  FluidParams theta;
  double discrepancy = 0.0;
  bool failed = false;
};

struct InferenceResult {
  FluidParams theta_star;      // posterior-mean argmin
  FluidParams best_observed;   // lowest observed discrepancy
  std::vector<CalibrationStep> history;
  GpModel model;
  double epsilon = 0.0;        // min observed discrepancy
};

inline FluidParams to_params(const Point2& x) {
  return {std::clamp(x[0], 0.0, 1.0), std::clamp(x[1], 0.0, 1.0)};
}
inline Point2 to_point(const FluidParams& p) { return {p.viscosity(), p.cohesion()}; }

/// Seed of the r-th simulated repetition of a calibration.
inline std::uint64_t calibration_rollout_seed(std::uint64_t seed, int repetition) {
  return derive_seed(seed, {0xca1ULL, static_cast<std::uint64_t>(repetition)});
}

/// Discrepancy of the simulator at `theta` against `reference`, averaged over
/// the configured repetitions. Capsized rollouts contribute the penalty.
inline Evaluation stir_discrepancy(const InclinationTrace& reference, const FluidParams& theta,
                                   const StirAction& action, const StirSetup& setup, std::uint64_t seed,
                                   const CalibrationConfig& cfg) {
  const int reps = std::max(1, cfg.repetitions);
  Evaluation e;
  for (int r = 0; r < reps; ++r) {
    const auto sim = run_stir(theta, action, setup, calibration_rollout_seed(seed, r));
    const auto d = discrepancy(reference, sim, cfg.penalty);
    e.value += d.value / reps;
    e.failed = e.failed || d.failed;
  }
  return e;
}

/// Wraps a finished optimizer run as an InferenceResult.
inline InferenceResult summarize_calibration(BoRun run, const CalibrationConfig& cfg) {
  const bool all_failed = std::all_of(run.history.begin(), run.history.end(),
                                      [](const BoRecord& r) { return r.eval.failed; });
  if (all_failed) throw CalibrationFailure("every calibration rollout capsized");

  const Box unit;
  InferenceResult out{to_params(posterior_mean_argmin(run.model, unit, cfg.bo.grid)), {}, {}, run.model,
                      std::numeric_limits<double>::infinity()};
  out.history.reserve(run.history.size());
  for (const auto& r : run.history) {
    out.history.push_back({r.iteration, to_params(r.x), r.eval.value, r.eval.failed});
    if (r.eval.value < out.epsilon) {
      out.epsilon = r.eval.value;
      out.best_observed = to_params(r.x);
    }
  }
  return out;
}

/// Bayesian-optimization calibration of the simulator parameters against an
/// observed inclination trace, with `budget` stir rollouts in total.
inline InferenceResult infer(const InclinationTrace& reference, const StirAction& action, const StirSetup& setup,
                             int budget, std::uint64_t seed, const CalibrationConfig& cfg = {}) {
  if (budget < 1) throw DomainError("calibration budget must be >= 1");
  if (reference.failed) throw DomainError("reference trace must not be failed");
  const auto objective = [&](const Point2& x) {
    return stir_discrepancy(reference, to_params(x), action, setup, seed, cfg);
  };
  return summarize_calibration(minimize(objective, Box{}, budget, seed, cfg.bo), cfg);
}

/// Approximate likelihood Phi((epsilon - mu) / sigma) on a lattice over the
/// parameter box, row-major with the viscosity axis as rows.
struct PosteriorGrid {
  int resolution = 0;
  double epsilon = 0.0;
  std::vector<double> values;
  std::vector<double> mu;
  std::vector<double> sigma;

  Point2 cell(std::size_t index) const {
    return unit_grid_point(static_cast<int>(index) / resolution, static_cast<int>(index) % resolution, resolution);
  }
};

inline double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

inline double likelihood_value(double mu, double sigma, double epsilon) {
  if (sigma <= 0.0) return mu <= epsilon ? 1.0 : 0.0;
  return standard_normal_cdf((epsilon - mu) / sigma);
}

inline PosteriorGrid posterior_grid(const GpModel& model, double epsilon, int resolution) {
  if (resolution < 2) throw DomainError("posterior grid resolution must be >= 2");
  PosteriorGrid g;
  g.resolution = resolution;
  g.epsilon = epsilon;
  const auto cells = static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution);
  g.values.reserve(cells);
  g.mu.reserve(cells);
  g.sigma.reserve(cells);
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const auto p = model.predict(unit_grid_point(i, j, resolution));
      g.mu.push_back(p.mu);
      g.sigma.push_back(p.sigma);
      g.values.push_back(likelihood_value(p.mu, p.sigma, epsilon));
    }
  }
  return g;
}

}  // namespace stirpour

#endif  // STIRPOUR_CALIBRATE_HPP
