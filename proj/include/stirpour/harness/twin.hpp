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

#ifndef STIRPOUR_HARNESS_TWIN_HPP
#define STIRPOUR_HARNESS_TWIN_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "stirpour/calibrate.hpp"
#include "stirpour/errors.hpp"
#include "stirpour/harness/config.hpp"
#include "stirpour/harness/io.hpp"
#include "stirpour/pour_optimizer.hpp"
#include "stirpour/scenario/presets.hpp"
#include "stirpour/scenario/stir.hpp"
#include "stirpour/seeds.hpp"

namespace stirpour {

struct TwinSeeds {
  std::uint64_t reference = 0;
  std::uint64_t calibration = 0;
  std::uint64_t pour = 0;
  std::vector<std::uint64_t> verify;
};

inline std::size_t liquid_index(std::string_view name) {
  const auto& all = liquid_presets();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].name == name) return i;
  }
  throw LookupError("unknown liquid preset \"" + std::string(name) + "\"");
}

/// Seeds of one (liquid, N) cell. Each stage draws from its own counter path
/// under the cell, so no two cells or stages share a stream.
inline TwinSeeds twin_seeds(std::string_view liquid, int budget, std::uint64_t master, int verify_repetitions) {
  const std::uint64_t cell = derive_seed(master, {0x7717ULL, liquid_index(liquid), static_cast<std::uint64_t>(budget)});
  TwinSeeds s;
  s.reference = derive_seed(cell, {1});
  s.calibration = derive_seed(cell, {2});
  s.pour = derive_seed(cell, {3});
  for (int r = 0; r < verify_repetitions; ++r) s.verify.push_back(derive_seed(cell, {4, static_cast<std::uint64_t>(r)}));
  return s;
}

struct TwinReport {
  std::string liquid;
  int budget = 0;
  std::uint64_t master_seed = 0;
  FluidParams theta_true;
  FluidParams theta_star;
  FluidParams best_observed;
  double epsilon = 0.0;
  PourAction pour_action;
  double predicted_z = 0.0;
  PourAction pour_posterior_argmin;
  std::vector<double> per_seed_z;
  double mean_z = 0.0;
  std::vector<CalibrationStep> calibration_history;
  std::vector<PourRecord> pour_history;
  TwinSeeds seeds;
  double wall_clock_seconds = 0.0;
  std::string config_digest;
  std::string tool_version;
};

inline nlohmann::json report_to_json(const TwinReport& r) {
  return {{"liquid", r.liquid},
          {"N", r.budget},
          {"master_seed", r.master_seed},
          {"theta_true", to_json(r.theta_true)},
          {"theta_star", to_json(r.theta_star)},
          {"best_observed", to_json(r.best_observed)},
          {"epsilon", r.epsilon},
          {"pour_action", to_json(r.pour_action)},
          {"predicted_Z", r.predicted_z},
          {"pour_posterior_argmin", to_json(r.pour_posterior_argmin)},
          {"per_seed_Z", r.per_seed_z},
          {"mean_Z", r.mean_z},
          {"calibration_history", calibration_history_json(r.calibration_history)},
          {"pour_history", pour_history_json(r.pour_history)},
          {"seeds",
           {{"reference", r.seeds.reference},
            {"calibration", r.seeds.calibration},
            {"pour", r.seeds.pour},
            {"verify", r.seeds.verify}}},
          {"wall_clock_seconds", r.wall_clock_seconds},
          {"config_digest", r.config_digest},
          {"tool_version", r.tool_version}};
}

inline TwinReport report_from_json(const nlohmann::json& j) {
  try {
    TwinReport r;
    r.liquid = j.at("liquid").get<std::string>();
    r.budget = j.at("N").get<int>();
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    r.theta_true = params_from_json(j.at("theta_true"));
    r.theta_star = params_from_json(j.at("theta_star"));
    r.best_observed = params_from_json(j.at("best_observed"));
    r.epsilon = j.at("epsilon").get<double>();
    r.pour_action = {j.at("pour_action").at("omega").get<double>(), j.at("pour_action").at("p").get<double>()};
    r.predicted_z = j.at("predicted_Z").get<double>();
    r.pour_posterior_argmin = {j.at("pour_posterior_argmin").at("omega").get<double>(),
                               j.at("pour_posterior_argmin").at("p").get<double>()};
    r.per_seed_z = j.at("per_seed_Z").get<std::vector<double>>();
    r.mean_z = j.at("mean_Z").get<double>();
    r.calibration_history = calibration_history_from_json(j.at("calibration_history"));
    r.pour_history = pour_history_from_json(j.at("pour_history"));
    const auto& s = j.at("seeds");
    r.seeds = {s.at("reference").get<std::uint64_t>(), s.at("calibration").get<std::uint64_t>(),
               s.at("pour").get<std::uint64_t>(), s.at("verify").get<std::vector<std::uint64_t>>()};
    r.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    r.config_digest = j.at("config_digest").get<std::string>();
    r.tool_version = j.at("tool_version").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed twin report: ") + e.what());
  }
}

inline std::string report_text(const TwinReport& r) { return report_to_json(r).dump(2) + "\n"; }

/// Everything a twin run produces; the report is the serialized summary.
struct TwinRun {
  TwinReport report;
  InclinationTrace reference;
  InferenceResult inference;
  PourOptimization pour;
};

namespace detail {

template <class F>
auto run_stage(const char* stage, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace detail

/// Full twin experiment: observe the hidden preset, calibrate with `budget`
/// stir rollouts, optimize the pour under the calibrated parameters and verify
/// it under the hidden ones.
inline TwinRun run_twin_full(std::string_view liquid, int budget, std::uint64_t master_seed, const Config& cfg = {}) {
  const auto start = std::chrono::steady_clock::now();
  const LiquidPreset& preset = liquid_preset(liquid);
  if (budget < cfg.calibration.bo.initial_design)
    throw DomainError("twin budget must be >= the initial design size (" +
                      std::to_string(cfg.calibration.bo.initial_design) + ")");

  TwinReport r;
  r.liquid = preset.name;
  r.budget = budget;
  r.master_seed = master_seed;
  r.theta_true = preset.params;
  r.seeds = twin_seeds(liquid, budget, master_seed, cfg.harness.verify_repetitions);
  r.config_digest = config_digest(cfg);
  r.tool_version = kToolVersion;

  InclinationTrace reference;
  InferenceResult inference = detail::run_stage("calibration", [&] {
    reference = run_stir(preset.params, cfg.stir_action, cfg.stir_setup, r.seeds.reference);
    return infer(reference, cfg.stir_action, cfg.stir_setup, budget, r.seeds.calibration, cfg.calibration);
  });
  r.theta_star = inference.theta_star;
  r.best_observed = inference.best_observed;
  r.epsilon = inference.epsilon;
  r.calibration_history = inference.history;

  PourOptimization pour = detail::run_stage("pour", [&] {
    return optimize_pour(r.theta_star, cfg.pour_space, cfg.pour_setup, cfg.pour_budget, r.seeds.pour,
                         cfg.calibration.bo);
  });
  r.pour_action = pour.best;
  r.predicted_z = pour.predicted_z;
  r.pour_posterior_argmin = pour.posterior_argmin;
  r.pour_history = pour.history;

  const auto verified = detail::run_stage(
      "verify", [&] { return verify_pour(preset.params, r.pour_action, cfg.pour_setup, r.seeds.verify); });
  r.per_seed_z = verified.per_seed;
  r.mean_z = verified.mean_z;

  r.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(r), std::move(reference), std::move(inference), std::move(pour)};
}

inline TwinReport run_twin(std::string_view liquid, int budget, std::uint64_t master_seed, const Config& cfg = {}) {
  return run_twin_full(liquid, budget, master_seed, cfg).report;
}

struct SweepCell {
  std::string liquid;
  int budget = 0;
  std::optional<TwinReport> report;
  std::string error;  // empty on success
};

/// Runs every (liquid, N) cell, up to `workers` at a time. A failing cell is
/// recorded and the others still run. Cells come back in row-major order.
inline std::vector<SweepCell> sweep(const std::vector<std::string>& liquids, const std::vector<int>& budgets,
                                    std::uint64_t master_seed, const Config& cfg = {}, int workers = 1) {
  if (liquids.empty()) throw DomainError("sweep needs at least one liquid");
  if (budgets.empty()) throw DomainError("sweep needs at least one budget");
  for (const auto& l : liquids) liquid_preset(l);

  std::vector<SweepCell> cells;
  for (const auto& l : liquids) {
    for (const int n : budgets) cells.push_back({l, n, std::nullopt, {}});
  }
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      SweepCell& c = cells[k];
      try {
        c.report = run_twin(c.liquid, c.budget, master_seed, cfg);
      } catch (const std::exception& e) {
        c.error = e.what();
      }
    }
  };
  const auto n = static_cast<std::size_t>(std::clamp(workers, 1, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return cells;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

}  // namespace detail

/// One row per cell. The baseline column is reserved and left empty.
inline std::string sweep_summary_csv(const std::vector<SweepCell>& cells) {
  std::string out = "liquid,N,mean_Z,theta_star_1,theta_star_2,pour_calibration_baseline_Z,error\n";
  char buf[128];
  for (const auto& c : cells) {
    out += c.liquid + "," + std::to_string(c.budget) + ",";
    if (c.report) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", c.report->mean_z, c.report->theta_star.viscosity(),
                    c.report->theta_star.cohesion());
      out += buf;
    } else {
      out += ",,,";
    }
    out += "," + detail::csv_field(c.error) + "\n";
  }
  return out;
}

inline std::filesystem::path report_filename(const std::string& liquid, int budget) {
  return "twin_" + liquid + "_N" + std::to_string(budget) + ".json";
}

inline void write_sweep(const std::vector<SweepCell>& cells, const std::filesystem::path& dir) {
  for (const auto& c : cells) {
    if (c.report) atomic_write(dir / report_filename(c.liquid, c.budget), report_text(*c.report));
  }
  atomic_write(dir / "summary.csv", sweep_summary_csv(cells));
}

}  // namespace stirpour

#endif  // STIRPOUR_HARNESS_TWIN_HPP
