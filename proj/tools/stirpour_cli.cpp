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

// Command-line driver for stir rollouts, calibration, pour optimization and
// twin experiments.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "stirpour.hpp"

namespace fs = std::filesystem;
using namespace stirpour;

namespace {

struct Common {
  std::string config_path;
  std::uint64_t seed = 1;
  std::string out = ".";
  int workers = 0;  // 0: take harness.workers from the config
};

Config load_config(const Common& c) {
  if (c.config_path.empty()) return Config{};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text(c.config_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(c.config_path + ": " + e.what());
  }
  return config_from_json(doc);
}

void write_resolved(const Config& cfg, const fs::path& out) {
  atomic_write(out / "config.resolved.json", config_to_json(cfg).dump(2) + "\n");
}

FluidParams theta_from(const std::string& liquid, double viscosity, double cohesion) {
  if (!liquid.empty()) return liquid_preset(liquid).params;
  return FluidParams(viscosity, cohesion);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stirpour: calibrate a particle-fluid simulator from stirring, then plan a pour"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", common.seed, "master seed");
  app.add_option("--out", common.out, "output directory");
  app.add_option("--workers", common.workers, "concurrent sweep cells")->check(CLI::NonNegativeNumber);

  std::string liquid;
  double viscosity = 0.1;
  double cohesion = 0.1;
  auto* stir = app.add_subcommand("stir", "one stir rollout, written as trace.csv");
  stir->fallthrough();
  stir->add_option("--liquid", liquid, "preset name (overrides --viscosity/--cohesion)");
  stir->add_option("--viscosity", viscosity)->check(CLI::Range(0.0, 1.0));
  stir->add_option("--cohesion", cohesion)->check(CLI::Range(0.0, 1.0));

  std::string reference_path;
  int budget = 20;
  auto* calibrate = app.add_subcommand("calibrate", "reference trace CSV in, inference.json and posterior.csv out");
  calibrate->fallthrough();
  calibrate->add_option("--reference", reference_path, "observed trace CSV")->required()->check(CLI::ExistingFile);
  calibrate->add_option("-N,--budget", budget, "stir rollouts");

  std::string theta_path;
  auto* pour = app.add_subcommand("pour", "parameter JSON in, pour_history.json out");
  pour->fallthrough();
  pour->add_option("--theta", theta_path, "JSON with viscosity and cohesion")->required()->check(CLI::ExistingFile);

  auto* twin = app.add_subcommand("twin", "full twin experiment for one liquid preset");
  twin->fallthrough();
  twin->add_option("--liquid", liquid)->required();
  twin->add_option("-N,--budget", budget, "stir rollouts");

  auto* sweep_cmd = app.add_subcommand("sweep", "twin experiments over harness.liquids x harness.budgets");
  sweep_cmd->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg = load_config(common);
    if (common.workers > 0) cfg.harness.workers = common.workers;
    const fs::path out = common.out;
    fs::create_directories(out);
    write_resolved(cfg, out);

    if (*stir) {
      const auto trace = run_stir(theta_from(liquid, viscosity, cohesion), cfg.stir_action, cfg.stir_setup,
                                  common.seed);
      atomic_write(out / "trace.csv", trace_to_csv(trace));
      std::printf("%zu samples%s\n", trace.size(), trace.failed ? " (capsized)" : "");
    } else if (*calibrate) {
      const auto reference = trace_from_csv(read_text(reference_path), cfg.stir_action.sample_rate);
      const auto result = infer(reference, cfg.stir_action, cfg.stir_setup, budget, common.seed, cfg.calibration);
      atomic_write(out / "inference.json", inference_json(result).dump(2) + "\n");
      const auto grid = posterior_grid(result.model, result.epsilon, cfg.harness.posterior_resolution);
      atomic_write(out / "posterior.csv", posterior_grid_csv(grid));
      std::printf("theta* = (%.4f, %.4f)  epsilon = %.6g\n", result.theta_star.viscosity(),
                  result.theta_star.cohesion(), result.epsilon);
    } else if (*pour) {
      const auto theta = params_from_json(nlohmann::json::parse(read_text(theta_path)));
      const auto result = optimize_pour(theta, cfg.pour_space, cfg.pour_setup, cfg.pour_budget, common.seed,
                                        cfg.calibration.bo);
      atomic_write(out / "pour_history.json", pour_optimization_json(result).dump(2) + "\n");
      std::printf("omega = %.4f rad/s  p = %.4f m  Z = %.4f\n", result.best.omega, result.best.p, result.predicted_z);
    } else if (*twin) {
      const auto run = run_twin_full(liquid, budget, common.seed, cfg);
      atomic_write(out / report_filename(run.report.liquid, budget), report_text(run.report));
      const auto grid = posterior_grid(run.inference.model, run.inference.epsilon, cfg.harness.posterior_resolution);
      atomic_write(out / ("posterior_" + run.report.liquid + "_N" + std::to_string(budget) + ".csv"),
                   posterior_grid_csv(grid));
      std::printf("%s N=%d theta* = (%.4f, %.4f) mean Z = %.4f\n", run.report.liquid.c_str(), budget,
                  run.report.theta_star.viscosity(), run.report.theta_star.cohesion(), run.report.mean_z);
    } else if (*sweep_cmd) {
      const auto cells = sweep(cfg.harness.liquids, cfg.harness.budgets, common.seed, cfg, cfg.harness.workers);
      write_sweep(cells, out);
      std::cout << sweep_summary_csv(cells);
      for (const auto& c : cells) {
        if (!c.error.empty()) return 1;
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
