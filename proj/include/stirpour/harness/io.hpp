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

#ifndef STIRPOUR_HARNESS_IO_HPP
#define STIRPOUR_HARNESS_IO_HPP

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "stirpour/calibrate.hpp"
#include "stirpour/errors.hpp"
#include "stirpour/fluid/params.hpp"
#include "stirpour/pour_optimizer.hpp"

namespace stirpour {

/// Writes `text` to a sibling temporary file and renames it over `path`, so
/// readers never observe a partial file.
inline void atomic_write(const std::filesystem::path& path, const std::string& text) {
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline nlohmann::json to_json(const FluidParams& p) {
  return {{"viscosity", p.viscosity()}, {"cohesion", p.cohesion()}};
}

inline FluidParams params_from_json(const nlohmann::json& j) {
  try {
    return FluidParams(j.at("viscosity").get<double>(), j.at("cohesion").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad parameter point: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

inline nlohmann::json to_json(const PourAction& a) { return {{"omega", a.omega}, {"p", a.p}}; }

inline nlohmann::json calibration_history_json(const std::vector<CalibrationStep>& history) {
  auto out = nlohmann::json::array();
  for (const auto& s : history) {
    out.push_back({{"iteration", s.iteration},
                   {"viscosity", s.theta.viscosity()},
                   {"cohesion", s.theta.cohesion()},
                   {"discrepancy", s.discrepancy},
                   {"failed", s.failed}});
  }
  return out;
}

inline std::vector<CalibrationStep> calibration_history_from_json(const nlohmann::json& j) {
  std::vector<CalibrationStep> out;
  for (const auto& s : j) {
    out.push_back({s.at("iteration").get<int>(),
                   FluidParams(s.at("viscosity").get<double>(), s.at("cohesion").get<double>()),
                   s.at("discrepancy").get<double>(), s.at("failed").get<bool>()});
  }
  return out;
}

inline nlohmann::json pour_history_json(const std::vector<PourRecord>& history) {
  auto out = nlohmann::json::array();
  for (const auto& r : history) out.push_back({{"omega", r.action.omega}, {"p", r.action.p}, {"Z", r.z}});
  return out;
}

inline std::vector<PourRecord> pour_history_from_json(const nlohmann::json& j) {
  std::vector<PourRecord> out;
  for (const auto& r : j) out.push_back({{r.at("omega").get<double>(), r.at("p").get<double>()}, r.at("Z").get<double>()});
  return out;
}

inline nlohmann::json gp_json(const GpModel& model) {
  auto inputs = nlohmann::json::array();
  for (const auto& x : model.inputs()) inputs.push_back({x[0], x[1]});
  std::vector<double> targets(model.targets().data(), model.targets().data() + model.targets().size());
  return {{"inputs", inputs},
          {"targets", targets},
          {"length_scales", {model.length_scales()[0], model.length_scales()[1]}},
          {"signal_variance", model.signal_variance()},
          {"noise_variance", model.noise_variance()},
          {"target_mean", model.target_mean()},
          {"target_scale", model.target_scale()}};
}

inline nlohmann::json inference_json(const InferenceResult& r) {
  return {{"theta_star", to_json(r.theta_star)},
          {"best_observed", to_json(r.best_observed)},
          {"epsilon", r.epsilon},
          {"history", calibration_history_json(r.history)},
          {"model", gp_json(r.model)}};
}

inline nlohmann::json pour_optimization_json(const PourOptimization& o) {
  return {{"best", to_json(o.best)},
          {"predicted_Z", o.predicted_z},
          {"posterior_argmin", to_json(o.posterior_argmin)},
          {"pour_history", pour_history_json(o.history)}};
}

/// Lattice in parameter space, one row per cell.
inline std::string posterior_grid_csv(const PosteriorGrid& g) {
  std::string out = "theta1,theta2,value\n";
  char buf[96];
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    const Point2 x = g.cell(k);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x[0], x[1], g.values[k]);
    out += buf;
  }
  return out;
}

}  // namespace stirpour

#endif  // STIRPOUR_HARNESS_IO_HPP
