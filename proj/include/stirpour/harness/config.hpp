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

#ifndef STIRPOUR_HARNESS_CONFIG_HPP
#define STIRPOUR_HARNESS_CONFIG_HPP

#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stirpour/calibrate.hpp"
#include "stirpour/errors.hpp"
#include "stirpour/pour_optimizer.hpp"
#include "stirpour/probe/stir_action.hpp"
#include "stirpour/scenario/pour.hpp"
#include "stirpour/scenario/stir.hpp"

namespace stirpour {

inline constexpr const char* kToolVersion = "0.3.0";

struct HarnessConfig {
  std::vector<std::string> liquids{"water", "glycerin", "gel"};
  std::vector<int> budgets{10, 20};
  int verify_repetitions = 5;
  int posterior_resolution = 101;
  int workers = 1;
};

/// Experiments select the kernel hyperparameters by marginal likelihood: the
/// discrepancy surface is noisy enough that the fixed 1e-4 noise floor lets
/// the posterior mean overshoot into unexplored corners.
inline CalibrationConfig default_calibration() {
  CalibrationConfig c;
  c.bo.kernel.optimize = true;
  return c;
}

/// Fully resolved experiment configuration.
struct Config {
  StirSetup stir_setup;
  StirAction stir_action;
  CalibrationConfig calibration = default_calibration();
  PourSetup pour_setup;
  PourSearchSpace pour_space;
  int pour_budget = 15;
  HarnessConfig harness;
};

namespace detail {

// Reads members of one JSON object and rejects any key it did not consume.
class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_ + " must be an object");
  }

  template <class T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  void read_vec2(const char* key, Vec2& out) {
    std::vector<double> v{out.x(), out.y()};
    read(key, v);
    if (v.size() != 2) throw ConfigError(path_ + "." + key + " must have two entries");
    out = Vec2(v[0], v[1]);
  }

  const nlohmann::json* child(const char* key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) throw ConfigError("unknown configuration key " + path_ + "." + key);
    }
  }

 private:
  const nlohmann::json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

inline void read_physics(ObjectReader& r, SceneConfig& s) {
  r.read("rest_density", s.rest_density);
  r.read("gravity", s.gravity);
  r.read("dt", s.dt);
  r.read("solver_iterations", s.solver_iterations);
}

}  // namespace detail

inline void validate(const Config& c);

/// Builds a configuration from a JSON document, starting from defaults.
/// Unknown keys at any level raise ConfigError.
inline Config config_from_json(const nlohmann::json& doc) {
  using detail::ObjectReader;
  Config c;
  ObjectReader top(doc, "config");

  if (const auto* j = top.child("scene")) {
    ObjectReader r(*j, "scene");
    SceneConfig& s = c.stir_setup.scene;
    detail::read_physics(r, s);
    r.read("spacing", s.spacing);
    r.finish();
    SceneConfig& p = c.pour_setup.physics;
    p.rest_density = s.rest_density;
    p.gravity = s.gravity;
    p.dt = s.dt;
    p.solver_iterations = s.solver_iterations;
    c.stir_setup.stick.gravity = s.gravity;
  }
  if (const auto* j = top.child("stir")) {
    ObjectReader r(*j, "stir");
    StirAction& a = c.stir_action;
    r.read("m", a.m);
    r.read("radius", a.radius);
    r.read("cycle_speed", a.cycle_speed);
    r.read("duration", a.duration);
    r.read_vec2("center", a.center);
    r.read("sample_rate", a.sample_rate);
    r.read("stick_length", c.stir_setup.stick_length);
    r.read("stick_mass", c.stir_setup.stick.mass);
    r.read("stick_damping", c.stir_setup.stick.damping);
    r.read("immersion", c.stir_setup.immersion);
    r.read("settle_time", c.stir_setup.settle_time);
    r.finish();
  }
  if (const auto* j = top.child("discrepancy")) {
    ObjectReader r(*j, "discrepancy");
    r.read("penalty", c.calibration.penalty);
    r.finish();
  }
  if (const auto* j = top.child("gp")) {
    ObjectReader r(*j, "gp");
    KernelConfig& k = c.calibration.bo.kernel;
    r.read("length_scale", k.length_scale);
    r.read("signal_variance", k.signal_variance);
    r.read("noise_variance", k.noise_variance);
    r.read("optimize", k.optimize);
    r.finish();
  }
  if (const auto* j = top.child("calibrate")) {
    ObjectReader r(*j, "calibrate");
    r.read("initial_design", c.calibration.bo.initial_design);
    r.read("beta", c.calibration.bo.beta);
    r.read("grid", c.calibration.bo.grid);
    r.read("repetitions", c.calibration.repetitions);
    r.read("posterior_resolution", c.harness.posterior_resolution);
    r.finish();
  }
  if (const auto* j = top.child("pour")) {
    ObjectReader r(*j, "pour");
    PourSetup& p = c.pour_setup;
    r.read("spacing", p.physics.spacing);
    r.read("cup_width", p.cup_width);
    r.read("target_width", p.target_width);
    r.read("target_height", p.target_height);
    r.read("source_height", p.source_height);
    r.read("lip_height", p.lip_height);
    r.read("fill_height", p.fill_height);
    r.read("target_center", p.target_center);
    r.read("max_tilt", p.max_tilt);
    r.read("pre_settle", p.pre_settle);
    r.read("post_settle", p.post_settle);
    r.read("omega_min", c.pour_space.omega_min);
    r.read("omega_max", c.pour_space.omega_max);
    r.read("p_min", c.pour_space.p_min);
    r.read("p_max", c.pour_space.p_max);
    r.read("budget", c.pour_budget);
    r.finish();
  }
  if (const auto* j = top.child("harness")) {
    ObjectReader r(*j, "harness");
    r.read("liquids", c.harness.liquids);
    r.read("budgets", c.harness.budgets);
    r.read("verify_repetitions", c.harness.verify_repetitions);
    r.read("workers", c.harness.workers);
    r.finish();
  }
  top.finish();
  validate(c);
  return c;
}

inline void validate(const Config& c) {
  c.stir_setup.scene.validate();
  c.stir_action.validate();
  c.pour_setup.scene(c.pour_space.p_min).validate();
  c.pour_setup.scene(c.pour_space.p_max).validate();
  c.pour_space.validate();
  if (c.stir_setup.stick_length <= 0.0) throw ConfigError("stir.stick_length must be positive");
  if (c.calibration.bo.initial_design < 1) throw ConfigError("calibrate.initial_design must be >= 1");
  if (c.calibration.bo.grid < 2) throw ConfigError("calibrate.grid must be >= 2");
  if (c.calibration.repetitions < 1) throw ConfigError("calibrate.repetitions must be >= 1");
  if (c.harness.posterior_resolution < 2) throw ConfigError("calibrate.posterior_resolution must be >= 2");
  if (c.calibration.bo.kernel.length_scale <= 0.0 || c.calibration.bo.kernel.noise_variance <= 0.0 ||
      c.calibration.bo.kernel.signal_variance <= 0.0)
    throw ConfigError("gp hyperparameters must be positive");
  if (c.pour_budget < kPourInitialDesign) throw ConfigError("pour.budget must be >= 4");
  if (c.pour_setup.max_tilt <= 0.0) throw ConfigError("pour.max_tilt must be positive");
  if (c.harness.verify_repetitions < 1) throw ConfigError("harness.verify_repetitions must be >= 1");
  if (c.harness.workers < 1) throw ConfigError("harness.workers must be >= 1");
}

/// Every tunable value, including defaults that were not overridden.
inline nlohmann::json config_to_json(const Config& c) {
  const SceneConfig& s = c.stir_setup.scene;
  const StirAction& a = c.stir_action;
  const KernelConfig& k = c.calibration.bo.kernel;
  const PourSetup& p = c.pour_setup;
  return {
      {"scene",
       {{"spacing", s.spacing},
        {"rest_density", s.rest_density},
        {"gravity", s.gravity},
        {"dt", s.dt},
        {"solver_iterations", s.solver_iterations}}},
      {"stir",
       {{"m", a.m},
        {"radius", a.radius},
        {"cycle_speed", a.cycle_speed},
        {"duration", a.duration},
        {"center", {a.center.x(), a.center.y()}},
        {"sample_rate", a.sample_rate},
        {"stick_length", c.stir_setup.stick_length},
        {"stick_mass", c.stir_setup.stick.mass},
        {"stick_damping", c.stir_setup.stick.damping},
        {"immersion", c.stir_setup.immersion},
        {"settle_time", c.stir_setup.settle_time}}},
      {"discrepancy", {{"penalty", c.calibration.penalty}}},
      {"gp",
       {{"length_scale", k.length_scale},
        {"signal_variance", k.signal_variance},
        {"noise_variance", k.noise_variance},
        {"optimize", k.optimize}}},
      {"calibrate",
       {{"initial_design", c.calibration.bo.initial_design},
        {"beta", c.calibration.bo.beta},
        {"grid", c.calibration.bo.grid},
        {"repetitions", c.calibration.repetitions},
        {"posterior_resolution", c.harness.posterior_resolution}}},
      {"pour",
       {{"spacing", p.physics.spacing},
        {"cup_width", p.cup_width},
        {"target_width", p.target_width},
        {"target_height", p.target_height},
        {"source_height", p.source_height},
        {"lip_height", p.lip_height},
        {"fill_height", p.fill_height},
        {"target_center", p.target_center},
        {"max_tilt", p.max_tilt},
        {"pre_settle", p.pre_settle},
        {"post_settle", p.post_settle},
        {"omega_min", c.pour_space.omega_min},
        {"omega_max", c.pour_space.omega_max},
        {"p_min", c.pour_space.p_min},
        {"p_max", c.pour_space.p_max},
        {"budget", c.pour_budget}}},
      {"harness",
       {{"liquids", c.harness.liquids},
        {"budgets", c.harness.budgets},
        {"verify_repetitions", c.harness.verify_repetitions},
        {"workers", c.harness.workers}}},
  };
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Hash of the resolved configuration, as 16 hex digits. The worker count is
/// excluded since it cannot change any result.
inline std::string config_digest(const Config& c) {
  nlohmann::json j = config_to_json(c);
  j["harness"].erase("workers");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
  return buf;
}

}  // namespace stirpour

#endif  // STIRPOUR_HARNESS_CONFIG_HPP
