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

#ifndef STIRPOUR_SCENARIO_PRESETS_HPP
#define STIRPOUR_SCENARIO_PRESETS_HPP

#include <array>
#include <string>
#include <string_view>

#include "stirpour/errors.hpp"
#include "stirpour/fluid/params.hpp"

namespace stirpour {

/// Hidden ground truth used to generate twin-experiment observations.
struct LiquidPreset {
  std::string name;
  FluidParams params;
};

inline const std::array<LiquidPreset, 3>& liquid_presets() {
  static const std::array<LiquidPreset, 3> presets{{
      {"water", FluidParams(0.1, 0.1)},
      {"glycerin", FluidParams(0.6, 0.5)},
      {"gel", FluidParams(0.9, 0.9)},
  }};
  return presets;
}

inline const LiquidPreset& liquid_preset(std::string_view name) {
  for (const auto& p : liquid_presets()) {
    if (p.name == name) return p;
  }
  throw LookupError("unknown liquid preset \"" + std::string(name) + "\"");
}

}  // namespace stirpour

#endif  // STIRPOUR_SCENARIO_PRESETS_HPP
