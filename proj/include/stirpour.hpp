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

#ifndef STIRPOUR_STIRPOUR_HPP
#define STIRPOUR_STIRPOUR_HPP

#include "stirpour/bo.hpp"
#include "stirpour/calibrate.hpp"
#include "stirpour/discrepancy.hpp"
#include "stirpour/errors.hpp"
#include "stirpour/fluid/params.hpp"
#include "stirpour/fluid/solver.hpp"
#include "stirpour/gp.hpp"
#include "stirpour/harness/config.hpp"
#include "stirpour/harness/io.hpp"
#include "stirpour/harness/twin.hpp"
#include "stirpour/pour_optimizer.hpp"
#include "stirpour/probe/stick.hpp"
#include "stirpour/probe/stir_action.hpp"
#include "stirpour/scenario/pour.hpp"
#include "stirpour/scenario/presets.hpp"
#include "stirpour/scenario/stir.hpp"
#include "stirpour/scenario/trace.hpp"
#include "stirpour/seeds.hpp"

#endif  // STIRPOUR_STIRPOUR_HPP
