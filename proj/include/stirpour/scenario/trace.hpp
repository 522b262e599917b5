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

#ifndef STIRPOUR_SCENARIO_TRACE_HPP
#define STIRPOUR_SCENARIO_TRACE_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stirpour/errors.hpp"

namespace stirpour {

struct TraceSample {
  double t = 0.0;      // s
  double angle = 0.0;  // rad, signed
};

/// Stick inclination sampled at a fixed rate. A failed trace ended in a
/// capsize; its samples stop at the failure.
struct InclinationTrace {
  std::vector<TraceSample> samples;
  double sample_rate = 30.0;  // Hz
  bool failed = false;

  std::size_t size() const { return samples.size(); }

  /// Timestamps must be k / sample_rate for k = 0, 1, ... within 1e-9 s.
  bool uniformly_sampled() const {
    for (std::size_t k = 0; k < samples.size(); ++k) {
      if (std::abs(samples[k].t - static_cast<double>(k) / sample_rate) > 1e-9) return false;
    }
    return true;
  }
};

/// CSV with header "t,angle,failed"; the failed flag repeats on every row.
inline std::string trace_to_csv(const InclinationTrace& trace) {
  std::ostringstream out;
  out << "t,angle,failed\n";
  char buf[96];
  for (const auto& s : trace.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d\n", s.t, s.angle, trace.failed ? 1 : 0);
    out << buf;
  }
  return out.str();
}

/// Parses the CSV written by trace_to_csv. The sample rate is recovered from
/// the first two timestamps unless `sample_rate` is given.
inline InclinationTrace trace_from_csv(const std::string& text, double sample_rate = 0.0) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,angle,failed", 0) != 0) {
    throw ConfigError("trace CSV must start with header \"t,angle,failed\"");
  }
  InclinationTrace trace;
  bool any_failed = false;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    TraceSample s;
    int failed = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%d", &s.t, &s.angle, &failed) != 3) {
      throw ConfigError("malformed trace CSV row: " + line);
    }
    any_failed = any_failed || failed != 0;
    trace.samples.push_back(s);
  }
  trace.failed = any_failed;
  if (sample_rate > 0.0) {
    trace.sample_rate = sample_rate;
  } else if (trace.samples.size() >= 2) {
    trace.sample_rate = 1.0 / (trace.samples[1].t - trace.samples[0].t);
  }
  return trace;
}

}  // namespace stirpour

#endif  // STIRPOUR_SCENARIO_TRACE_HPP
