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

#ifndef STIRPOUR_DISCREPANCY_HPP
#define STIRPOUR_DISCREPANCY_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "stirpour/errors.hpp"
#include "stirpour/scenario/trace.hpp"

namespace stirpour {

/// Integrated squared inclination difference, rad^2 s. A failed value carries
/// the configured penalty instead of an integral.
struct DiscrepancyValue {
  double value = 0.0;
  bool failed = false;
};

inline constexpr double kDefaultCapsizePenalty = 10.0;  // rad^2 s

/// Truncates both traces to their common span. Both must share a sample rate
/// and origin, so samples pair up index by index.
inline std::pair<std::vector<TraceSample>, std::vector<TraceSample>> align(const InclinationTrace& reference,
                                                                          const InclinationTrace& simulated) {
  if (reference.failed || simulated.failed) throw DomainError("cannot align a failed trace");
  if (std::abs(reference.sample_rate - simulated.sample_rate) > 1e-9 * reference.sample_rate) {
    throw AlignmentError("sample rates differ: " + std::to_string(reference.sample_rate) + " Hz vs " +
                         std::to_string(simulated.sample_rate) + " Hz");
  }
  const std::size_t n = std::min(reference.size(), simulated.size());
  std::vector<TraceSample> a(reference.samples.begin(), reference.samples.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<TraceSample> b(simulated.samples.begin(), simulated.samples.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(a[k].t - b[k].t) > 1e-9) {
      throw AlignmentError("timestamps differ at sample " + std::to_string(k));
    }
  }
  return {std::move(a), std::move(b)};
}

/// Trapezoidal integral of (y_ref - y_sim)^2 over the aligned span.
inline DiscrepancyValue discrepancy(const InclinationTrace& reference, const InclinationTrace& simulated,
                                   double penalty = kDefaultCapsizePenalty) {
  if (reference.failed) throw DomainError("reference trace must not be failed");
  if (simulated.failed) return {penalty, true};
  const auto [a, b] = align(reference, simulated);
  if (a.size() < 2) throw DomainError("traces have no overlapping time span");
  double sum = 0.0;
  double prev = a[0].angle - b[0].angle;
  prev *= prev;
  for (std::size_t k = 1; k < a.size(); ++k) {
    double d = a[k].angle - b[k].angle;
    d *= d;
    sum += 0.5 * (prev + d) * (a[k].t - a[k - 1].t);
    prev = d;
  }
  return {sum, false};
}

}  // namespace stirpour

#endif  // STIRPOUR_DISCREPANCY_HPP
