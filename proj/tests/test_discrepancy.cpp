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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "stirpour/discrepancy.hpp"

using namespace stirpour;

namespace {

template <class F>
InclinationTrace make_trace(F&& f, double duration, double rate) {
  InclinationTrace t;
  t.sample_rate = rate;
  const auto n = static_cast<int>(std::lround(duration * rate));
  for (int k = 0; k <= n; ++k) t.samples.push_back({k / rate, f(k / rate)});
  return t;
}

}  // namespace

TEST(Align, IdenticalTracesUnchanged) {
  const auto t = make_trace([](double x) { return std::sin(x); }, 2.0, 30.0);
  const auto [a, b] = align(t, t);
  ASSERT_EQ(a.size(), t.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].angle, t.samples[k].angle);
    EXPECT_EQ(b[k].t, t.samples[k].t);
  }
}

TEST(Align, TruncatesToCommonSpan) {
  auto x = make_trace([](double) { return 0.0; }, 10.0, 30.0);
  auto y = x;
  x.samples.resize(300);
  y.samples.resize(290);
  const auto [a, b] = align(x, y);
  EXPECT_EQ(a.size(), 290u);
  EXPECT_EQ(b.size(), 290u);
}

TEST(Align, RateMismatchIsAlignmentError) {
  const auto x = make_trace([](double) { return 0.0; }, 1.0, 30.0);
  const auto y = make_trace([](double) { return 0.0; }, 1.0, 60.0);
  EXPECT_THROW(align(x, y), AlignmentError);
}

TEST(Discrepancy, IdentityIsExactlyZero) {
  const auto t = make_trace([](double x) { return 0.1 * std::sin(3 * x); }, 4.0, 30.0);
  EXPECT_EQ(discrepancy(t, t).value, 0.0);
  EXPECT_FALSE(discrepancy(t, t).failed);
}

TEST(Discrepancy, ConstantOffset) {
  const auto y = make_trace([](double) { return 0.1; }, 10.0, 30.0);
  const auto z = make_trace([](double) { return 0.0; }, 10.0, 30.0);
  EXPECT_NEAR(discrepancy(y, z).value, 0.1, 1e-12 * 0.1);
}

TEST(Discrepancy, SineAgainstQuadrature) {
  const double A = 0.05;
  const auto y = make_trace([&](double t) { return A * std::sin(2 * std::numbers::pi * t); }, 10.0, 30.0);
  const auto z = make_trace([](double) { return 0.0; }, 10.0, 30.0);
  const double reference = oracle::simpson(
      [&](double t) { return std::pow(A * std::sin(2 * std::numbers::pi * t), 2); }, 0.0, 10.0, 200000);
  EXPECT_NEAR(reference, A * A * 10.0 / 2.0, 1e-12);
  EXPECT_NEAR(discrepancy(y, z).value, reference, 0.01 * reference);
}

TEST(Discrepancy, FailedSimulationGivesPenalty) {
  const auto y = make_trace([](double) { return 0.0; }, 1.0, 30.0);
  auto z = y;
  z.failed = true;
  const auto d = discrepancy(y, z, 7.5);
  EXPECT_TRUE(d.failed);
  EXPECT_EQ(d.value, 7.5);
  EXPECT_EQ(discrepancy(y, z).value, kDefaultCapsizePenalty);
  EXPECT_THROW(discrepancy(z, y), DomainError);
}

TEST(Discrepancy, EmptyOverlapIsDomainError) {
  InclinationTrace a;
  a.samples = {{0.0, 0.1}};
  EXPECT_THROW(discrepancy(a, a), DomainError);
}

TEST(Discrepancy, NonNegativeSymmetricAndQuadraticScaling) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.05);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = make_trace([&](double) { return noise(rng); }, 2.0, 30.0);
    const auto y = make_trace([&](double) { return noise(rng); }, 2.0, 30.0);
    const double d = discrepancy(x, y).value;
    EXPECT_GT(d, 0.0);
    EXPECT_EQ(d, discrepancy(y, x).value);
    const double c = 1.7;
    auto xs = x, ys = y;
    for (auto& s : xs.samples) s.angle *= c;
    for (auto& s : ys.samples) s.angle *= c;
    EXPECT_NEAR(discrepancy(xs, ys).value, c * c * d, 1e-12 * c * c * d);
  }
}
