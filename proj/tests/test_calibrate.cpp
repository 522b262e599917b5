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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "stirpour/bo.hpp"
#include "stirpour/calibrate.hpp"
#include "stirpour/harness/config.hpp"
#include "stirpour/scenario/presets.hpp"

using namespace stirpour;

namespace {

// Row-major re-scan with a strict comparison, written out independently.
template <class F>
std::pair<int, int> rescan(F&& f, int res) {
  double best = INFINITY;
  std::pair<int, int> arg{0, 0};
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      const double v = f(i / double(res - 1), j / double(res - 1));
      if (v < best) {
        best = v;
        arg = {i, j};
      }
    }
  return arg;
}

double phi(double z) { return 0.5 * (1.0 + std::erf(z / std::sqrt(2.0))); }

}  // namespace

TEST(InitialDesign, SinglePointInsideOpenBox) {
  const auto d = initial_design(1, Box{}, 4);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_GT(d[0][0], 0.0);
  EXPECT_LT(d[0][0], 1.0);
  EXPECT_GT(d[0][1], 0.0);
  EXPECT_LT(d[0][1], 1.0);
}

TEST(InitialDesign, LatinHypercubeStratification) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const int n : {2, 5, 9}) {
      const auto d = initial_design(n, Box{}, seed);
      for (int axis = 0; axis < 2; ++axis) {
        std::set<int> strata;
        for (const auto& p : d) strata.insert(static_cast<int>(std::floor(p[axis] * n)));
        EXPECT_EQ(strata.size(), static_cast<std::size_t>(n));
      }
    }
  }
}

TEST(InitialDesign, DeterministicPerSeed) {
  EXPECT_EQ(initial_design(5, Box{}, 17), initial_design(5, Box{}, 17));
  EXPECT_NE(initial_design(5, Box{}, 17), initial_design(5, Box{}, 18));
  EXPECT_THROW(initial_design(0, Box{}, 1), DomainError);
}

TEST(ProposeNext, ExploresAwayFromSingleObservation) {
  const Point2 seen(0.5, 0.5);
  const auto model = GpModel::fit({{seen, 1.0}}, KernelConfig{});
  const Point2 next = propose_next(model, Box{});
  EXPECT_GE((next - seen).cwiseAbs().maxCoeff(), 0.01 - 1e-12);
  const auto [i, j] = rescan(
      [&](double a, double b) {
        const auto p = model.predict(Point2(a, b));
        return p.mu - 2.0 * p.sigma;
      },
      101);
  EXPECT_EQ(next, Point2(i / 100.0, j / 100.0));
}

TEST(ProposeNext, ParaboloidWithConstantSigmaFindsNearestCell) {
  const double cx = 0.337, cy = 0.712;
  const Point2 u = grid_argmin(
      [&](const Point2& q) { return std::pow(q[0] - cx, 2) + 3.0 * std::pow(q[1] - cy, 2) - 2.0 * 0.25; }, 101);
  EXPECT_NEAR(u[0], 0.34, 1e-12);
  EXPECT_NEAR(u[1], 0.71, 1e-12);
}

TEST(ProposeNext, TiesGoToFirstRowMajorCell) {
  EXPECT_EQ(grid_argmin([](const Point2&) { return 1.0; }, 101), Point2(0.0, 0.0));
  const Point2 u = grid_argmin([](const Point2& q) { return q[0] > 0.5 ? 0.0 : 1.0; }, 11);
  EXPECT_EQ(u, Point2(0.6, 0.0));
}

TEST(ProposeNext, Deterministic) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<GpModel::Observation> obs;
  for (int k = 0; k < 7; ++k) obs.push_back({Point2(U(rng), U(rng)), U(rng)});
  const auto model = GpModel::fit(obs, KernelConfig{});
  EXPECT_EQ(propose_next(model, Box{}), propose_next(model, Box{}));
}

TEST(Minimize, PosteriorMeanArgminAgreesWithRescan) {
  const auto f = [](const Point2& x) { return Evaluation{std::pow(x[0] - 0.3, 2) + std::pow(x[1] - 0.6, 2), false}; };
  const auto run = minimize(f, Box{}, 12, 3, BoConfig{});
  ASSERT_EQ(run.history.size(), 12u);
  const auto [i, j] = rescan([&](double a, double b) { return run.model.predict(Point2(a, b)).mu; }, 101);
  EXPECT_EQ(posterior_mean_argmin(run.model, Box{}), Point2(i / 100.0, j / 100.0));
  EXPECT_NEAR(posterior_mean_argmin(run.model, Box{})[0], 0.3, 0.1);
  EXPECT_NEAR(posterior_mean_argmin(run.model, Box{})[1], 0.6, 0.1);
}

TEST(Calibration, AllFailedRolloutsRaise) {
  std::vector<BoRecord> h;
  for (int k = 0; k < 5; ++k) h.push_back({k, Point2(0.2 * k, 0.1 * k), {kDefaultCapsizePenalty, true}});
  BoRun run{h, fit_history(h, Box{}, KernelConfig{})};
  EXPECT_THROW(summarize_calibration(run, CalibrationConfig{}), CalibrationFailure);
}

TEST(Infer, PreconditionsAndInitialDesignOnly) {
  StirAction a;
  a.duration = 1.0;
  const StirSetup setup;
  const auto reference = run_stir(liquid_preset("water").params, a, setup, 1);
  EXPECT_THROW(infer(reference, a, setup, 0, 2), DomainError);
  auto failed = reference;
  failed.failed = true;
  EXPECT_THROW(infer(failed, a, setup, 5, 2), DomainError);

  const auto r = infer(reference, a, setup, 5, 2);
  EXPECT_EQ(r.history.size(), 5u);
  const auto [i, j] = rescan([&](double x, double y) { return r.model.predict(Point2(x, y)).mu; }, 101);
  EXPECT_EQ(to_point(r.theta_star), Point2(i / 100.0, j / 100.0));
}

class WaterCalibration : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    cfg_ = new Config;
    reference_ = new InclinationTrace(
        run_stir(liquid_preset("water").params, cfg_->stir_action, cfg_->stir_setup, derive_seed(1, {1})));
  }
  static void TearDownTestSuite() {
    delete cfg_;
    delete reference_;
  }
  static double discrepancy_at(const FluidParams& theta, std::uint64_t seed) {
    return stir_discrepancy(*reference_, theta, cfg_->stir_action, cfg_->stir_setup, seed, cfg_->calibration).value;
  }
  static Config* cfg_;
  static InclinationTrace* reference_;
};
Config* WaterCalibration::cfg_ = nullptr;
InclinationTrace* WaterCalibration::reference_ = nullptr;

TEST_F(WaterCalibration, TenIterationsBeatCorners) {
  const std::uint64_t seed = derive_seed(1, {2});
  const auto r = infer(*reference_, cfg_->stir_action, cfg_->stir_setup, 10, seed, cfg_->calibration);
  ASSERT_EQ(r.history.size(), 10u);
  double running = INFINITY;
  for (const auto& s : r.history) {
    const double next = std::min(running, s.discrepancy);
    EXPECT_LE(next, running);
    running = next;
  }
  EXPECT_EQ(r.epsilon, running);
  EXPECT_LT(r.epsilon, discrepancy_at(FluidParams(0, 0), seed));
  EXPECT_LT(r.epsilon, discrepancy_at(FluidParams(1, 1), seed));

  const auto [i, j] = rescan([&](double x, double y) { return r.model.predict(Point2(x, y)).mu; }, 101);
  EXPECT_EQ(to_point(r.theta_star), Point2(i / 100.0, j / 100.0));
}

TEST_F(WaterCalibration, TwentyIterationsIdentifyBehaviour) {
  const std::uint64_t seed = derive_seed(1, {2});
  const auto r = infer(*reference_, cfg_->stir_action, cfg_->stir_setup, 20, seed, cfg_->calibration);
  ASSERT_EQ(r.history.size(), 20u);
  const double at_star = discrepancy_at(r.theta_star, seed);
  const double at_truth = discrepancy_at(liquid_preset("water").params, seed);
  EXPECT_LE(at_star, 2.0 * at_truth) << "theta* = (" << r.theta_star.viscosity() << ", " << r.theta_star.cohesion()
                                     << ")";
}

TEST(PosteriorGrid, PhiAtThresholdAndTail) {
  EXPECT_EQ(likelihood_value(0.3, 0.1, 0.3), 0.5);
  EXPECT_LT(likelihood_value(0.3 + 10 * 0.02, 0.02, 0.3), 1e-20);
  EXPECT_EQ(likelihood_value(0.2, 0.0, 0.3), 1.0);
  EXPECT_EQ(likelihood_value(0.4, 0.0, 0.3), 0.0);
}

TEST(PosteriorGrid, CellsRecomputeFromModel) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<GpModel::Observation> obs;
  for (int k = 0; k < 12; ++k) obs.push_back({Point2(U(rng), U(rng)), 1e-3 * (1 + U(rng))});
  const auto model = GpModel::fit(obs, KernelConfig{});
  const double eps = 1.2e-3;
  const auto g = posterior_grid(model, eps, 41);
  ASSERT_EQ(g.values.size(), 41u * 41u);
  for (const double v : g.values) {
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
  for (int n = 0; n < 5; ++n) {
    const std::size_t k = rng() % g.values.size();
    const auto p = model.predict(g.cell(k));
    EXPECT_EQ(p.mu, g.mu[k]);
    EXPECT_EQ(p.sigma, g.sigma[k]);
    EXPECT_NEAR(g.values[k], phi((eps - g.mu[k]) / g.sigma[k]), 1e-12);
  }
  // Threshold placed exactly on one cell's mean, then ten sigmas below it.
  const std::size_t k = 123;
  EXPECT_EQ(posterior_grid(model, g.mu[k], 41).values[k], 0.5);
  EXPECT_LT(posterior_grid(model, g.mu[k] - 10 * g.sigma[k], 41).values[k], 1e-20);
  EXPECT_THROW(posterior_grid(model, eps, 1), DomainError);
}
