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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "stirpour.hpp"

using namespace stirpour;
namespace fs = std::filesystem;

namespace {

Config small_config() {
  return config_from_json(nlohmann::json::parse(R"({
    "stir": {"duration": 1.0, "settle_time": 0.3},
    "gp": {"optimize": false},
    "calibrate": {"posterior_resolution": 21},
    "pour": {"post_settle": 0.5, "budget": 4},
    "harness": {"verify_repetitions": 2}
  })"));
}

nlohmann::json without_clock(const TwinReport& r) {
  auto j = report_to_json(r);
  j.erase("wall_clock_seconds");
  return j;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("stirpour_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Config, UnknownKeysAreRejectedAtEveryLevel) {
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"stirr": {}})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"pour": {"omega": 1}})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"gp": {"length_scale": "wide"}})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"scene": {"dt": -1}})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse("[1, 2]")), ConfigError);
}

TEST(Config, ResolvedJsonRoundTrips) {
  const Config c = small_config();
  const auto j = config_to_json(c);
  EXPECT_EQ(config_to_json(config_from_json(j)), j);
  EXPECT_EQ(config_digest(config_from_json(j)), config_digest(c));
  EXPECT_EQ(config_to_json(Config{}), config_to_json(config_from_json(nlohmann::json::object())));
}

TEST(Config, DigestTracksResultsNotWorkers) {
  Config a = small_config();
  Config b = a;
  b.harness.workers = 8;
  EXPECT_EQ(config_digest(a), config_digest(b));
  b.pour_budget = 5;
  EXPECT_NE(config_digest(a), config_digest(b));
  EXPECT_EQ(config_digest(a).size(), 16u);
}

TEST(Seeds, CellsAndStagesNeverShare) {
  std::set<std::uint64_t> all;
  std::size_t count = 0;
  for (const std::string l : {"water", "glycerin", "gel"}) {
    for (const int n : {10, 20}) {
      const auto s = twin_seeds(l, n, 1, 5);
      for (const auto v : {s.reference, s.calibration, s.pour}) all.insert(v), ++count;
      for (const auto v : s.verify) all.insert(v), ++count;
    }
  }
  EXPECT_EQ(all.size(), count);
  EXPECT_EQ(twin_seeds("gel", 10, 1, 5).verify, twin_seeds("gel", 10, 1, 5).verify);
  EXPECT_NE(twin_seeds("gel", 10, 1, 5).pour, twin_seeds("gel", 10, 2, 5).pour);
}

TEST(Io, AtomicWriteReplacesWholeFile) {
  const auto dir = scratch("io");
  const auto file = dir / "nested" / "out.txt";
  atomic_write(file, "first version, longer\n");
  atomic_write(file, "second\n");
  EXPECT_EQ(read_text(file), "second\n");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(file.parent_path())) ++entries;
  EXPECT_EQ(entries, 1u);
  EXPECT_THROW(read_text(dir / "missing.txt"), std::exception);
  fs::remove_all(dir);
}

TEST(Io, ParameterJsonValidates) {
  EXPECT_EQ(params_from_json(to_json(FluidParams(0.25, 0.75))).cohesion(), 0.75);
  EXPECT_THROW(params_from_json(nlohmann::json::parse(R"({"viscosity": 1.5, "cohesion": 0})")), ConfigError);
  EXPECT_THROW(params_from_json(nlohmann::json::parse(R"({"viscosity": 0.5})")), ConfigError);
}

TEST(Twin, RejectsUnknownLiquidAndTinyBudget) {
  EXPECT_THROW(run_twin("milk", 10, 1, small_config()), LookupError);
  EXPECT_THROW(run_twin("water", 2, 1, small_config()), DomainError);
  EXPECT_THROW(sweep({"water"}, {}, 1, small_config()), DomainError);
  EXPECT_THROW(sweep({}, {5}, 1, small_config()), DomainError);
  EXPECT_THROW(sweep({"water", "milk"}, {5}, 1, small_config()), LookupError);
}

class SmallTwin : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { report_ = new TwinReport(run_twin("water", 5, 1, small_config())); }
  static void TearDownTestSuite() { delete report_; }
  static TwinReport* report_;
};
TwinReport* SmallTwin::report_ = nullptr;

TEST_F(SmallTwin, ReportIsConsistent) {
  const auto& r = *report_;
  EXPECT_EQ(r.liquid, "water");
  EXPECT_EQ(r.budget, 5);
  EXPECT_EQ(r.calibration_history.size(), 5u);
  EXPECT_EQ(r.pour_history.size(), 4u);
  ASSERT_EQ(r.per_seed_z.size(), 2u);
  EXPECT_DOUBLE_EQ(r.mean_z, 0.5 * (r.per_seed_z[0] + r.per_seed_z[1]));
  EXPECT_EQ(r.seeds.reference, twin_seeds("water", 5, 1, 2).reference);
  EXPECT_EQ(r.config_digest, config_digest(small_config()));
  EXPECT_EQ(r.tool_version, kToolVersion);
  EXPECT_GT(r.wall_clock_seconds, 0.0);
  double best = INFINITY;
  for (const auto& s : r.calibration_history) best = std::min(best, s.discrepancy);
  EXPECT_EQ(r.epsilon, best);
}

TEST_F(SmallTwin, JsonRoundTripIsLossless) {
  const auto text = report_text(*report_);
  const auto back = report_from_json(nlohmann::json::parse(text));
  EXPECT_EQ(report_text(back), text);
  auto broken = nlohmann::json::parse(text);
  broken.erase("theta_star");
  EXPECT_THROW(report_from_json(broken), ConfigError);
}

TEST_F(SmallTwin, RerunMatchesExceptWallClock) {
  const auto again = run_twin("water", 5, 1, small_config());
  EXPECT_EQ(without_clock(again).dump(), without_clock(*report_).dump());
}

TEST_F(SmallTwin, WorkerCountDoesNotChangeResults) {
  const auto cells = sweep({"water"}, {5, 2}, 1, small_config(), 2);
  ASSERT_EQ(cells.size(), 2u);
  ASSERT_TRUE(cells[0].report.has_value());
  EXPECT_EQ(without_clock(*cells[0].report).dump(), without_clock(*report_).dump());
  EXPECT_FALSE(cells[1].report.has_value());
  EXPECT_FALSE(cells[1].error.empty());
}

TEST(Sweep, SummaryAndReportsOnDisk) {
  Config cfg = small_config();
  const auto cells = sweep({"gel"}, {5, 3}, 4, cfg, 1);
  const auto dir = scratch("sweep");
  write_sweep(cells, dir);
  EXPECT_TRUE(fs::exists(dir / "twin_gel_N5.json"));
  EXPECT_FALSE(fs::exists(dir / "twin_gel_N3.json"));
  const auto back = report_from_json(nlohmann::json::parse(read_text(dir / "twin_gel_N5.json")));
  EXPECT_EQ(back.mean_z, cells[0].report->mean_z);

  std::istringstream csv(read_text(dir / "summary.csv"));
  std::string header, ok, bad;
  std::getline(csv, header);
  std::getline(csv, ok);
  std::getline(csv, bad);
  EXPECT_EQ(header, "liquid,N,mean_Z,theta_star_1,theta_star_2,pour_calibration_baseline_Z,error");
  EXPECT_EQ(ok.rfind("gel,5,", 0), 0u);
  EXPECT_EQ(std::count(ok.begin(), ok.end(), ','), 6);
  EXPECT_EQ(ok.back(), ',');
  EXPECT_EQ(bad.rfind("gel,3,,,,,", 0), 0u);
  EXPECT_GT(bad.size(), std::string("gel,3,,,,,").size());
  fs::remove_all(dir);
}

TEST(Stage, FailuresNameTheirStage) {
  try {
    detail::run_stage("pour", []() -> int { throw DomainError("boom"); });
    FAIL();
  } catch (const StageError& e) {
    EXPECT_NE(std::string(e.what()).find("pour"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
  }
}
