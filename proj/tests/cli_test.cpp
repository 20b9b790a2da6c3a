// Copyright 2026 The PPGA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ppga/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ppga {
namespace {

std::string fixture(const std::string& name) {
  return std::string(PPGA_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

TEST(CliTest, MissingInputExitsTwo) {
  RunConfig config;
  config.command = "solve";
  config.input = fixture("does_not_exist.pb");
  config.out = ::testing::TempDir() + "/never.json";
  EXPECT_EQ(run_command(config), kExitParseError);
}

TEST(CliTest, MalformedFileExitsTwo) {
  const std::string path = ::testing::TempDir() + "/broken.pb";
  std::ofstream(path) << "META\nkey;value\nbudget;10\n";  // no PROJECTS/VOTES
  RunConfig config;
  config.command = "solve";
  config.input = path;
  EXPECT_EQ(run_command(config), kExitParseError);
}

TEST(CliTest, ExhaustedPrivacyBudgetExitsThree) {
  RunConfig config;
  config.command = "solve";
  config.input = fixture("mini.pb");
  config.out = ::testing::TempDir() + "/never2.json";
  config.epsilon = 0.01;
  config.delta = 0.001;
  config.alpha = 2.0;  // log(1/delta)/(alpha-1) = 6.9 >> epsilon
  config.iterations = 5;
  EXPECT_EQ(run_command(config), kExitPrivacyError);
}

TEST(CliTest, ReportsAreByteIdenticalAcrossInvocations) {
  RunConfig config;
  config.command = "solve";
  config.input = fixture("mini.pb");
  config.seed = 12;
  config.out = ::testing::TempDir() + "/repeat_a.json";
  ASSERT_EQ(run_command(config), kExitOk);
  config.out = ::testing::TempDir() + "/repeat_b.json";
  ASSERT_EQ(run_command(config), kExitOk);
  EXPECT_EQ(slurp(::testing::TempDir() + "/repeat_a.json"),
            slurp(::testing::TempDir() + "/repeat_b.json"));
}

TEST(CliTest, AutoResolutionMatchesSchedule) {
  // n = 10000 resolves to epsilon ~ 0.1629, delta = 0.003, K = 10.
  RunConfig config;
  const DpParams params = detail::resolve_dp(config, 10000);
  EXPECT_NEAR(params.epsilon, 0.16286043071371942, 1e-12);
  EXPECT_NEAR(params.epsilon, 0.1629, 5e-4);
  EXPECT_DOUBLE_EQ(params.delta, 0.003);
  EXPECT_EQ(params.iterations, 10);
  EXPECT_NEAR(std::log(1.0 / params.delta) / (params.alpha - 1.0),
              params.epsilon / 2.0, 1e-12);

  // Explicit values win over the schedule.
  config.epsilon = 0.9;
  config.iterations = 3;
  const DpParams manual = detail::resolve_dp(config, 10000);
  EXPECT_DOUBLE_EQ(manual.epsilon, 0.9);
  EXPECT_EQ(manual.iterations, 3);
  EXPECT_DOUBLE_EQ(manual.delta, 0.003);
}

TEST(CliTest, BaselineOnlyCompareSkipsPrivateRuns) {
  RunConfig config;
  config.command = "compare";
  config.input = fixture("mini.pb");
  config.out = ::testing::TempDir() + "/cmp_baseline_only.json";
  config.baseline_only = true;
  config.tol = 1e-6;
  ASSERT_EQ(run_command(config), kExitOk);
  const auto doc = nlohmann::json::parse(slurp(config.out));
  EXPECT_TRUE(doc["runs"].empty());
  EXPECT_FALSE(doc.contains("aggregate"));
  EXPECT_TRUE(doc["baseline"]["metrics"].contains("core_violation"));
}

TEST(CliTest, SampleReducesVoterCount) {
  RunConfig config;
  config.command = "solve";
  config.input = fixture("synthetic_city_12k.pb");
  config.out = ::testing::TempDir() + "/sampled.json";
  config.sample = 500;
  config.iterations = 2;
  config.epsilon = 1.0;
  config.delta = 0.01;
  ASSERT_EQ(run_command(config), kExitOk);
  const auto doc = nlohmann::json::parse(slurp(config.out));
  // auto-delta would be 0.3/sqrt(500); the explicit value echoes back.
  EXPECT_DOUBLE_EQ(doc["config"]["epsilon"].get<double>(), 1.0);
  EXPECT_EQ(doc["config"]["sample"].get<int>(), 500);
}

// End-to-end through the real binary: argv parsing, exit codes, stdout.
TEST(CliTest, BinarySmokeTest) {
  const std::string out = ::testing::TempDir() + "/binary_report.json";
  const std::string command = std::string(PPGA_CLI_PATH) +
                              " solve --input " + fixture("mini.pb") +
                              " --seed 3 --out " + out + " 2>/dev/null";
  ASSERT_EQ(std::system(command.c_str()), 0);
  const auto doc = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(doc["command"], "solve");

  const std::string bad = std::string(PPGA_CLI_PATH) +
                          " solve --input /nonexistent.pb 2>/dev/null";
  const int status = std::system(bad.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitParseError);
}

}  // namespace
}  // namespace ppga
