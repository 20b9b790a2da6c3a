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

#include "ppga/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "ppga/solver.hpp"
#include "testing/fixtures.hpp"
#include "testing/oracles.hpp"

namespace ppga {
namespace {

TEST(SocialWelfareTest, KnownValues) {
  Eigen::VectorXd sizes(2);
  sizes << 1.0, 1.0;
  const Instance everyone(sizes, 1.0, {{0, 1}, {0, 1}});
  Eigen::VectorXd z(2);
  z << 0.6, 0.4;
  EXPECT_DOUBLE_EQ(social_welfare(everyone, z), 1.0);
  EXPECT_DOUBLE_EQ(social_welfare(everyone, Eigen::VectorXd::Zero(2)), 0.0);

  const Instance split(sizes, 1.0, {{0}, {0, 1}});
  Eigen::VectorXd w(2);
  w << 0.2, 0.4;  // utilities 0.2 and 0.6
  EXPECT_DOUBLE_EQ(social_welfare(split, w), 0.4);
}

TEST(ProportionalityTest, SingleVoterAtOptimum) {
  const Instance instance = testing::make_single_voter();
  Eigen::VectorXd z(3);
  z << 0.5, 0.3, 0.2;
  const auto [min_n, avg] = proportionality(instance, z);
  EXPECT_DOUBLE_EQ(min_n, 1.0);
  EXPECT_DOUBLE_EQ(avg, 1.0);
}

TEST(ProportionalityTest, BoundaryOfProportionality) {
  // Two disjoint voters with max utility 0.5 each; giving each exactly
  // max/n = 0.25 puts min PS x n at 1.
  Eigen::VectorXd sizes(2);
  sizes << 0.5, 0.5;
  const Instance instance(sizes, 1.0, {{0}, {1}});
  Eigen::VectorXd z(2);
  z << 0.25, 0.25;
  const auto [min_n, avg] = proportionality(instance, z);
  EXPECT_NEAR(min_n, 1.0, 1e-12);
  EXPECT_NEAR(avg, 0.5, 1e-12);
}

TEST(ProportionalityTest, TwoBlocFixtureAtSplit) {
  Eigen::VectorXd sizes(3);
  sizes << 2.0, 2.0, 2.0;  // caps saturate at 1, so max utility is 1
  std::vector<std::vector<int>> approvals;
  for (int i = 0; i < 10; ++i) approvals.push_back({0});
  for (int i = 0; i < 10; ++i) approvals.push_back({1});
  const Instance instance(sizes, 1.0, approvals);
  Eigen::VectorXd z(3);
  z << 0.5, 0.5, 0.0;
  const auto [min_n, avg] = proportionality(instance, z);
  EXPECT_NEAR(min_n, 0.5 * instance.n, 1e-12);
  EXPECT_NEAR(avg, 0.5, 1e-12);
}

TEST(ProportionalityTest, AllVotersExcludedThrows) {
  Eigen::VectorXd sizes(2);
  sizes << 1.0, 1.0;
  const Instance instance(sizes, 1.0, {{}, {}});
  EXPECT_THROW(proportionality(instance, Eigen::VectorXd::Zero(2)),
               MetricsError);
}

TEST(StatisticalDistanceTest, KnownValues) {
  Eigen::VectorXd a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  EXPECT_DOUBLE_EQ(statistical_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(statistical_distance(a, b), 0.5);

  Eigen::VectorXd c(3), d(3);
  c << 0.6, 0.4, 0.0;
  d << 0.5, 0.5, 0.0;
  EXPECT_NEAR(statistical_distance(c, d), 0.1 / 3.0, 1e-15);

  Eigen::VectorXd e(2);
  EXPECT_THROW(statistical_distance(a, Eigen::VectorXd::Zero(3)),
               std::invalid_argument);
}

TEST(StatisticalDistanceTest, IsAMetric) {
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd x = testing::random_vector(4, 31, trial, 0.0, 1.0);
    const Eigen::VectorXd y = testing::random_vector(4, 32, trial, 0.0, 1.0);
    const Eigen::VectorXd z = testing::random_vector(4, 33, trial, 0.0, 1.0);
    EXPECT_DOUBLE_EQ(statistical_distance(x, x), 0.0);
    EXPECT_DOUBLE_EQ(statistical_distance(x, y), statistical_distance(y, x));
    EXPECT_LE(statistical_distance(x, z),
              statistical_distance(x, y) + statistical_distance(y, z) + 1e-15);
  }
}

TEST(CoreViolationTest, ExactNashOptimumIsTight) {
  const Instance instance = testing::make_n2m2();
  Eigen::VectorXd z(2);
  z << 0.5, 0.5;
  EXPECT_NEAR(core_violation(instance, z, 0.0, 0.0), 1.0, 1e-6);
}

TEST(CoreViolationTest, NeglectedBlocCanDeviate) {
  const Instance instance = testing::make_two_bloc(500);
  // Bloc 0's own optimum starves bloc 1 entirely.
  Eigen::VectorXd z(3);
  z << 0.6, 0.0, 0.0;
  // At delta = 0 the starved bloc has a zero denominator.
  EXPECT_THROW(core_violation(instance, z, 0.0, 0.0), MetricsError);

  // With a small delta the certificate is finite and far above 1. Hand
  // computation: w_0 = 0.5/0.6+d, w_1 = 0.5/d, w_2 = 0; the oracle fills
  // project 1 to its 0.6 cap and project 0 with the remaining 0.4.
  const double delta = 1e-3;
  const double d = delta;  // eps = 0
  const double w0 = 0.5 / (0.6 + d);
  const double w1 = 0.5 / d;
  const double expected = w1 * 0.6 + w0 * 0.4;
  EXPECT_NEAR(core_violation(instance, z, 0.0, delta), expected, 1e-9);
  EXPECT_GT(core_violation(instance, z, 0.0, delta), 1.0);
}

TEST(CoreViolationTest, LargeDeltaDrivesRatioToZero) {
  const Instance instance = testing::make_two_bloc(50);
  Eigen::VectorXd z(3);
  z << 0.5, 0.5, 0.0;
  double last = std::numeric_limits<double>::infinity();
  for (double delta : {1.0, 10.0, 1000.0, 1e6}) {
    const double value = core_violation(instance, z, 0.0, delta);
    EXPECT_LT(value, last);
    last = value;
  }
  EXPECT_LT(last, 1e-5);
}

TEST(CoreViolationTest, MonotoneInDelta) {
  const Instance instance = testing::make_mixed(20);
  const FeasibleRegion region = feasible_region(instance);
  const Eigen::VectorXd z =
      project(testing::random_vector(instance.m, 41, 0, 0.05, 0.4), region)
          .point;
  double last = std::numeric_limits<double>::infinity();
  for (double delta : {0.01, 0.1, 1.0, 10.0}) {
    const double value = core_violation(instance, z, 0.0, delta);
    EXPECT_LE(value, last + 1e-12);
    last = value;
  }
}

TEST(NashWelfareTest, KnownValues) {
  const Instance single = testing::make_single_voter();
  Eigen::VectorXd z(3);
  z << 0.5, 0.25, 0.25;  // utility 1
  EXPECT_DOUBLE_EQ(nash_welfare(single, z, 0.0), 0.0);

  const Instance pair = testing::make_n2m2();
  Eigen::VectorXd w(2);
  w << 0.5, 0.5;
  EXPECT_NEAR(nash_welfare(pair, w, 0.0), 2.0 * std::log(0.5), 1e-12);

  // Zero utility at upsilon = 0 is the -inf sentinel.
  EXPECT_EQ(nash_welfare(pair, Eigen::VectorXd::Zero(2), 0.0),
            -std::numeric_limits<double>::infinity());
}

TEST(NashWelfareTest, BaselineDominatesOtherAllocations) {
  const Instance instance = testing::make_two_bloc(40);
  BaselineOptions options;
  options.tol = 1e-8;
  const SolverReport baseline = run_noiseless(instance, options);
  const FeasibleRegion region = feasible_region(instance);
  const double best = nash_welfare(instance, baseline.allocation.z, 1e-9);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd z =
        project(testing::random_vector(instance.m, 51, trial, 0.0, 0.8),
                region)
            .point;
    EXPECT_LE(nash_welfare(instance, z, 1e-9), best + 1e-3);
  }
}

TEST(ComputeMetricsTest, AssemblesReport) {
  const Instance instance = testing::make_two_bloc(30);
  Eigen::VectorXd z(3);
  z << 0.5, 0.5, 0.0;
  Eigen::VectorXd ref(3);
  ref << 0.45, 0.55, 0.0;
  const MetricsReport report =
      compute_metrics(instance, z, 0.0, 0.0, 0.0, ref);
  EXPECT_NEAR(report.sw, 0.5, 1e-12);
  EXPECT_NEAR(report.ps_min_times_n, 0.5 * instance.n / 0.6, 1e-9);
  ASSERT_TRUE(report.sd_per_m.has_value());
  EXPECT_NEAR(*report.sd_per_m, 0.05 / 3.0, 1e-12);
  EXPECT_EQ(report.excluded_voters, 0);
  EXPECT_LE(report.core_violation, 1.0 + 1e-6);
}

}  // namespace
}  // namespace ppga
