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

#ifndef PPGA_METRICS_HPP_
#define PPGA_METRICS_HPP_

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "ppga/errors.hpp"
#include "ppga/geometry.hpp"
#include "ppga/model.hpp"

namespace ppga {

// Voters with an empty approval set are excluded from proportionality and
// Nash-welfare aggregates but counted in n for social welfare and the
// core-violation average.
struct MetricsReport {
  double sw = 0.0;
  double ps_min_times_n = 0.0;
  double ps_avg = 0.0;
  std::optional<double> sd_per_m;
  double nash_welfare = 0.0;
  double core_violation = 0.0;
  int excluded_voters = 0;
};

// Mean utility over all n voters.
inline double social_welfare(const Instance& instance,
                             const Eigen::Ref<const Eigen::VectorXd>& z) {
  double total = 0.0;
  for (int i = 0; i < instance.n; ++i) total += utility(instance, i, z);
  return total / static_cast<double>(instance.n);
}

// (n * min PS_i, mean PS_i) over voters with positive maximum utility, where
// PS_i = U_i(z) / max_utility(i). min times n >= 1 means proportional.
inline std::pair<double, double> proportionality(
    const Instance& instance, const Eigen::Ref<const Eigen::VectorXd>& z) {
  double min_ps = std::numeric_limits<double>::infinity();
  double sum_ps = 0.0;
  int included = 0;
  for (int i = 0; i < instance.n; ++i) {
    const double best = max_utility(instance, i);
    if (best <= 0.0) continue;
    const double ps = utility(instance, i, z) / best;
    min_ps = std::min(min_ps, ps);
    sum_ps += ps;
    ++included;
  }
  if (included == 0) {
    throw MetricsError("proportionality: every voter has zero max utility");
  }
  return {min_ps * static_cast<double>(instance.n),
          sum_ps / static_cast<double>(included)};
}

// Total variation distance normalized by the number of projects:
// (1/2) ||z - z_ref||_1 / m.
inline double statistical_distance(const Eigen::Ref<const Eigen::VectorXd>& z,
                                   const Eigen::Ref<const Eigen::VectorXd>& z_ref) {
  if (z.size() != z_ref.size()) {
    throw std::invalid_argument("statistical_distance: length mismatch");
  }
  return 0.5 * (z - z_ref).lpNorm<1>() / static_cast<double>(z.size());
}

// The blocking-coalition certificate: max over feasible z' of
// (1/n) sum_i U_i(z') / (U_i(z) + delta/(1+eps)). For binary linear utilities
// the objective is linear in z', so the greedy LP oracle computes the maximum
// exactly. A value <= 1 + eps certifies the approximate-core condition; at an
// exact Nash-welfare maximizer with eps = delta = 0 the value is <= 1.
inline double core_violation(const Instance& instance,
                             const Eigen::Ref<const Eigen::VectorXd>& z,
                             double eps, double delta) {
  if (eps < 0.0 || delta < 0.0) {
    throw std::invalid_argument("core_violation: eps and delta must be >= 0");
  }
  const double shift = delta / (1.0 + eps);
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(instance.m);
  for (int i = 0; i < instance.n; ++i) {
    if (instance.approvals[i].empty()) continue;
    const double denom = utility(instance, i, z) + shift;
    if (denom <= 0.0) {
      throw MetricsError("core_violation: zero denominator for voter " +
                         std::to_string(i));
    }
    const double w = 1.0 / denom;
    for (int j : instance.approvals[i]) weights[j] += w;
  }
  weights /= static_cast<double>(instance.n);
  return max_linear(weights, feasible_region(instance)).value;
}

// Smoothed Nash welfare over voters with positive max utility. With
// upsilon = 0 a zero-utility voter contributes -infinity.
inline double nash_welfare(const Instance& instance,
                           const Eigen::Ref<const Eigen::VectorXd>& z,
                           double upsilon) {
  double total = 0.0;
  for (int i = 0; i < instance.n; ++i) {
    if (max_utility(instance, i) <= 0.0) continue;
    total += std::log(utility(instance, i, z) + upsilon);
  }
  return total;
}

inline MetricsReport compute_metrics(
    const Instance& instance, const Eigen::Ref<const Eigen::VectorXd>& z,
    double upsilon, double eps, double delta,
    const std::optional<Eigen::VectorXd>& reference = std::nullopt) {
  MetricsReport report;
  report.sw = social_welfare(instance, z);
  const auto [ps_min, ps_avg] = proportionality(instance, z);
  report.ps_min_times_n = ps_min;
  report.ps_avg = ps_avg;
  if (reference) report.sd_per_m = statistical_distance(z, *reference);
  report.nash_welfare = nash_welfare(instance, z, upsilon);
  report.core_violation = core_violation(instance, z, eps, delta);
  for (int i = 0; i < instance.n; ++i) {
    if (max_utility(instance, i) <= 0.0) ++report.excluded_voters;
  }
  return report;
}

}  // namespace ppga

#endif  // PPGA_METRICS_HPP_
