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

#ifndef PPGA_REPORT_HPP_
#define PPGA_REPORT_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ppga/errors.hpp"
#include "ppga/metrics.hpp"
#include "ppga/model.hpp"
#include "ppga/solver.hpp"

namespace ppga {

inline constexpr const char* kReportSchemaVersion = "1";

inline nlohmann::json to_json(const PrivacyLedger& ledger) {
  return {
      {"epsilon", ledger.epsilon},
      {"delta", ledger.delta},
      {"alpha", ledger.alpha},
      {"eps_prime", ledger.eps_prime},
      {"sigma2", ledger.sigma2},
      {"sensitivity", ledger.sensitivity},
      {"iterations", ledger.iterations},
      {"rdp_per_iteration", ledger.rdp_per_iteration},
      {"rdp_composed", ledger.rdp_composed},
      {"dp_epsilon", ledger.dp_epsilon},
      {"dp_delta", ledger.dp_delta},
      {"m_sigma2", ledger.m_sigma2},
      {"m_sigma2_warning", ledger.m_sigma2_warning},
  };
}

inline nlohmann::json to_json(const MetricsReport& metrics) {
  nlohmann::json out = {
      {"sw", metrics.sw},
      {"ps_min_times_n", metrics.ps_min_times_n},
      {"ps_avg", metrics.ps_avg},
      {"nash_welfare", metrics.nash_welfare},
      {"core_violation", metrics.core_violation},
      {"excluded_voters", metrics.excluded_voters},
  };
  out["sd_per_m"] =
      metrics.sd_per_m ? nlohmann::json(*metrics.sd_per_m) : nlohmann::json();
  return out;
}

inline nlohmann::json to_json(const IterationRecord& record) {
  return {
      {"k", record.k},
      {"primal_residual", record.primal_residual},
      {"mean_sub_residual", record.mean_sub_residual},
      {"noise_norm", record.noise_norm},
  };
}

// Metrics block for an arbitrary allocation. Pieces that are undefined for
// the given point (all-zero utilities at delta = 0, -inf Nash welfare at
// upsilon = 0) serialize as null rather than failing the whole report.
inline nlohmann::json metrics_json(
    const Instance& instance, const Eigen::Ref<const Eigen::VectorXd>& z,
    double upsilon,
    const std::optional<Eigen::VectorXd>& reference = std::nullopt) {
  nlohmann::json out;
  out["sw"] = social_welfare(instance, z);
  try {
    const auto [ps_min, ps_avg] = proportionality(instance, z);
    out["ps_min_times_n"] = ps_min;
    out["ps_avg"] = ps_avg;
  } catch (const MetricsError&) {
    out["ps_min_times_n"] = nullptr;
    out["ps_avg"] = nullptr;
  }
  out["sd_per_m"] =
      reference ? nlohmann::json(statistical_distance(z, *reference))
                : nlohmann::json();
  const double nw = nash_welfare(instance, z, upsilon);
  out["nash_welfare"] = std::isfinite(nw) ? nlohmann::json(nw) : nlohmann::json();
  try {
    out["core_violation"] = core_violation(instance, z, 0.0, 0.0);
  } catch (const MetricsError&) {
    out["core_violation"] = nullptr;
  }
  int excluded = 0;
  for (int i = 0; i < instance.n; ++i) {
    if (max_utility(instance, i) <= 0.0) ++excluded;
  }
  out["excluded_voters"] = excluded;
  return out;
}

inline nlohmann::json solver_report_json(const SolverReport& report,
                                         bool include_timings = false) {
  nlohmann::json out;
  out["allocation"] = std::vector<double>(
      report.allocation.z.data(),
      report.allocation.z.data() + report.allocation.z.size());
  out["output"] = report.output_kind;
  out["converged"] = report.converged;
  out["iterations_run"] = report.iterations_run;
  out["uncertified_agents"] = report.uncertified_agents;
  out["rho"] = report.rho;
  out["upsilon"] = report.upsilon;
  out["xi"] = report.xi;
  out["seed"] = report.seed;
  if (report.ledger) out["ledger"] = to_json(*report.ledger);
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& record : report.trace) trace.push_back(to_json(record));
  out["trace"] = std::move(trace);
  if (include_timings) out["wall_seconds"] = report.wall_seconds;
  return out;
}

}  // namespace ppga

#endif  // PPGA_REPORT_HPP_
