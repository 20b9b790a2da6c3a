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

#ifndef PPGA_CLI_HPP_
#define PPGA_CLI_HPP_

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ppga/ingest.hpp"
#include "ppga/metrics.hpp"
#include "ppga/model.hpp"
#include "ppga/privacy.hpp"
#include "ppga/report.hpp"
#include "ppga/solver.hpp"

namespace ppga {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitPrivacyError = 3;
inline constexpr int kExitNonConvergence = 4;

struct RunConfig {
  std::string command;  // solve | baseline | compare | metrics
  std::string input;
  std::string out;      // empty = stdout
  std::string csv_out;  // compare: per-seed social-welfare ratios

  // DP knobs; unset = resolve by the auto schedule from the post-sampling n.
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<double> alpha;
  std::optional<int> iterations;

  double rho = 1.0;
  double upsilon = 0.0;
  std::optional<double> xi;
  std::uint64_t seed = 0;
  int runs = 1;
  int threads = 0;
  std::optional<int> sample;

  double tol = 1e-7;
  int max_iters = 20000;
  bool baseline_only = false;
  bool timings = false;
  bool accept_best = false;  // keep best iterates when a subsolver stalls

  std::string allocation_path;  // metrics: report holding the allocation
  std::string reference_path;   // metrics: optional reference report
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path, 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << bytes;
}

inline Instance load_instance(const RunConfig& config,
                              nlohmann::json* config_echo) {
  RawElection election = parse_pabulib(read_file(config.input));
  if (config.sample) {
    election = sample_voters(election, *config.sample, config.seed);
  }
  if (election.dropped_vote_refs > 0) {
    std::cerr << "warning: dropped " << election.dropped_vote_refs
              << " vote references to unknown project ids\n";
  }
  if (election.count_mismatches > 0) {
    std::cerr << "warning: META num_projects/num_votes disagree with file "
                 "content; using file content\n";
  }
  if (config_echo) {
    (*config_echo)["input"] = config.input;
    (*config_echo)["sample"] =
        config.sample ? nlohmann::json(*config.sample) : nlohmann::json();
    (*config_echo)["dropped_vote_refs"] = election.dropped_vote_refs;
  }
  return cost_utility(election);
}

inline DpParams resolve_dp(const RunConfig& config, std::int64_t n) {
  const double epsilon =
      config.epsilon ? *config.epsilon : 1.5 / std::log(static_cast<double>(n));
  const double delta =
      config.delta ? *config.delta : 0.3 / std::sqrt(static_cast<double>(n));
  const int iterations =
      config.iterations
          ? *config.iterations
          : static_cast<int>(std::max<std::int64_t>(
                1, std::llround(0.001 * static_cast<double>(n))));
  const double alpha =
      config.alpha ? *config.alpha : default_alpha(epsilon, delta);
  return derive_dp_params(epsilon, delta, alpha, iterations, n);
}

inline SolverOptions solver_options(const RunConfig& config) {
  SolverOptions options;
  options.rho = config.rho;
  options.upsilon = config.upsilon;
  options.xi = config.xi;
  options.seed = config.seed;
  options.threads = config.threads;
  options.on_subsolver_failure = config.accept_best
                                     ? SolverOptions::FailurePolicy::kAcceptBest
                                     : SolverOptions::FailurePolicy::kAbort;
  return options;
}

inline nlohmann::json base_config_echo(const RunConfig& config) {
  nlohmann::json echo;
  echo["rho"] = config.rho;
  echo["upsilon"] = config.upsilon;
  echo["xi"] = config.xi ? nlohmann::json(*config.xi) : nlohmann::json();
  echo["seed"] = config.seed;
  echo["threads"] = config.threads;
  return echo;
}

inline double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

inline nlohmann::json aggregate_stats(const std::vector<double>& values) {
  nlohmann::json out;
  double total = 0.0;
  double lo = values.empty() ? 0.0 : values.front();
  for (double v : values) {
    total += v;
    lo = std::min(lo, v);
  }
  out["mean"] = values.empty() ? 0.0 : total / static_cast<double>(values.size());
  out["min"] = lo;
  out["median"] = median(values);
  return out;
}

}  // namespace detail

inline int cmd_solve(const RunConfig& config) {
  nlohmann::json echo = detail::base_config_echo(config);
  const Instance instance = detail::load_instance(config, &echo);
  const DpParams dp = detail::resolve_dp(config, instance.n);
  echo["epsilon"] = dp.epsilon;
  echo["delta"] = dp.delta;
  echo["alpha"] = dp.alpha;
  echo["iterations"] = dp.iterations;

  const SolverReport report = run(instance, dp, detail::solver_options(config));

  nlohmann::json out;
  out["schema_version"] = kReportSchemaVersion;
  out["command"] = "solve";
  out["config"] = echo;
  nlohmann::json body = solver_report_json(report, config.timings);
  body["metrics"] =
      metrics_json(instance, report.allocation.z, config.upsilon);
  out.update(body);
  detail::write_output(config.out, out.dump(2) + "\n");
  if (config.timings) {
    std::cerr << "solve finished in " << report.wall_seconds << " s\n";
  }
  return kExitOk;
}

inline int cmd_baseline(const RunConfig& config) {
  nlohmann::json echo = detail::base_config_echo(config);
  const Instance instance = detail::load_instance(config, &echo);
  echo["tol"] = config.tol;
  echo["max_iters"] = config.max_iters;

  BaselineOptions options;
  options.solver = detail::solver_options(config);
  options.tol = config.tol;
  options.max_iters = config.max_iters;
  const SolverReport report = run_noiseless(instance, options);

  nlohmann::json out;
  out["schema_version"] = kReportSchemaVersion;
  out["command"] = "baseline";
  out["config"] = echo;
  nlohmann::json body = solver_report_json(report, config.timings);
  body["metrics"] =
      metrics_json(instance, report.allocation.z, config.upsilon);
  out.update(body);
  detail::write_output(config.out, out.dump(2) + "\n");
  if (!report.converged) {
    std::cerr << "warning: baseline did not reach tol within "
              << config.max_iters << " iterations\n";
  }
  return kExitOk;
}

inline int cmd_compare(const RunConfig& config) {
  nlohmann::json echo = detail::base_config_echo(config);
  const Instance instance = detail::load_instance(config, &echo);
  echo["runs"] = config.runs;
  echo["baseline_only"] = config.baseline_only;

  BaselineOptions baseline_options;
  baseline_options.solver = detail::solver_options(config);
  baseline_options.tol = config.tol;
  baseline_options.max_iters = config.max_iters;
  const SolverReport baseline = run_noiseless(instance, baseline_options);
  const Eigen::VectorXd& z_core = baseline.allocation.z;
  const double sw_core = social_welfare(instance, z_core);

  nlohmann::json out;
  out["schema_version"] = kReportSchemaVersion;
  out["command"] = "compare";
  nlohmann::json baseline_json;
  baseline_json["allocation"] = std::vector<double>(
      z_core.data(), z_core.data() + z_core.size());
  baseline_json["converged"] = baseline.converged;
  baseline_json["iterations_run"] = baseline.iterations_run;
  baseline_json["metrics"] = metrics_json(instance, z_core, config.upsilon);
  out["baseline"] = std::move(baseline_json);

  nlohmann::json runs = nlohmann::json::array();
  std::vector<double> sw_ratios, ps_mins, ps_avgs, sds, cores;
  std::ostringstream csv;
  csv << "seed,sw_ratio\n";
  if (!config.baseline_only) {
    for (int r = 0; r < config.runs; ++r) {
      RunConfig run_config = config;
      run_config.seed = config.seed + static_cast<std::uint64_t>(r);
      const DpParams dp = detail::resolve_dp(run_config, instance.n);
      if (r == 0) {
        echo["epsilon"] = dp.epsilon;
        echo["delta"] = dp.delta;
        echo["alpha"] = dp.alpha;
        echo["iterations"] = dp.iterations;
      }
      const SolverReport report =
          run(instance, dp, detail::solver_options(run_config));
      const Eigen::VectorXd& z = report.allocation.z;

      nlohmann::json row;
      row["seed"] = run_config.seed;
      const double sw_ratio =
          sw_core > 0.0 ? social_welfare(instance, z) / sw_core : 0.0;
      row["sw_ratio"] = sw_ratio;
      const auto [ps_min, ps_avg] = proportionality(instance, z);
      row["ps_min_times_n"] = ps_min;
      row["ps_avg"] = ps_avg;
      const double sd = statistical_distance(z, z_core);
      row["sd_per_m"] = sd;
      try {
        row["core_violation"] = core_violation(instance, z, 0.0, 0.0);
        cores.push_back(row["core_violation"].get<double>());
      } catch (const MetricsError&) {
        row["core_violation"] = nullptr;
      }
      runs.push_back(std::move(row));
      sw_ratios.push_back(sw_ratio);
      ps_mins.push_back(ps_min);
      ps_avgs.push_back(ps_avg);
      sds.push_back(sd);
      csv << run_config.seed << ',' << sw_ratio << '\n';
    }
  }
  out["config"] = echo;
  out["runs"] = std::move(runs);
  if (!sw_ratios.empty()) {
    nlohmann::json aggregate;
    aggregate["sw_ratio"] = detail::aggregate_stats(sw_ratios);
    aggregate["ps_min_times_n"] = detail::aggregate_stats(ps_mins);
    aggregate["ps_avg"] = detail::aggregate_stats(ps_avgs);
    aggregate["sd_per_m"] = detail::aggregate_stats(sds);
    if (!cores.empty()) {
      aggregate["core_violation"] = detail::aggregate_stats(cores);
    }
    out["aggregate"] = std::move(aggregate);
  }

  detail::write_output(config.out, out.dump(2) + "\n");
  if (!config.csv_out.empty()) detail::write_output(config.csv_out, csv.str());
  return kExitOk;
}

inline int cmd_metrics(const RunConfig& config) {
  const Instance instance = detail::load_instance(config, nullptr);

  auto load_allocation = [&](const std::string& path) -> Eigen::VectorXd {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(detail::read_file(path));
    } catch (const nlohmann::json::parse_error& err) {
      throw ParseError("invalid report JSON in " + path + ": " + err.what(), 0);
    }
    if (!doc.contains("allocation")) {
      throw ParseError("report " + path + " has no allocation field", 0);
    }
    const auto values = doc["allocation"].get<std::vector<double>>();
    if (static_cast<int>(values.size()) != instance.m) {
      throw ParseError("allocation length mismatch in " + path, 0);
    }
    return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                             static_cast<Eigen::Index>(values.size()));
  };

  const Eigen::VectorXd z = load_allocation(config.allocation_path);
  std::optional<Eigen::VectorXd> reference;
  if (!config.reference_path.empty()) {
    reference = load_allocation(config.reference_path);
  }

  nlohmann::json out;
  out["schema_version"] = kReportSchemaVersion;
  out["command"] = "metrics";
  out["config"] = {{"input", config.input},
                   {"allocation", config.allocation_path},
                   {"reference", config.reference_path}};
  out["metrics"] = metrics_json(instance, z, config.upsilon, reference);
  detail::write_output(config.out, out.dump(2) + "\n");
  return kExitOk;
}

inline int run_command(const RunConfig& config) {
  try {
    if (config.command == "solve") return cmd_solve(config);
    if (config.command == "baseline") return cmd_baseline(config);
    if (config.command == "compare") return cmd_compare(config);
    if (config.command == "metrics") return cmd_metrics(config);
    std::cerr << "unknown command: " << config.command << "\n";
    return 1;
  } catch (const ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return kExitParseError;
  } catch (const PrivacyBudgetError& err) {
    std::cerr << "privacy budget error: " << err.what() << "\n";
    return kExitPrivacyError;
  } catch (const SubsolverError& err) {
    std::cerr << "subsolver did not certify: " << err.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

}  // namespace ppga

#endif  // PPGA_CLI_HPP_
