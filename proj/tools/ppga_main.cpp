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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ppga/cli.hpp"

namespace {

std::optional<double> parse_auto_double(const std::string& text,
                                        const std::string& flag) {
  if (text == "auto") return std::nullopt;
  try {
    size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (...) {
    throw CLI::ValidationError(flag, "expected a number or 'auto'");
  }
}

std::optional<int> parse_auto_int(const std::string& text,
                                  const std::string& flag) {
  if (text == "auto") return std::nullopt;
  try {
    size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (...) {
    throw CLI::ValidationError(flag, "expected an integer or 'auto'");
  }
}

void add_common_flags(CLI::App* cmd, ppga::RunConfig* config,
                      std::string* epsilon, std::string* delta,
                      std::string* alpha, std::string* iterations,
                      bool with_dp) {
  cmd->add_option("--input", config->input, "election file (.pb)")->required();
  cmd->add_option("--out", config->out, "report path (default: stdout)");
  cmd->add_option("--rho", config->rho, "ADMM penalty parameter");
  cmd->add_option("--upsilon", config->upsilon, "Nash-welfare smoothing");
  cmd->add_option_function<double>(
         "--xi", [config](const double& v) { config->xi = v; },
         "x-update first-order accuracy (default: auto)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", config->seed, "base random seed");
  cmd->add_option("--threads", config->threads, "worker threads (0 = all)");
  cmd->add_option_function<int>(
      "--sample", [config](const int& v) { config->sample = v; },
      "subsample this many voters before solving");
  cmd->add_flag("--timings", config->timings, "include wall time in report");
  cmd->add_flag("--accept-best", config->accept_best,
                "keep best iterates when an x-update misses its certificate");
  if (with_dp) {
    cmd->add_option("--epsilon", *epsilon, "DP epsilon or 'auto'");
    cmd->add_option("--delta", *delta, "DP delta or 'auto'");
    cmd->add_option("--alpha", *alpha, "Renyi order or 'auto'");
    cmd->add_option("--iterations", *iterations, "iteration count K or 'auto'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Differentially private allocation of divisible public goods: "
      "Nash-welfare consensus ADMM with a Gaussian mechanism, a noiseless "
      "exact-core baseline, and comparison metrics."};
  app.require_subcommand(1);

  ppga::RunConfig config;
  std::string epsilon = "auto", delta = "auto", alpha = "auto",
              iterations = "auto";

  CLI::App* solve = app.add_subcommand("solve", "run the private mechanism");
  add_common_flags(solve, &config, &epsilon, &delta, &alpha, &iterations, true);

  CLI::App* baseline =
      app.add_subcommand("baseline", "run the noiseless exact-core baseline");
  add_common_flags(baseline, &config, &epsilon, &delta, &alpha, &iterations,
                   false);
  baseline->add_option("--tol", config.tol, "convergence tolerance");
  baseline->add_option("--max-iters", config.max_iters, "iteration cap");

  CLI::App* compare =
      app.add_subcommand("compare", "baseline vs. private runs over seeds");
  add_common_flags(compare, &config, &epsilon, &delta, &alpha, &iterations,
                   true);
  compare->add_option("--runs", config.runs, "number of seeded private runs");
  compare->add_option("--tol", config.tol, "baseline convergence tolerance");
  compare->add_option("--max-iters", config.max_iters, "baseline iteration cap");
  compare->add_option("--csv", config.csv_out, "write per-seed SW ratios here");
  compare->add_flag("--baseline-only", config.baseline_only,
                    "skip the private runs");

  CLI::App* metrics =
      app.add_subcommand("metrics", "score an allocation from a report file");
  metrics->add_option("--input", config.input, "election file (.pb)")
      ->required();
  metrics->add_option("--allocation", config.allocation_path,
                      "report JSON holding the allocation")
      ->required();
  metrics->add_option("--reference", config.reference_path,
                      "report JSON holding a reference allocation");
  metrics->add_option("--out", config.out, "report path (default: stdout)");
  metrics->add_option("--upsilon", config.upsilon, "Nash-welfare smoothing");
  metrics->add_option_function<int>(
      "--sample", [&config](const int& v) { config.sample = v; },
      "subsample this many voters before scoring");
  metrics->add_option("--seed", config.seed, "seed for --sample");

  try {
    app.parse(argc, argv);
    config.epsilon = parse_auto_double(epsilon, "--epsilon");
    config.delta = parse_auto_double(delta, "--delta");
    config.alpha = parse_auto_double(alpha, "--alpha");
    config.iterations = parse_auto_int(iterations, "--iterations");
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }

  if (solve->parsed()) config.command = "solve";
  if (baseline->parsed()) config.command = "baseline";
  if (compare->parsed()) config.command = "compare";
  if (metrics->parsed()) config.command = "metrics";
  return ppga::run_command(config);
}
