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

#ifndef PPGA_SOLVER_HPP_
#define PPGA_SOLVER_HPP_

#include <Eigen/Core>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppga/geometry.hpp"
#include "ppga/model.hpp"
#include "ppga/parallel.hpp"
#include "ppga/privacy.hpp"
#include "ppga/subsolver.hpp"

namespace ppga {

struct SolverOptions {
  double rho = 1.0;
  double upsilon = 0.0;
  // First-order accuracy of the x-updates; defaults to 1e-8 for noiseless
  // runs and max(1e-8, 0.1/sqrt(n)) for noised runs.
  std::optional<double> xi;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = all hardware threads

  enum class FailurePolicy { kAbort, kAcceptBest };
  FailurePolicy on_subsolver_failure = FailurePolicy::kAbort;
};

struct BaselineOptions {
  SolverOptions solver;
  double tol = 1e-7;      // primal residual and successive-z change
  int max_iters = 20000;
};

struct IterationRecord {
  int k = 0;
  double primal_residual = 0.0;   // ||x - Gz||_2 / sqrt(n)
  double mean_sub_residual = 0.0; // mean accepted x-update certificate
  double noise_norm = 0.0;        // ||q^(k)||_2
};

// Consensus state: per-agent locals and duals as columns of m-by-n matrices,
// plus the (possibly infeasible) global iterate and the running z sum.
// Invariant maintained by iterate(): sum_i gamma_i = -rho * n * q.
struct AdmmState {
  int k = 0;
  Eigen::MatrixXd x;        // m x n
  Eigen::MatrixXd gamma;    // m x n
  Eigen::VectorXd z;
  Eigen::VectorXd q_prev;
  Eigen::VectorXd z_accum;
  double rho = 1.0;
  std::vector<double> sub_residuals;  // per-agent certificate values
  int uncertified_agents = 0;         // agents carrying a best-effort iterate
};

inline AdmmState init_state(const Instance& instance, double rho) {
  AdmmState state;
  state.k = 0;
  state.x = Eigen::MatrixXd::Zero(instance.m, instance.n);
  state.gamma = Eigen::MatrixXd::Zero(instance.m, instance.n);
  state.z = Eigen::VectorXd::Zero(instance.m);
  state.q_prev = Eigen::VectorXd::Zero(instance.m);
  state.z_accum = Eigen::VectorXd::Zero(instance.m);
  state.rho = rho;
  state.sub_residuals.assign(static_cast<size_t>(instance.n), 0.0);
  return state;
}

struct IterateParams {
  double sigma2 = 0.0;
  std::uint64_t seed = 0;
  double upsilon = 0.0;
  double xi = 1e-8;
  int threads = 0;
  SolverOptions::FailurePolicy on_subsolver_failure =
      SolverOptions::FailurePolicy::kAbort;
};

// One full update k -> k+1: agent x-updates against (z, gamma), fresh noise
// q, the noisy consensus average z = mean(x) + q - q_prev, then the dual
// step gamma_i += rho (x_i - z). All reductions run in fixed chunk order.
inline IterationRecord iterate(AdmmState& state, const Instance& instance,
                               const FeasibleRegion& region,
                               const IterateParams& params) {
  const int n = instance.n;
  const int m = instance.m;
  const int k_next = state.k + 1;

  const Eigen::VectorXd z_prev = state.z;
  std::atomic<int> failures{0};
  int first_failed_agent = -1;
  double first_failed_residual = 0.0;

  parallel_chunks(n, params.threads,
                  [&](std::int64_t, std::int64_t b, std::int64_t e) {
    for (std::int64_t i = b; i < e; ++i) {
      SubproblemSpec spec;
      spec.approvals = instance.approvals[static_cast<size_t>(i)];
      spec.z_prev = z_prev;
      spec.gamma_prev = state.gamma.col(i);
      spec.rho = state.rho;
      spec.upsilon = params.upsilon;
      spec.xi = params.xi;
      try {
        SubsolverResult result =
            solve_x_subproblem(spec, region, state.x.col(i));
        state.x.col(i) = result.x;
        state.sub_residuals[static_cast<size_t>(i)] = result.residual;
      } catch (const SubsolverError& err) {
        state.x.col(i) = err.best_iterate;
        state.sub_residuals[static_cast<size_t>(i)] = err.residual;
        if (failures.fetch_add(1) == 0) {
          first_failed_agent = static_cast<int>(i);
          first_failed_residual = err.residual;
        }
      }
    }
  });

  if (failures.load() > 0) {
    state.uncertified_agents += failures.load();
    if (params.on_subsolver_failure == SolverOptions::FailurePolicy::kAbort) {
      throw SubsolverError(state.x.col(first_failed_agent),
                           first_failed_residual, 0, first_failed_agent);
    }
  }

  const Eigen::VectorXd q =
      sample_gaussian_vector(params.sigma2, m, k_next, params.seed);
  state.z = sum_columns(state.x, params.threads) / static_cast<double>(n) + q -
            state.q_prev;

  const Eigen::VectorXd z_now = state.z;
  parallel_chunks(n, params.threads,
                  [&](std::int64_t, std::int64_t b, std::int64_t e) {
    for (std::int64_t i = b; i < e; ++i) {
      state.gamma.col(i) += state.rho * (state.x.col(i) - z_now);
    }
  });

  state.q_prev = q;
  state.z_accum += state.z;
  state.k = k_next;

  IterationRecord record;
  record.k = k_next;
  record.primal_residual = std::sqrt(
      sum_indexed(n, params.threads,
                  [&](std::int64_t i) {
                    return (state.x.col(i) - z_now).squaredNorm();
                  }) /
      static_cast<double>(n));
  record.mean_sub_residual =
      sum_indexed(n, params.threads,
                  [&](std::int64_t i) {
                    return state.sub_residuals[static_cast<size_t>(i)];
                  }) /
      static_cast<double>(n);
  record.noise_norm = q.norm();
  return record;
}

struct SolverReport {
  Allocation allocation;
  std::string output_kind;  // "time_average" or "final_iterate"
  bool converged = true;
  int iterations_run = 0;
  int uncertified_agents = 0;
  std::vector<IterationRecord> trace;
  std::optional<PrivacyLedger> ledger;
  double rho = 1.0;
  double upsilon = 0.0;
  double xi = 0.0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

inline double resolve_xi(const SolverOptions& options, int n, bool noised) {
  if (options.xi) return *options.xi;
  if (noised) return std::max(1e-8, 0.1 / std::sqrt(static_cast<double>(n)));
  return 1e-8;
}

// The noised mechanism: K iterations from the all-zeros start, output the
// projected time average of the z iterates.
inline SolverReport run_fixed_noise(const Instance& instance, int iterations,
                                    double sigma2,
                                    const SolverOptions& options) {
  if (!(options.rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  const auto start = std::chrono::steady_clock::now();

  const FeasibleRegion region = feasible_region(instance);
  AdmmState state = init_state(instance, options.rho);

  IterateParams params;
  params.sigma2 = sigma2;
  params.seed = options.seed;
  params.upsilon = options.upsilon;
  params.xi = resolve_xi(options, instance.n, sigma2 > 0.0);
  params.threads = options.threads;
  params.on_subsolver_failure = options.on_subsolver_failure;

  SolverReport report;
  report.trace.reserve(static_cast<size_t>(iterations));
  for (int k = 0; k < iterations; ++k) {
    report.trace.push_back(iterate(state, instance, region, params));
  }

  report.allocation.z =
      project(state.z_accum / static_cast<double>(iterations), region).point;
  report.output_kind = "time_average";
  report.iterations_run = iterations;
  report.uncertified_agents = state.uncertified_agents;
  report.rho = options.rho;
  report.upsilon = options.upsilon;
  report.xi = params.xi;
  report.seed = options.seed;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

inline SolverReport run(const Instance& instance, const DpParams& dp,
                        const SolverOptions& options) {
  SolverReport report =
      run_fixed_noise(instance, dp.iterations, dp.sigma2, options);
  report.ledger = privacy_ledger(dp, instance.m);
  return report;
}

// Noiseless baseline: same loop with sigma2 = 0, run to a primal-residual
// and successive-z tolerance, output the projected final consensus iterate.
inline SolverReport run_noiseless(const Instance& instance,
                                  const BaselineOptions& options) {
  if (!(options.solver.rho > 0.0)) {
    throw std::invalid_argument("rho must be positive");
  }
  const auto start = std::chrono::steady_clock::now();

  const FeasibleRegion region = feasible_region(instance);
  AdmmState state = init_state(instance, options.solver.rho);

  IterateParams params;
  params.sigma2 = 0.0;
  params.seed = options.solver.seed;
  params.upsilon = options.solver.upsilon;
  params.xi = resolve_xi(options.solver, instance.n, false);
  params.threads = options.solver.threads;
  params.on_subsolver_failure = options.solver.on_subsolver_failure;

  SolverReport report;
  report.converged = false;
  Eigen::VectorXd z_last = state.z;
  for (int k = 0; k < options.max_iters; ++k) {
    report.trace.push_back(iterate(state, instance, region, params));
    const double z_change = (state.z - z_last).norm();
    z_last = state.z;
    if (report.trace.back().primal_residual <= options.tol &&
        z_change <= options.tol) {
      report.converged = true;
      break;
    }
  }

  report.allocation.z = project(state.z, region).point;
  report.output_kind = "final_iterate";
  report.iterations_run = state.k;
  report.uncertified_agents = state.uncertified_agents;
  report.rho = options.solver.rho;
  report.upsilon = options.solver.upsilon;
  report.xi = params.xi;
  report.seed = options.solver.seed;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace ppga

#endif  // PPGA_SOLVER_HPP_
