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

#ifndef PPGA_SUBSOLVER_HPP_
#define PPGA_SUBSOLVER_HPP_

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ppga/geometry.hpp"
#include "ppga/model.hpp"

namespace ppga {

// Smoothing floor: log(U + upsilon) must stay defined at the all-zeros start
// even when the caller asks for upsilon = 0.
constexpr double kUpsilonFloor = 1e-9;

// One agent's x-update: maximize
//   log(U_i(x) + upsilon_eff) - gamma'(x - z_prev) - (rho/2) ||x - z_prev||^2
// over the feasible region, to first-order accuracy xi. U_i is the binary
// linear utility over `approvals`.
struct SubproblemSpec {
  std::vector<int> approvals;
  Eigen::VectorXd z_prev;
  Eigen::VectorXd gamma_prev;
  double rho = 1.0;
  double upsilon = 0.0;
  double xi = 1e-8;

  double upsilon_eff() const { return std::max(upsilon, kUpsilonFloor); }

  // Worst-case gradient Lipschitz bound of the negated objective,
  // (1 + beta)^2 / (2 upsilon_eff^2) + beta / upsilon_eff + rho; beta = 0 for
  // linear utilities. Far too pessimistic to use as a step size, so the
  // solver adapts by backtracking instead.
  double lipschitz_bound(double beta = 0.0) const {
    const double u = upsilon_eff();
    return (1.0 + beta) * (1.0 + beta) / (2.0 * u * u) + beta / u + rho;
  }
};

namespace detail {

inline double approval_sum(const std::vector<int>& approvals,
                           const Eigen::Ref<const Eigen::VectorXd>& x) {
  double total = 0.0;
  for (int j : approvals) total += x[j];
  return total;
}

inline double subproblem_objective(const SubproblemSpec& spec,
                                   const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double u = approval_sum(spec.approvals, x) + spec.upsilon_eff();
  const Eigen::VectorXd d = x - spec.z_prev;
  return std::log(u) - spec.gamma_prev.dot(d) - 0.5 * spec.rho * d.squaredNorm();
}

inline void subproblem_gradient(const SubproblemSpec& spec,
                                const Eigen::Ref<const Eigen::VectorXd>& x,
                                Eigen::VectorXd& g) {
  g = -spec.gamma_prev - spec.rho * (x - spec.z_prev);
  const double u = approval_sum(spec.approvals, x) + spec.upsilon_eff();
  const double scale = 1.0 / u;
  for (int j : spec.approvals) g[j] += scale;
}

}  // namespace detail

// Exact first-order residual max_{z in Z} (z - x)' grad(x), computed with the
// greedy LP oracle. Zero iff x is exactly optimal.
inline double fo_residual(const Eigen::Ref<const Eigen::VectorXd>& x,
                          const SubproblemSpec& spec,
                          const FeasibleRegion& region) {
  Eigen::VectorXd g(x.size());
  detail::subproblem_gradient(spec, x, g);
  const LinearMax best = max_linear(g, region);
  return std::max(best.value - x.dot(g), 0.0);
}

struct SubsolverResult {
  Eigen::VectorXd x;
  double residual = 0.0;
  int iterations = 0;
};

// Iteration cap reached before the certificate passed; carries the best
// iterate seen so the caller can decide whether to proceed with it.
class SubsolverError : public std::runtime_error {
 public:
  SubsolverError(Eigen::VectorXd best, double residual, int iterations,
                 int voter = -1)
      : std::runtime_error("subsolver hit its iteration cap (voter " +
                           std::to_string(voter) + ", residual " +
                           std::to_string(residual) + ")"),
        best_iterate(std::move(best)),
        residual(residual),
        iterations(iterations),
        voter(voter) {}

  Eigen::VectorXd best_iterate;
  double residual = 0.0;
  int iterations = 0;
  int voter = -1;
};

// Accelerated projected gradient with momentum restarts on objective
// decrease. Stops as soon as the exact LP certificate fo_residual(x) <= xi
// passes.
//
// Step sizes come from the closed-form segment curvature rather than
// function-value backtracking: the Hessian of the negated objective is
// u u' / (U + upsilon)^2 + rho I, and U is linear along any segment, so
// |A| / (upsilon + min(U(y), U(x+)))^2 + rho bounds the curvature on the
// whole step exactly. Value-based backtracking cannot be verified near the
// optimum in floating point, which is what this avoids.
inline SubsolverResult solve_x_subproblem(
    const SubproblemSpec& spec, const FeasibleRegion& region,
    const Eigen::Ref<const Eigen::VectorXd>& warm_start) {
  using detail::approval_sum;
  using detail::subproblem_gradient;
  using detail::subproblem_objective;

  if (!(spec.rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(spec.xi > 0.0)) throw std::invalid_argument("xi must be positive");

  // Degenerate agent: constant log term, pure quadratic, exact in one
  // projection.
  if (spec.approvals.empty()) {
    SubsolverResult result;
    result.x = project(spec.z_prev - spec.gamma_prev / spec.rho, region).point;
    result.residual = fo_residual(result.x, spec, region);
    result.iterations = 0;
    return result;
  }

  const double upsilon = spec.upsilon_eff();
  const double count = static_cast<double>(spec.approvals.size());
  const auto curvature = [&](double u) {
    const double s = std::max(u, 0.0) + upsilon;
    return count / (s * s) + spec.rho;
  };

  Eigen::VectorXd x = project(warm_start, region).point;
  Eigen::VectorXd y = x;
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd candidate;
  double t = 1.0;
  // Objectives are negated: the method minimizes h = -objective.
  double hx = -subproblem_objective(spec, x);

  SubsolverResult best;
  best.x = x;
  best.residual = fo_residual(x, spec, region);
  if (best.residual <= spec.xi) return best;

  const double log_term = std::max(1.0, std::log(1.0 / spec.xi));
  auto iteration_cap = [&](double lip) {
    const double cap =
        10.0 * std::ceil(std::sqrt((lip + spec.rho) / spec.xi) * log_term);
    return static_cast<int>(std::clamp(cap, 1000.0, 200000.0));
  };
  double steady_curvature = spec.rho;

  int it = 0;
  while (it < iteration_cap(steady_curvature)) {
    ++it;
    subproblem_gradient(spec, y, g);
    g = -g;

    const double u_y = approval_sum(spec.approvals, y);
    double lipschitz = curvature(u_y);
    for (int grow = 0; grow < 64; ++grow) {
      candidate = project(y - g / lipschitz, region).point;
      const double segment =
          curvature(std::min(u_y, approval_sum(spec.approvals, candidate)));
      if (lipschitz >= segment * (1.0 - 1e-12)) break;
      lipschitz = segment;
    }
    steady_curvature = lipschitz;

    // The gradient mapping bounds the certificate: residual <=
    // sqrt(2) * 2L ||candidate - y|| over a diameter-sqrt(2) region, so the
    // exact LP check only needs to run once the step is small enough for it
    // to plausibly pass (with slack), or periodically as a safety net.
    const double step_bound =
        2.0 * std::numbers::sqrt2 * lipschitz * (candidate - y).norm();
    double residual = std::numeric_limits<double>::infinity();
    if (step_bound <= 16.0 * spec.xi || it % 16 == 0) {
      residual = fo_residual(candidate, spec, region);
      if (residual < best.residual) {
        best.x = candidate;
        best.residual = residual;
      }
      if (residual <= spec.xi) {
        best.iterations = it;
        return best;
      }
    }

    const double hc = -subproblem_objective(spec, candidate);
    if (hc > hx) {
      // Objective decreased: drop momentum.
      t = 1.0;
      y = candidate;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      y = candidate + ((t - 1.0) / t_next) * (candidate - x);
      t = t_next;
    }
    x = candidate;
    hx = hc;

    // Extrapolation can leave the log domain; fall back to the feasible
    // iterate when it does.
    if (approval_sum(spec.approvals, y) + upsilon <= 0.0) {
      y = x;
      t = 1.0;
    }
  }

  best.iterations = it;
  throw SubsolverError(best.x, best.residual, it);
}

}  // namespace ppga

#endif  // PPGA_SUBSOLVER_HPP_
