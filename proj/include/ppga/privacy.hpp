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

#ifndef PPGA_PRIVACY_HPP_
#define PPGA_PRIVACY_HPP_

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "ppga/errors.hpp"
#include "ppga/rng.hpp"

namespace ppga {

// Privacy budget split across K iterations of the noised solver:
//   eps_prime = (1/K) * (epsilon - log(1/delta) / (alpha - 1))
//   sigma2    = alpha / (n^2 * eps_prime)
// Each iteration is (alpha, eps_prime)-RDP; the K-fold composition converts
// back to the requested (epsilon, delta)-DP.
struct DpParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  int iterations = 0;  // K
  std::int64_t n = 0;
  double eps_prime = 0.0;
  double sigma2 = 0.0;
};

// The Renyi order that spends half the budget on the RDP->DP conversion:
// log(1/delta) / (alpha - 1) = epsilon / 2.
inline double default_alpha(double epsilon, double delta) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must be in (0, 1)");
  }
  return 2.0 * std::log(1.0 / delta) / epsilon + 1.0;
}

inline DpParams derive_dp_params(double epsilon, double delta, double alpha,
                                 int iterations, std::int64_t n) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must be in (0, 1)");
  }
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (n < 1) throw std::invalid_argument("n must be >= 1");

  const double conversion = std::log(1.0 / delta) / (alpha - 1.0);
  const double eps_prime = (epsilon - conversion) / iterations;
  if (!(eps_prime > 0.0)) {
    throw PrivacyBudgetError(
        "privacy budget exhausted: epsilon (" + std::to_string(epsilon) +
        ") must exceed log(1/delta)/(alpha-1) = " + std::to_string(conversion));
  }
  DpParams params;
  params.epsilon = epsilon;
  params.delta = delta;
  params.alpha = alpha;
  params.iterations = iterations;
  params.n = n;
  params.eps_prime = eps_prime;
  params.sigma2 = alpha / (static_cast<double>(n) * static_cast<double>(n) *
                           eps_prime);
  return params;
}

// Parameter schedule used for "auto": epsilon = 1.5/log(n), delta = 0.3/sqrt(n),
// K = max(1, round(0.001 n)), alpha from default_alpha.
inline DpParams auto_dp_params(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("auto DP parameters need n >= 2");
  const double epsilon = 1.5 / std::log(static_cast<double>(n));
  const double delta = 0.3 / std::sqrt(static_cast<double>(n));
  const int iterations =
      static_cast<int>(std::max<std::int64_t>(1, std::llround(0.001 * n)));
  return derive_dp_params(epsilon, delta, default_alpha(epsilon, delta),
                          iterations, n);
}

// Expected squared noise magnitude per iteration, E[||q||^2] = m * sigma2.
inline double noise_magnitude(const DpParams& params, int m) {
  return static_cast<double>(m) * params.sigma2;
}

// One coordinate stream per iteration k; the draw for coordinate j depends
// only on (seed, k, j).
inline Eigen::VectorXd sample_gaussian_vector(double sigma2, int m, int k,
                                              std::uint64_t seed) {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(m);
  if (sigma2 <= 0.0) return q;
  const double sigma = std::sqrt(sigma2);
  for (int j = 0; j < m; ++j) {
    q[j] = sigma * counter_normal(seed, static_cast<std::uint64_t>(k),
                                  static_cast<std::uint64_t>(j));
  }
  return q;
}

inline Eigen::VectorXd sample_noise(const DpParams& params, int m, int k,
                                    std::uint64_t seed) {
  if (k < 1 || k > params.iterations) {
    throw std::invalid_argument("noise iteration index out of range");
  }
  return sample_gaussian_vector(params.sigma2, m, k, seed);
}

// Accounting summary for a full run. dp_epsilon reproduces the requested
// epsilon exactly: K*eps_prime + log(1/delta)/(alpha-1) inverts the split.
struct PrivacyLedger {
  double epsilon = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double eps_prime = 0.0;
  double sigma2 = 0.0;
  double sensitivity = 0.0;      // l2 sensitivity of the consensus average
  int iterations = 0;
  double rdp_per_iteration = 0.0;
  double rdp_composed = 0.0;
  double dp_epsilon = 0.0;       // converted back from composed RDP
  double dp_delta = 0.0;
  double m_sigma2 = 0.0;         // expected per-iteration noise magnitude
  bool m_sigma2_warning = false; // tail bounds need m*sigma2 < 1
};

inline PrivacyLedger privacy_ledger(const DpParams& params, int m) {
  PrivacyLedger ledger;
  ledger.epsilon = params.epsilon;
  ledger.delta = params.delta;
  ledger.alpha = params.alpha;
  ledger.eps_prime = params.eps_prime;
  ledger.sigma2 = params.sigma2;
  ledger.sensitivity = std::sqrt(2.0) / static_cast<double>(params.n);
  ledger.iterations = params.iterations;
  ledger.rdp_per_iteration = params.eps_prime;
  ledger.rdp_composed = params.iterations * params.eps_prime;
  ledger.dp_epsilon = ledger.rdp_composed +
                      std::log(1.0 / params.delta) / (params.alpha - 1.0);
  ledger.dp_delta = params.delta;
  ledger.m_sigma2 = noise_magnitude(params, m);
  ledger.m_sigma2_warning = ledger.m_sigma2 >= 1.0;
  return ledger;
}

}  // namespace ppga

#endif  // PPGA_PRIVACY_HPP_
