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

#ifndef PPGA_MODEL_HPP_
#define PPGA_MODEL_HPP_

#include <Eigen/Core>
#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ppga {

// An election over m divisible projects and n voters. Voter utilities are
// binary over approval sets: U_i(z) = sum of z_j over i's approved projects.
// Immutable after construction; safe to share across threads.
struct Instance {
  int n = 0;                                 // voters
  int m = 0;                                 // projects
  Eigen::VectorXd sizes;                     // per-project cost, length m, > 0
  double capacity = 0.0;                     // total budget, > 0
  std::vector<std::vector<int>> approvals;   // per-voter sorted unique indices
  std::vector<std::string> project_labels;   // optional, size m or empty
  std::vector<std::string> voter_labels;     // optional, size n or empty

  Instance(Eigen::VectorXd project_sizes, double total_capacity,
           std::vector<std::vector<int>> voter_approvals,
           std::vector<std::string> projects = {},
           std::vector<std::string> voters = {})
      : m(static_cast<int>(project_sizes.size())),
        sizes(std::move(project_sizes)),
        capacity(total_capacity),
        approvals(std::move(voter_approvals)),
        project_labels(std::move(projects)),
        voter_labels(std::move(voters)) {
    n = static_cast<int>(approvals.size());
    if (n < 1) throw std::invalid_argument("instance needs at least one voter");
    if (m < 1) throw std::invalid_argument("instance needs at least one project");
    if (!(capacity > 0.0)) throw std::invalid_argument("capacity must be positive");
    for (int j = 0; j < m; ++j) {
      if (!(sizes[j] > 0.0)) {
        throw std::invalid_argument("project size must be positive (project " +
                                    std::to_string(j) + ")");
      }
    }
    if (!project_labels.empty() && static_cast<int>(project_labels.size()) != m) {
      throw std::invalid_argument("project label count mismatch");
    }
    if (!voter_labels.empty() && static_cast<int>(voter_labels.size()) != n) {
      throw std::invalid_argument("voter label count mismatch");
    }
    for (auto& set : approvals) {
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      for (int j : set) {
        if (j < 0 || j >= m) {
          throw std::invalid_argument("approval index out of range: " +
                                      std::to_string(j));
        }
      }
    }
  }
};

// The capped simplex {z : 0 <= z_j <= b_j, sum z_j <= total_cap} with
// b_j = min(1, s_j / c) and total_cap fixed at 1.
struct FeasibleRegion {
  Eigen::VectorXd bounds;
  double total_cap = 1.0;

  int dim() const { return static_cast<int>(bounds.size()); }

  bool contains(const Eigen::Ref<const Eigen::VectorXd>& z,
                double tol = 1e-9) const {
    if (z.size() != bounds.size()) return false;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      if (z[j] < -tol || z[j] > bounds[j] + tol) return false;
    }
    return z.sum() <= total_cap + tol;
  }
};

inline FeasibleRegion feasible_region(const Instance& instance) {
  FeasibleRegion region;
  region.bounds = (instance.sizes / instance.capacity).cwiseMin(1.0);
  region.total_cap = 1.0;
  return region;
}

// A point known to lie in the feasible region (raw solver iterates that may
// leave it are passed around as plain vectors).
struct Allocation {
  Eigen::VectorXd z;
};

inline double utility(const Instance& instance, int voter,
                      const Eigen::Ref<const Eigen::VectorXd>& z) {
  if (voter < 0 || voter >= instance.n) {
    throw std::out_of_range("voter index out of range: " + std::to_string(voter));
  }
  double total = 0.0;
  for (int j : instance.approvals[voter]) total += z[j];
  return total;
}

// Exact optimum of max_{z in Z} U_i(z): fill approved coordinates to their
// caps until the total cap binds.
inline double max_utility(const Instance& instance, int voter) {
  if (voter < 0 || voter >= instance.n) {
    throw std::out_of_range("voter index out of range: " + std::to_string(voter));
  }
  double cap_sum = 0.0;
  for (int j : instance.approvals[voter]) {
    cap_sum += std::min(1.0, instance.sizes[j] / instance.capacity);
  }
  return std::min(1.0, cap_sum);
}

}  // namespace ppga

#endif  // PPGA_MODEL_HPP_
