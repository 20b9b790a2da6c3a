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

#ifndef PPGA_TESTS_TESTING_FIXTURES_HPP_
#define PPGA_TESTS_TESTING_FIXTURES_HPP_

#include <Eigen/Core>
#include <vector>

#include "ppga/model.hpp"
#include "ppga/rng.hpp"

namespace ppga::testing {

// Two voters, two unit-cap projects, each voter approving their own project.
// The Nash-welfare optimum splits the budget: z* = (0.5, 0.5).
inline Instance make_n2m2() {
  Eigen::VectorXd sizes(2);
  sizes << 1.0, 1.0;
  return Instance(sizes, 1.0, {{0}, {1}});
}

// Two equal blocs of 500 voters approving projects 0 and 1; project 2 has no
// support. Caps are 0.6 each, so the optimum is (0.5, 0.5, 0).
inline Instance make_two_bloc(int bloc = 500) {
  Eigen::VectorXd sizes(3);
  sizes << 0.6, 0.6, 0.6;
  std::vector<std::vector<int>> approvals;
  approvals.reserve(static_cast<size_t>(2 * bloc));
  for (int i = 0; i < bloc; ++i) approvals.push_back({0});
  for (int i = 0; i < bloc; ++i) approvals.push_back({1});
  return Instance(sizes, 1.0, std::move(approvals));
}

// One voter approving everything; any allocation on the sum cap is optimal.
inline Instance make_single_voter() {
  Eigen::VectorXd sizes(3);
  sizes << 2.0, 2.0, 2.0;
  return Instance(sizes, 1.0, {{0, 1, 2}});
}

// Small mixed election: varied caps, overlapping approvals, one voter with an
// empty ballot.
inline Instance make_mixed(int n_extra = 12) {
  Eigen::VectorXd sizes(4);
  sizes << 50.0, 120.0, 200.0, 400.0;
  const double budget = 400.0;
  std::vector<std::vector<int>> approvals = {
      {0, 1}, {1, 2}, {0, 3}, {2}, {},
  };
  for (int i = 0; i < n_extra; ++i) {
    std::vector<int> set;
    for (int j = 0; j < 4; ++j) {
      if (counter_uniform(17, 0, static_cast<std::uint64_t>(i) * 4 + j, 0) < 0.4) {
        set.push_back(j);
      }
    }
    if (set.empty()) set.push_back(i % 4);
    approvals.push_back(set);
  }
  return Instance(sizes, budget, std::move(approvals));
}

// Random point with coordinates in [lo, hi).
inline Eigen::VectorXd random_vector(int m, std::uint64_t seed,
                                     std::uint64_t index, double lo,
                                     double hi) {
  Eigen::VectorXd v(m);
  for (int j = 0; j < m; ++j) {
    v[j] = lo + (hi - lo) * counter_uniform(seed, index, j, 7);
  }
  return v;
}

}  // namespace ppga::testing

#endif  // PPGA_TESTS_TESTING_FIXTURES_HPP_
