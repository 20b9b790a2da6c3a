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

#ifndef PPGA_GEOMETRY_HPP_
#define PPGA_GEOMETRY_HPP_

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ppga/model.hpp"

namespace ppga {

// Euclidean projection onto the capped simplex, with the KKT certificate:
// point_j = clamp(v_j - shift, 0, b_j), shift >= 0, and shift > 0 only when
// the sum constraint binds.
struct ProjectionResult {
  Eigen::VectorXd point;
  std::vector<int> active_upper;  // coordinates clamped at b_j
  std::vector<int> active_lower;  // coordinates clamped at 0
  bool simplex_active = false;    // whether sum(point) == total_cap binds
  double shift = 0.0;             // optimal dual scalar for the sum constraint
};

// Exact projection in O(m log m): dual-breakpoint search over the scalar
// shift tau, solving sum_j clamp(v_j - tau, 0, b_j) = total_cap on the
// segment where the piecewise-linear sum crosses the cap.
inline ProjectionResult project(const Eigen::Ref<const Eigen::VectorXd>& v,
                                const FeasibleRegion& region) {
  if (!v.allFinite()) throw std::invalid_argument("project: non-finite input");
  const Eigen::Index m = v.size();
  if (m != region.bounds.size()) {
    throw std::invalid_argument("project: dimension mismatch");
  }
  const Eigen::VectorXd& b = region.bounds;
  const double cap = region.total_cap;

  ProjectionResult result;
  result.point = v.cwiseMax(0.0).cwiseMin(b);
  const double clamped_sum = result.point.sum();
  if (clamped_sum <= cap) {
    result.shift = 0.0;
    result.simplex_active = std::abs(clamped_sum - cap) <= 1e-12;
  } else {
    // Sum constraint binds. At shift tau, coordinate j contributes b_j while
    // tau <= v_j - b_j, then v_j - tau, then 0 once tau >= v_j. Sweep the
    // positive breakpoints in ascending order keeping the segment-linear sum
    // g(tau) = capped_sum + interior_sum - n_interior * tau.
    struct Breakpoint {
      double tau;
      int coord;
      bool leaves_cap;  // cap -> interior transition (else interior -> zero)
    };
    std::vector<Breakpoint> breaks;
    breaks.reserve(static_cast<size_t>(2 * m));
    double capped_sum = 0.0;
    double interior_sum = 0.0;
    Eigen::Index n_interior = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (v[j] <= 0.0) continue;  // zero for every tau >= 0
      if (v[j] - b[j] > 0.0) {
        capped_sum += b[j];
        breaks.push_back({v[j] - b[j], static_cast<int>(j), true});
      } else {
        interior_sum += v[j];
        ++n_interior;
      }
      breaks.push_back({v[j], static_cast<int>(j), false});
    }
    std::sort(breaks.begin(), breaks.end(),
              [](const Breakpoint& a, const Breakpoint& c) {
                if (a.tau != c.tau) return a.tau < c.tau;
                if (a.leaves_cap != c.leaves_cap) return a.leaves_cap;
                return a.coord < c.coord;
              });

    double tau = -1.0;
    double tau_lo = 0.0;
    size_t i = 0;
    while (tau < 0.0) {
      const double tau_hi =
          i < breaks.size() ? breaks[i].tau
                            : std::numeric_limits<double>::infinity();
      if (n_interior > 0) {
        const double candidate =
            (capped_sum + interior_sum - cap) / static_cast<double>(n_interior);
        if (candidate >= tau_lo - 1e-15 && candidate <= tau_hi + 1e-15) {
          tau = std::max(candidate, 0.0);
          break;
        }
      } else if (std::abs(capped_sum - cap) <= 1e-15) {
        tau = tau_lo;
        break;
      }
      if (i >= breaks.size()) {
        // g decreases continuously from clamped_sum > cap to 0, so the
        // crossing is always found; guard against roundoff at the last
        // breakpoint.
        tau = tau_lo;
        break;
      }
      // Advance past all breakpoints sharing this tau.
      const double t = breaks[i].tau;
      while (i < breaks.size() && breaks[i].tau == t) {
        const Breakpoint& bp = breaks[i];
        if (bp.leaves_cap) {
          capped_sum -= b[bp.coord];
          interior_sum += v[bp.coord];
          ++n_interior;
        } else {
          interior_sum -= v[bp.coord];
          --n_interior;
        }
        ++i;
      }
      tau_lo = t;
    }

    result.shift = tau;
    result.simplex_active = true;
    result.point = (v.array() - tau).cwiseMax(0.0).cwiseMin(b.array());
  }

  for (Eigen::Index j = 0; j < m; ++j) {
    if (v[j] - result.shift >= b[j]) {
      result.active_upper.push_back(static_cast<int>(j));
    } else if (v[j] - result.shift <= 0.0) {
      result.active_lower.push_back(static_cast<int>(j));
    }
  }
  return result;
}

struct LinearMax {
  Eigen::VectorXd point;  // a maximizing vertex
  double value = 0.0;
};

// Exact maximizer of w'z over the capped simplex: fill coordinates in
// descending weight order (ties by lower index) until the total cap is
// exhausted; nonpositive weights receive zero.
inline LinearMax max_linear(const Eigen::Ref<const Eigen::VectorXd>& w,
                            const FeasibleRegion& region) {
  if (!w.allFinite()) throw std::invalid_argument("max_linear: non-finite input");
  const Eigen::Index m = w.size();
  if (m != region.bounds.size()) {
    throw std::invalid_argument("max_linear: dimension mismatch");
  }
  std::vector<int> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int c) {
    if (w[a] != w[c]) return w[a] > w[c];
    return a < c;
  });

  LinearMax result;
  result.point = Eigen::VectorXd::Zero(m);
  double remaining = region.total_cap;
  for (int j : order) {
    if (w[j] <= 0.0 || remaining <= 0.0) break;
    const double take = std::min(region.bounds[j], remaining);
    result.point[j] = take;
    result.value += w[j] * take;
    remaining -= take;
  }
  return result;
}

}  // namespace ppga

#endif  // PPGA_GEOMETRY_HPP_
