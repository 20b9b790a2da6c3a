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

#ifndef PPGA_PARALLEL_HPP_
#define PPGA_PARALLEL_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <thread>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ppga {

// Work is split into fixed-size chunks whose boundaries do not depend on the
// thread count; reductions combine per-chunk results in ascending chunk
// order, so results are bit-stable for any number of threads.
constexpr std::int64_t kParallelChunk = 512;

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

template <typename Fn>
void parallel_chunks(std::int64_t count, int threads, Fn&& fn) {
  const std::int64_t n_chunks = (count + kParallelChunk - 1) / kParallelChunk;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
#endif
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    const std::int64_t begin = c * kParallelChunk;
    const std::int64_t end = std::min(begin + kParallelChunk, count);
    fn(c, begin, end);
  }
#ifndef _OPENMP
  (void)threads;
#endif
}

// Deterministic sum over columns of an m-by-n matrix.
inline Eigen::VectorXd sum_columns(const Eigen::MatrixXd& x, int threads) {
  const std::int64_t n = x.cols();
  const std::int64_t n_chunks = (n + kParallelChunk - 1) / kParallelChunk;
  Eigen::MatrixXd partial = Eigen::MatrixXd::Zero(x.rows(), n_chunks);
  parallel_chunks(n, threads, [&](std::int64_t c, std::int64_t b, std::int64_t e) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(x.rows());
    for (std::int64_t i = b; i < e; ++i) acc += x.col(i);
    partial.col(c) = acc;
  });
  Eigen::VectorXd total = Eigen::VectorXd::Zero(x.rows());
  for (std::int64_t c = 0; c < n_chunks; ++c) total += partial.col(c);
  return total;
}

// Deterministic sum of a per-index scalar.
template <typename Fn>
double sum_indexed(std::int64_t count, int threads, Fn&& per_index) {
  const std::int64_t n_chunks = (count + kParallelChunk - 1) / kParallelChunk;
  std::vector<double> partial(static_cast<size_t>(n_chunks), 0.0);
  parallel_chunks(count, threads,
                  [&](std::int64_t c, std::int64_t b, std::int64_t e) {
                    double acc = 0.0;
                    for (std::int64_t i = b; i < e; ++i) acc += per_index(i);
                    partial[static_cast<size_t>(c)] = acc;
                  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace ppga

#endif  // PPGA_PARALLEL_HPP_
