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

#ifndef PPGA_RNG_HPP_
#define PPGA_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ppga {

// Counter-based random stream: every output is a pure function of
// (seed, stream, index, slot), so samples do not depend on thread count or
// call order. The mixer is the SplitMix64 finalizer applied to a keyed chain.

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t index, std::uint64_t slot) {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (stream + kGolden));
  h = mix64(h ^ (index + kGolden));
  h = mix64(h ^ (slot + kGolden));
  return h;
}

// Uniform on the open interval (0, 1).
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t index, std::uint64_t slot) {
  const std::uint64_t bits = counter_hash(seed, stream, index, slot);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal via Box-Muller on two counter draws.
inline double counter_normal(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t index) {
  const double u1 = counter_uniform(seed, stream, index, 0);
  const double u2 = counter_uniform(seed, stream, index, 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// Uniform integer in [0, bound) using the 128-bit multiply reduction.
inline std::uint64_t counter_below(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t index, std::uint64_t bound) {
  const std::uint64_t bits = counter_hash(seed, stream, index, 0);
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(bits) * bound) >> 64);
}

}  // namespace ppga

#endif  // PPGA_RNG_HPP_
