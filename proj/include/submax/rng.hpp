// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBMAX_RNG_HPP_
#define SUBMAX_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace submax {

// Purpose ids for deriving independent streams from one experiment seed.
inline constexpr std::uint64_t kStreamDataGen = 0;
inline constexpr std::uint64_t kStreamMcSamples = 1;
inline constexpr std::uint64_t kStreamTieAudit = 2;

/// SplitMix64 step; used to mix seeds, not as the working generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Derives a child seed from (seed, id). Composable: derive(derive(s,a),b).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t id) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ (id * 0xD6E8FEB86659FD93ULL);
  return splitmix64(state);
}

/// Generator for one logical stream. Counter-based derivation makes draws
/// independent of evaluation order across streams.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t index = 0) {
  return std::mt19937_64(derive_seed(derive_seed(seed, stream), index));
}

/// Uniform draw in [0,1) with 53 random bits. std::uniform_real_distribution
/// is implementation-defined, so we map bits explicitly.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (deterministic given the generator state).
inline double standard_normal(std::mt19937_64& gen) {
  double u1 = uniform01(gen);
  double u2 = uniform01(gen);
  // Guard the log singularity at u1 == 0.
  while (u1 <= 0.0) u1 = uniform01(gen);
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace submax

#endif  // SUBMAX_RNG_HPP_
