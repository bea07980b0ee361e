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

#ifndef SUBMAX_MULTILINEAR_HPP_
#define SUBMAX_MULTILINEAR_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "submax/ground.hpp"
#include "submax/objectives.hpp"

namespace submax {

/// Monte Carlo configuration: sample count K and the base seed from which
/// per-sample streams are derived.
struct SampleConfig {
  int samples = 100;
  std::uint64_t seed = 0;
};

/// Gradient of the multilinear extension, exact or estimated.
/// Coordinates that were not requested are left at zero.
struct GradientEstimate {
  std::vector<double> values;
  int samples_used = 0;   // 0 means exact computation
  std::uint64_t seed = 0; // base seed of the sample streams (0 when exact)
};

/// Largest enumeration domain for the exact paths (2^20 subsets).
inline constexpr int kEnumerationCap = 20;

/// Exact multilinear extension value: the expectation of f over the random
/// set that keeps element j independently with probability x_j, computed by
/// full enumeration. Throws CapacityError for n > kEnumerationCap; use
/// mc paths beyond that.
double exact_value(const MembershipVector& x, const SubmodularOracle& f);

/// Exact gradient entry j: E[f(R u {j}) - f(R \ {j})] with R enumerated
/// over the remaining coordinates. When `support` is given, R is enumerated
/// only over support; this is lossless when every element outside support
/// has x exactly 0 (enforced, PreconditionError otherwise). All n entries
/// are produced either way. Throws CapacityError when the enumeration
/// domain exceeds kEnumerationCap elements.
GradientEstimate exact_gradient(
    const MembershipVector& x, const SubmodularOracle& f,
    const std::optional<std::vector<int>>& support = std::nullopt);

/// Monte Carlo gradient. Sample s draws R(x) from a stream derived from
/// (cfg.seed, s), so estimates are reproducible under any evaluation order
/// and identical for every superset of requested coordinates.
///
/// `support` restricts the sampling domain of R (the server's cached
/// element set); x must be zero outside it. `coords` selects which entries
/// to estimate (default: all). Throws ParameterError when cfg.samples < 1.
GradientEstimate mc_gradient(
    const MembershipVector& x, const SubmodularOracle& f,
    const SampleConfig& cfg,
    const std::optional<std::vector<int>>& support = std::nullopt,
    const std::optional<std::vector<int>>& coords = std::nullopt);

}  // namespace submax

#endif  // SUBMAX_MULTILINEAR_HPP_
