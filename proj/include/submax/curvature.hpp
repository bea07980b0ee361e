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

#ifndef SUBMAX_CURVATURE_HPP_
#define SUBMAX_CURVATURE_HPP_

#include <vector>

#include "submax/ground.hpp"
#include "submax/objectives.hpp"

namespace submax {

/// Curvature summary of an objective over a partitioned ground set.
///
/// Total curvature is 1 minus the worst-case ratio between an element's
/// marginal gain on top of everything else and its singleton value; 0 means
/// additive, 1 means some element is fully redundant. Per-partition values
/// restrict the minimizing element to one block, so each is at most the
/// total. tau_star = 1 - c_total is the smallest threshold that still
/// achieves the best attainable guarantee.
struct CurvatureReport {
  double c_total = 0.0;
  std::vector<double> c_partition;
  double tau_star = 1.0;
  int argmin_element = -1;                // witness of the total curvature
  std::vector<int> partition_argmin;      // witness per partition
  int witness_set_size = 0;               // the minimizing set is all-but-one
  std::vector<int> skipped_elements;      // elements with zero singleton value
};

/// Exact curvature in O(n) oracle calls: by diminishing returns the inner
/// minimum over sets is attained at the full complement, so only the
/// marginals on top of everything-else are needed. Elements whose singleton
/// value is zero are excluded from the minimum and reported.
/// Throws ParameterError when every singleton value is zero.
CurvatureReport total_curvature(const SubmodularOracle& f,
                                const GroundSet& ground);

/// Curvature with the minimizing element restricted to one partition.
double partition_curvature(const SubmodularOracle& f, const GroundSet& ground,
                           int partition);

/// max(tau, 1 - curvature) and the guarantee 1 - exp(-that) it yields.
struct EffectiveRate {
  double tau_eff = 0.0;
  double bound = 0.0;
};

/// Throws ParameterError outside tau in (0,1] or curvature in [0,1].
EffectiveRate effective_rate(double tau, double curvature);

}  // namespace submax

#endif  // SUBMAX_CURVATURE_HPP_
