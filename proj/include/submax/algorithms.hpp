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

#ifndef SUBMAX_ALGORITHMS_HPP_
#define SUBMAX_ALGORITHMS_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "submax/ground.hpp"
#include "submax/multilinear.hpp"
#include "submax/objectives.hpp"

namespace submax {

enum class GradientMode { kExact, kMonteCarlo };

/// Shared configuration for the ascent algorithms.
struct RunConfig {
  int horizon = 100;  // number of ascent steps T
  double tau = 0.5;   // activation threshold in (0,1]; ignored by plain CG
  SampleConfig sample;
  GradientMode gradient_mode = GradientMode::kExact;
};

/// Per-partition active sets plus the server's cached element union.
/// Active sets only ever grow; every nonzero membership coordinate stays
/// inside the union for the whole run.
struct ActiveState {
  std::vector<std::vector<int>> active;  // sorted per partition
  std::vector<int> embedding_set;        // sorted union of all active sets

  /// Inserts the element into its partition's active set and the union.
  void activate(int partition, int element);
  int total_active() const;
};

/// One feature payload sent to the server: the first activation of an
/// element. At most one event per element per run.
struct UploadEvent {
  int t = 0;
  int agent = 0;
  int element = 0;
  bool operator==(const UploadEvent&) const = default;
};

/// State recorded at the end of ascent step t.
struct IterationRecord {
  int t = 0;
  double objective = 0.0;  // exact extension value, or rounded value when
                           // the ground set is too large to enumerate
  int cumulative_uploads = 0;
  int total_active = 0;
  std::vector<double> eta_before;  // progress ratio per partition, measured
                                   // before any expansion; empty for CG
  std::vector<double> eta_after;   // ratio after expansions settled
  std::vector<double> gradient;    // the gradient vector consumed this step
  std::vector<double> x_after;

  bool operator==(const IterationRecord&) const = default;
};

/// Complete record of one algorithm run; all downstream accounting and the
/// CSV emission read from this.
struct RunTrace {
  std::string algorithm;
  int n = 0;
  std::vector<IndexRange> partitions;
  std::vector<int> budgets;
  int horizon = 0;
  double tau = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  GradientMode gradient_mode = GradientMode::kExact;

  std::vector<IterationRecord> iterations;
  std::vector<UploadEvent> uploads;
  std::vector<std::vector<int>> active_final;  // per partition
  MembershipVector x_final;
  FeasibleSet rounded_set;
  double rounded_value = 0.0;
  double final_objective = 0.0;
  // Iterations in which some partition's best gradient entry was <= 0, a
  // possibility only under sampling noise; kept for diagnostics.
  int nonpositive_gradient_events = 0;

  bool operator==(const RunTrace&) const = default;
};

/// One step of the discrete greedy baseline.
struct GreedyStep {
  int element = 0;
  double value_after = 0.0;
};

/// Discrete greedy: repeatedly add the feasible element with the largest
/// marginal gain (ties to the lowest index) until no gain is positive or
/// every budget is full. Optionally reports the per-step picks.
FeasibleSet sequential_greedy(const SubmodularOracle& f,
                              const PartitionMatroid& m,
                              std::vector<GreedyStep>* steps = nullptr);

/// Conditional-gradient ascent over the matroid polytope: at each of T
/// steps, raise the per-partition top-budget gradient coordinates by 1/T.
/// Uploads are logged on the first activation of each coordinate.
RunTrace continuous_greedy(const SubmodularOracle& f,
                           const PartitionMatroid& m, const RunConfig& cfg);

/// Thresholded variant for unit budgets: gradient evaluations are gated by
/// per-partition active sets, expanded only when the best active entry
/// fails to capture a tau fraction of the best entry in the partition.
/// Delegates to the general-budget routine when some budget exceeds 1.
RunTrace atcg(const SubmodularOracle& f, const PartitionMatroid& m,
              const RunConfig& cfg);

/// General-budget thresholded variant: expansion is an inner loop that adds
/// the best inactive element until the active top-k sum reaches a tau
/// fraction of the partition top-k sum (and at least k elements are
/// active). With unit budgets the trace matches atcg exactly.
RunTrace atcg_general(const SubmodularOracle& f, const PartitionMatroid& m,
                      const RunConfig& cfg);

/// Quality of an active set: best active gradient entry over best partition
/// entry, with a small denominator guard; 0 for an empty active set.
double progress_ratio(std::span<const double> g, std::span<const int> active,
                      IndexRange partition);

/// Generalized ratio for budget k: sum of the k largest entries within the
/// active set over the sum of the k largest within the partition (same
/// denominator guard). Reduces to progress_ratio at k = 1.
double progress_ratio_kappa(std::span<const double> g,
                            std::span<const int> active, IndexRange partition,
                            int budget);

/// Per partition, the budget-many largest strictly positive coordinates of
/// x (ties to the lowest index). Throws PreconditionError when x is outside
/// the polytope.
FeasibleSet round_topk(const MembershipVector& x, const PartitionMatroid& m);

/// Exhaustive search over all feasible sets. For a monotone submodular
/// objective the returned value also serves as the fractional optimum of
/// the extension over the polytope. Throws CapacityError when the feasible
/// family exceeds ~1e6 sets.
std::pair<FeasibleSet, double> brute_force_optimum(const SubmodularOracle& f,
                                                   const PartitionMatroid& m);

}  // namespace submax

#endif  // SUBMAX_ALGORITHMS_HPP_
