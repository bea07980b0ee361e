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

#ifndef SUBMAX_COMM_HPP_
#define SUBMAX_COMM_HPP_

#include <optional>
#include <vector>

#include "submax/algorithms.hpp"

namespace submax {

enum class CommEventKind { kEmbeddingUpload, kXUpload, kBroadcast };

/// One message in the server-assisted protocol. Embedding payloads count one
/// unit each; a decision-vector upload counts its updated coordinates.
struct CommEvent {
  int t = 0;
  CommEventKind kind = CommEventKind::kEmbeddingUpload;
  int agent = -1;  // -1 for the server's broadcast
  std::optional<int> element;
  int payload_units = 1;
};

/// Ordered message log reconstructed from a run trace, with the cumulative
/// embedding counter that serves as the communication metric.
struct CommLedger {
  std::vector<CommEvent> events;
  // cumulative distinct embeddings through the end of step t
  std::vector<int> cumulative_embeddings;
  // uploads that happened at step 0 (the initial activation batch), kept
  // separate so counting conventions that exclude it remain reportable
  int initial_batch = 0;
  // per partition, the distinct unrestricted-oracle picks along the
  // trajectory; empty when the trace carries no gradient snapshots
  std::vector<std::vector<int>> counterfactual_cg_union;

  int embeddings_through(int t) const;
  int total_embeddings() const;
};

/// Rebuilds the message log from a trace. Throws FormatError when the trace
/// has no iterations or inconsistent counters.
CommLedger ledger_from_trace(const RunTrace& trace);

/// Verifies, per prefix, that the thresholded run never uploaded more than
/// the unrestricted oracle would have on the same gradients: replays the
/// recorded gradient of every step, forms the counterfactual top-budget
/// picks, and checks both the prefix counts and that the final active sets
/// are contained in the counterfactual pick union.
/// Throws CapabilityError when the trace lacks gradient snapshots or was
/// not produced by a thresholded run.
bool dominance_check(const RunTrace& trace);

/// Standard normal CDF.
double gaussian_cdf(double z);

/// Nominal per-(partition, step) progress ratios and per-partition ratio
/// variability estimated from repeated runs.
struct EtaStats {
  std::vector<std::vector<double>> eta_bar;  // [partition][t]
  std::vector<double> sigma;                 // > 0, floored when degenerate
  std::vector<int> zero_variance_partitions;
};

/// Gaussian-tail estimate of the expected embedding uploads of a
/// thresholded run: the initial one-per-partition batch plus, for every
/// later step, the probability that the measured ratio dips below the
/// threshold. Callers compare it against the empirical unrestricted-oracle
/// count and take the minimum. Throws ParameterError when horizon <= 1 or a
/// sigma is not positive.
double expected_comm_bound(const EtaStats& stats, double tau, int horizon,
                           int agents);

/// Pools two or more traces that differ only in seed into per-(partition,
/// step) ratio means and a per-partition standard deviation (floored at
/// 1e-9 when the runs are deterministic). Throws ParameterError on fewer
/// than two traces or mismatched configurations.
EtaStats eta_stats_from_traces(const std::vector<RunTrace>& traces);

}  // namespace submax

#endif  // SUBMAX_COMM_HPP_
