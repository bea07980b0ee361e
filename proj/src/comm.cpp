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

#include "submax/comm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace submax {
namespace {

// Counterfactual unrestricted-oracle pick: the budget-many largest gradient
// entries of one partition, ties to the lowest index.
std::vector<int> top_budget_picks(const std::vector<double>& g,
                                  IndexRange part, int budget) {
  std::vector<int> indices(part.size());
  for (int j = part.begin; j < part.end; ++j) indices[j - part.begin] = j;
  std::sort(indices.begin(), indices.end(), [&](int a, int b) {
    if (g[a] != g[b]) return g[a] > g[b];
    return a < b;
  });
  if (static_cast<int>(indices.size()) > budget) indices.resize(budget);
  return indices;
}

bool is_thresholded(const RunTrace& trace) {
  return trace.algorithm == "atcg" || trace.algorithm == "atcg_general";
}

}  // namespace

int CommLedger::embeddings_through(int t) const {
  if (cumulative_embeddings.empty() || t < 0) return 0;
  t = std::min(t, static_cast<int>(cumulative_embeddings.size()) - 1);
  return cumulative_embeddings[t];
}

int CommLedger::total_embeddings() const {
  return cumulative_embeddings.empty() ? 0 : cumulative_embeddings.back();
}

CommLedger ledger_from_trace(const RunTrace& trace) {
  CommLedger ledger;
  if (trace.iterations.empty()) return ledger;

  const int horizon = static_cast<int>(trace.iterations.size());
  std::vector<char> uploaded(trace.n, 0);
  for (const UploadEvent& up : trace.uploads) {
    if (up.element < 0 || up.element >= trace.n || uploaded[up.element]) {
      throw FormatError("element uploaded more than once");
    }
    uploaded[up.element] = 1;
  }
  std::size_t upload_cursor = 0;
  int previous = 0;
  for (int t = 0; t < horizon; ++t) {
    const IterationRecord& rec = trace.iterations[t];
    if (rec.t != t) {
      throw FormatError("trace iterations are not consecutive");
    }
    int updated_coords = 0;
    for (int b : trace.budgets) updated_coords += b;

    CommEvent broadcast;
    broadcast.t = t;
    broadcast.kind = CommEventKind::kBroadcast;
    broadcast.agent = -1;
    broadcast.payload_units = updated_coords;
    ledger.events.push_back(broadcast);

    while (upload_cursor < trace.uploads.size() &&
           trace.uploads[upload_cursor].t == t) {
      const UploadEvent& up = trace.uploads[upload_cursor];
      CommEvent event;
      event.t = t;
      event.kind = CommEventKind::kEmbeddingUpload;
      event.agent = up.agent;
      event.element = up.element;
      event.payload_units = 1;
      ledger.events.push_back(event);
      ++upload_cursor;
      if (t == 0) ++ledger.initial_batch;
    }

    for (std::size_t i = 0; i < trace.budgets.size(); ++i) {
      CommEvent event;
      event.t = t;
      event.kind = CommEventKind::kXUpload;
      event.agent = static_cast<int>(i);
      event.payload_units = trace.budgets[i];
      ledger.events.push_back(event);
    }

    if (rec.cumulative_uploads < previous) {
      throw FormatError("cumulative upload counter decreases");
    }
    previous = rec.cumulative_uploads;
    ledger.cumulative_embeddings.push_back(rec.cumulative_uploads);
  }
  if (upload_cursor != trace.uploads.size()) {
    throw FormatError("upload events extend past the last iteration");
  }
  if (ledger.cumulative_embeddings.back() !=
      static_cast<int>(trace.uploads.size())) {
    throw FormatError("upload counter does not match the event list");
  }

  bool has_gradients =
      std::all_of(trace.iterations.begin(), trace.iterations.end(),
                  [&](const IterationRecord& rec) {
                    return static_cast<int>(rec.gradient.size()) == trace.n;
                  });
  if (has_gradients) {
    const int parts = static_cast<int>(trace.partitions.size());
    ledger.counterfactual_cg_union.assign(parts, {});
    for (const IterationRecord& rec : trace.iterations) {
      for (int i = 0; i < parts; ++i) {
        auto& bucket = ledger.counterfactual_cg_union[i];
        for (int j : top_budget_picks(rec.gradient, trace.partitions[i],
                                      trace.budgets[i])) {
          auto it = std::lower_bound(bucket.begin(), bucket.end(), j);
          if (it == bucket.end() || *it != j) bucket.insert(it, j);
        }
      }
    }
  }
  return ledger;
}

bool dominance_check(const RunTrace& trace) {
  if (!is_thresholded(trace)) {
    throw CapabilityError(
        "dominance check applies to thresholded runs; got algorithm '" +
        trace.algorithm + "'");
  }
  const int parts = static_cast<int>(trace.partitions.size());
  std::vector<std::vector<int>> cg_union(parts);
  for (const IterationRecord& rec : trace.iterations) {
    if (static_cast<int>(rec.gradient.size()) != trace.n) {
      throw CapabilityError("trace lacks per-iteration gradient snapshots");
    }
    int cg_count = 0;
    for (int i = 0; i < parts; ++i) {
      for (int j :
           top_budget_picks(rec.gradient, trace.partitions[i],
                            trace.budgets[i])) {
        auto it = std::lower_bound(cg_union[i].begin(), cg_union[i].end(), j);
        if (it == cg_union[i].end() || *it != j) cg_union[i].insert(it, j);
      }
      cg_count += static_cast<int>(cg_union[i].size());
    }
    if (rec.cumulative_uploads > cg_count) return false;
  }
  for (int i = 0; i < parts; ++i) {
    for (int j : trace.active_final[i]) {
      if (!std::binary_search(cg_union[i].begin(), cg_union[i].end(), j)) {
        return false;
      }
    }
  }
  return true;
}

double gaussian_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double expected_comm_bound(const EtaStats& stats, double tau, int horizon,
                           int agents) {
  if (horizon <= 1) {
    throw ParameterError("the bound needs a horizon greater than 1");
  }
  if (agents < 1 || static_cast<int>(stats.eta_bar.size()) != agents ||
      static_cast<int>(stats.sigma.size()) != agents) {
    throw ParameterError("stats shape does not match the agent count");
  }
  for (double s : stats.sigma) {
    if (!(s > 0.0)) throw ParameterError("sigma entries must be positive");
  }
  for (const auto& row : stats.eta_bar) {
    if (static_cast<int>(row.size()) < horizon) {
      throw ParameterError("stats do not cover the requested horizon");
    }
  }
  double bound = static_cast<double>(agents);
  for (int t = 1; t < horizon; ++t) {
    for (int i = 0; i < agents; ++i) {
      bound += gaussian_cdf((tau - stats.eta_bar[i][t]) / stats.sigma[i]);
    }
  }
  return bound;
}

EtaStats eta_stats_from_traces(const std::vector<RunTrace>& traces) {
  if (traces.size() < 2) {
    throw ParameterError("ratio statistics need at least two traces");
  }
  const RunTrace& first = traces.front();
  if (!is_thresholded(first)) {
    throw ParameterError("ratio statistics apply to thresholded runs");
  }
  for (const RunTrace& trace : traces) {
    bool same = trace.algorithm == first.algorithm && trace.n == first.n &&
                trace.partitions == first.partitions &&
                trace.budgets == first.budgets &&
                trace.horizon == first.horizon && trace.tau == first.tau &&
                trace.samples == first.samples &&
                trace.gradient_mode == first.gradient_mode;
    if (!same) {
      throw ParameterError("traces must share a configuration (seed aside)");
    }
    if (static_cast<int>(trace.iterations.size()) != first.horizon) {
      throw ParameterError("trace is incomplete");
    }
  }

  const int parts = static_cast<int>(first.partitions.size());
  const int horizon = first.horizon;
  const int runs = static_cast<int>(traces.size());

  EtaStats stats;
  stats.eta_bar.assign(parts, std::vector<double>(horizon, 0.0));
  stats.sigma.assign(parts, 0.0);
  for (int i = 0; i < parts; ++i) {
    for (int t = 0; t < horizon; ++t) {
      double mean = 0.0;
      for (const RunTrace& trace : traces) {
        mean += trace.iterations[t].eta_before[i];
      }
      mean /= runs;
      stats.eta_bar[i][t] = mean;
      for (const RunTrace& trace : traces) {
        double d = trace.iterations[t].eta_before[i] - mean;
        stats.sigma[i] += d * d;
      }
    }
    stats.sigma[i] = std::sqrt(stats.sigma[i] /
                               (static_cast<double>(horizon) * (runs - 1)));
    if (stats.sigma[i] == 0.0) {
      stats.zero_variance_partitions.push_back(i);
      stats.sigma[i] = 1e-9;
    }
  }
  return stats;
}

}  // namespace submax
