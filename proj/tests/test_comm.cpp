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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

using namespace submax;

namespace {

RunConfig exact_config(int horizon, double tau) {
  RunConfig cfg;
  cfg.horizon = horizon;
  cfg.tau = tau;
  cfg.gradient_mode = GradientMode::kExact;
  return cfg;
}

EtaStats constant_stats(int agents, int horizon, double eta, double sigma) {
  EtaStats stats;
  stats.eta_bar.assign(agents, std::vector<double>(horizon, eta));
  stats.sigma.assign(agents, sigma);
  return stats;
}

}  // namespace

TEST_CASE("ledger reconstruction") {
  ModularObjective f({3, 1, 2, 1});
  PartitionMatroid m(new_ground({2, 2}), {1, 1});

  SUBCASE("thresholded modular run uploads once per partition") {
    RunTrace trace = atcg(f, m, exact_config(10, 0.3));
    CommLedger ledger = ledger_from_trace(trace);
    CHECK(ledger.total_embeddings() == 2);
    CHECK(ledger.embeddings_through(0) == 2);
    CHECK(ledger.embeddings_through(9) == 2);
    CHECK(ledger.initial_batch == 2);
    // counterfactual picks are recoverable from the recorded gradients
    REQUIRE(ledger.counterfactual_cg_union.size() == 2);
    CHECK(ledger.counterfactual_cg_union[0] == std::vector<int>{0});
    CHECK(ledger.counterfactual_cg_union[1] == std::vector<int>{2});
  }
  SUBCASE("unrestricted modular run uploads the same pair") {
    RunTrace trace = continuous_greedy(f, m, exact_config(10, 0.3));
    CommLedger ledger = ledger_from_trace(trace);
    CHECK(ledger.total_embeddings() == 2);
  }
  SUBCASE("an empty trace yields an empty ledger") {
    RunTrace empty;
    CommLedger ledger = ledger_from_trace(empty);
    CHECK(ledger.events.empty());
    CHECK(ledger.total_embeddings() == 0);
  }
  SUBCASE("event stream carries broadcasts and x uploads each step") {
    RunTrace trace = atcg(f, m, exact_config(3, 0.3));
    CommLedger ledger = ledger_from_trace(trace);
    int broadcasts = 0, x_uploads = 0, embeddings = 0;
    for (const CommEvent& event : ledger.events) {
      switch (event.kind) {
        case CommEventKind::kBroadcast: ++broadcasts; break;
        case CommEventKind::kXUpload: ++x_uploads; break;
        case CommEventKind::kEmbeddingUpload: ++embeddings; break;
      }
    }
    CHECK(broadcasts == 3);
    CHECK(x_uploads == 3 * 2);
    CHECK(embeddings == 2);
  }
  SUBCASE("cumulative counters never decrease") {
    RunTrace trace = atcg(f, m, exact_config(10, 0.3));
    CommLedger ledger = ledger_from_trace(trace);
    for (std::size_t t = 1; t < ledger.cumulative_embeddings.size(); ++t) {
      CHECK(ledger.cumulative_embeddings[t] >=
            ledger.cumulative_embeddings[t - 1]);
    }
  }
  SUBCASE("thresholded counters stay between N and n, and the total equals "
          "the final active mass") {
    FacilityLocation fl = testing::near_far_facility();
    PartitionMatroid pm = testing::near_far_matroid();
    RunConfig cfg = exact_config(20, 0.6);
    cfg.gradient_mode = GradientMode::kMonteCarlo;
    cfg.sample = SampleConfig{30, 3};
    RunTrace trace = atcg(fl, pm, cfg);
    CommLedger ledger = ledger_from_trace(trace);
    for (int t = 1; t < 20; ++t) {
      CHECK(ledger.embeddings_through(t) >= 2);   // one per partition
      CHECK(ledger.embeddings_through(t) <= trace.n);
    }
    int active_total = 0;
    for (const auto& active : trace.active_final) {
      active_total += static_cast<int>(active.size());
    }
    CHECK(ledger.total_embeddings() == active_total);
  }
  SUBCASE("malformed traces are rejected") {
    RunTrace trace = atcg(f, m, exact_config(3, 0.3));
    trace.iterations[1].t = 7;
    CHECK_THROWS_AS(ledger_from_trace(trace), FormatError);
  }
  SUBCASE("an element may be uploaded at most once per run") {
    RunTrace trace = atcg(f, m, exact_config(3, 0.3));
    trace.uploads.push_back(trace.uploads.front());
    CHECK_THROWS_AS(ledger_from_trace(trace), FormatError);
  }
}

TEST_CASE("upload dominance against the unrestricted oracle") {
  FacilityLocation fl = testing::near_far_facility();
  PartitionMatroid m = testing::near_far_matroid();

  SUBCASE("exact runs dominate at every prefix") {
    for (double tau : {0.3, 0.6, 1.0}) {
      RunTrace trace = atcg(fl, m, exact_config(50, tau));
      CHECK(dominance_check(trace));
    }
  }
  SUBCASE("sampled runs dominate across seeds") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      RunConfig cfg = exact_config(30, 0.5);
      cfg.gradient_mode = GradientMode::kMonteCarlo;
      cfg.sample = SampleConfig{50, seed};
      CHECK(dominance_check(atcg(fl, m, cfg)));
    }
  }
  SUBCASE("at threshold one the active sets equal the pick union") {
    RunTrace trace = atcg(fl, m, exact_config(40, 1.0));
    CommLedger ledger = ledger_from_trace(trace);
    REQUIRE(dominance_check(trace));
    CHECK(trace.active_final == ledger.counterfactual_cg_union);
  }
  SUBCASE("general-budget runs dominate too") {
    PartitionMatroid wide(new_ground({2, 2}), {2, 1});
    RunTrace trace = atcg_general(fl, wide, exact_config(30, 0.7));
    CHECK(dominance_check(trace));
  }
  SUBCASE("unrestricted traces are not eligible") {
    RunTrace trace = continuous_greedy(fl, m, exact_config(5, 0.5));
    CHECK_THROWS_AS(dominance_check(trace), CapabilityError);
  }
  SUBCASE("gradient snapshots are required") {
    RunTrace trace = atcg(fl, m, exact_config(5, 0.5));
    for (auto& rec : trace.iterations) rec.gradient.clear();
    CHECK_THROWS_AS(dominance_check(trace), CapabilityError);
  }
}

TEST_CASE("standard normal cdf") {
  CHECK(gaussian_cdf(0.0) == 0.5);
  CHECK(std::abs(gaussian_cdf(1.959964) - 0.975) <= 1e-6);
  CHECK(gaussian_cdf(-8.0) < 1e-14);
  CHECK(gaussian_cdf(8.0) > 1.0 - 1e-14);
  for (double z = -8.0; z <= 8.0; z += 0.25) {
    CHECK(std::abs(gaussian_cdf(z) -
                   static_cast<double>(testing::ref_normal_cdf(z))) <= 1e-7);
  }
}

TEST_CASE("expected-communication bound arithmetic") {
  SUBCASE("confident ratios cost nothing beyond the initial batch") {
    double bound = expected_comm_bound(constant_stats(2, 10, 1.0, 0.1),
                                       /*tau=*/0.3, /*horizon=*/10,
                                       /*agents=*/2);
    CHECK(std::abs(bound - 2.0) <= 1e-9);
    CHECK(bound == doctest::Approx(2.0 + 18.0 * gaussian_cdf(-7.0))
                       .epsilon(1e-12));
  }
  SUBCASE("ratios sitting on the threshold activate half the time") {
    const int horizon = 12, agents = 3;
    double bound = expected_comm_bound(
        constant_stats(agents, horizon, 0.4, 0.05), 0.4, horizon, agents);
    CHECK(bound ==
          doctest::Approx(agents + (horizon - 1) * agents * 0.5)
              .epsilon(1e-12));
  }
  SUBCASE("vanishing variability with safe ratios costs exactly the batch") {
    double bound = expected_comm_bound(constant_stats(4, 20, 0.9, 1e-9), 0.3,
                                       20, 4);
    CHECK(std::abs(bound - 4.0) <= 1e-9);
  }
  SUBCASE("parameter validation") {
    EtaStats stats = constant_stats(2, 10, 1.0, 0.1);
    CHECK_THROWS_AS(expected_comm_bound(stats, 0.3, 1, 2), ParameterError);
    CHECK_THROWS_AS(expected_comm_bound(stats, 0.3, 10, 3), ParameterError);
    stats.sigma[0] = 0.0;
    CHECK_THROWS_AS(expected_comm_bound(stats, 0.3, 10, 2), ParameterError);
  }
}

TEST_CASE("ratio statistics from repeated traces") {
  FacilityLocation fl = testing::near_far_facility();
  PartitionMatroid m = testing::near_far_matroid();

  SUBCASE("deterministic traces are flagged and floored") {
    RunConfig cfg = exact_config(8, 0.5);
    std::vector<RunTrace> traces{atcg(fl, m, cfg), atcg(fl, m, cfg)};
    EtaStats stats = eta_stats_from_traces(traces);
    CHECK(stats.zero_variance_partitions == std::vector<int>{0, 1});
    for (double s : stats.sigma) CHECK(s == 1e-9);
  }
  SUBCASE("sampled traces give finite in-range statistics") {
    std::vector<RunTrace> traces;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RunConfig cfg = exact_config(15, 0.5);
      cfg.gradient_mode = GradientMode::kMonteCarlo;
      cfg.sample = SampleConfig{40, seed};
      traces.push_back(atcg(fl, m, cfg));
    }
    EtaStats stats = eta_stats_from_traces(traces);
    for (int i = 0; i < 2; ++i) {
      CHECK(stats.sigma[i] > 0.0);
      for (double eta : stats.eta_bar[i]) {
        CHECK(eta >= 0.0);
        CHECK(eta <= 1.0 + 1e-6);
      }
    }
  }
  SUBCASE("mismatched configurations are rejected") {
    std::vector<RunTrace> traces{atcg(fl, m, exact_config(8, 0.5)),
                                 atcg(fl, m, exact_config(8, 0.7))};
    CHECK_THROWS_AS(eta_stats_from_traces(traces), ParameterError);
    CHECK_THROWS_AS(
        eta_stats_from_traces({atcg(fl, m, exact_config(8, 0.5))}),
        ParameterError);
  }
}

TEST_CASE("sampled thresholded runs respect the expected-communication "
          "model on average") {
  FacilityLocation fl = testing::near_far_facility();
  PartitionMatroid m = testing::near_far_matroid();
  const int horizon = 15;
  const double tau = 0.5;
  std::vector<RunTrace> traces;
  std::vector<double> totals;
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    RunConfig cfg = exact_config(horizon, tau);
    cfg.gradient_mode = GradientMode::kMonteCarlo;
    cfg.sample = SampleConfig{60, seed};
    traces.push_back(atcg(fl, m, cfg));
    totals.push_back(static_cast<double>(traces.back().uploads.size()));
  }
  EtaStats stats = eta_stats_from_traces(traces);
  double bound = expected_comm_bound(stats, tau, horizon, 2);
  double mean = 0.0;
  for (double v : totals) mean += v;
  mean /= totals.size();
  double var = 0.0;
  for (double v : totals) var += (v - mean) * (v - mean);
  var /= (totals.size() - 1);
  double se = std::sqrt(var / totals.size());
  // Sanity check of the Gaussian activation model, not an exact law.
  CHECK(mean <= bound + 3.0 * se + 1e-9);
}
