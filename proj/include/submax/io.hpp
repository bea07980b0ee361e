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

#ifndef SUBMAX_IO_HPP_
#define SUBMAX_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "submax/algorithms.hpp"
#include "submax/curvature.hpp"
#include "submax/objectives.hpp"

namespace submax {

/// Gaussian-blob instance generator: cluster centers on a scaled axis grid
/// with pairwise distance at least inter_cluster_distance, points sampled
/// around them. Output is deterministic per seed.
struct SyntheticSpec {
  int clusters = 2;
  int points_per_cluster = 10;
  int dim = 2;
  double cluster_spread = 0.1;
  double inter_cluster_distance = 1.0;
  std::uint64_t seed = 0;
};

enum class ObjectiveKind { kFacilityRbf, kFacilityRating, kModular, kCoverage };
enum class AlgorithmKind {
  kSequentialGreedy,
  kContinuousGreedy,
  kAtcg,
  kAtcgGeneral
};

/// One experiment: data source, matroid, algorithm, and output location.
/// Mirrors the flat JSON config; command-line flags override file values.
struct ExperimentConfig {
  ObjectiveKind objective = ObjectiveKind::kFacilityRbf;
  std::string data_path;  // CSV input; empty when synthetic is set
  std::optional<SyntheticSpec> synthetic;
  std::vector<int> partition_sizes;
  std::vector<int> budgets;           // defaults to all ones
  std::vector<double> weights;        // modular objective only
  AlgorithmKind algorithm = AlgorithmKind::kAtcg;
  int horizon = 100;
  double tau = 0.5;
  int samples = 100;
  std::uint64_t seed = 0;
  GradientMode gradient_mode = GradientMode::kMonteCarlo;
  double sigma = 1.0;  // RBF bandwidth
  std::string output_dir = "out";
};

/// Parses `id,f0,f1,...` rows sorted by id from 0. Rejects ragged rows,
/// non-numeric cells, NaN and infinity, each with the offending line number.
Embeddings load_embeddings(const std::string& path);

/// Writes embeddings in the same format, full double precision.
void write_embeddings_csv(const Embeddings& embeddings,
                          const std::string& path);

/// Parses `user,item,rating` triples with nonnegative ratings. Sparse ids
/// are densified in sorted order; missing pairs default to rating 0.
RatingObjective load_ratings(const std::string& path);

/// Parses `element,item,weight` coverage triples.
WeightedCoverage load_coverage(const std::string& path);

/// Deterministic Gaussian blobs per the spec.
Embeddings gen_synthetic(const SyntheticSpec& spec);

/// Builds the configured oracle/matroid, runs the configured algorithm, and
/// writes trajectory.csv, communication.csv, active.csv and summary.json
/// under output_dir (plus eta.csv for thresholded runs).
/// Returns 0 on success, 1 on any configuration or runtime failure (after
/// printing the reason to stderr).
int run_experiment(const ExperimentConfig& cfg);

/// run_experiment's core, exposed for tests: returns the trace and throws
/// on failure instead of reporting an exit code.
RunTrace execute_experiment(const ExperimentConfig& cfg);

/// Reads the flat JSON config object.
ExperimentConfig config_from_json_file(const std::string& path);

/// Name maps used by the config file and the CLI; throw ParameterError on
/// unknown names.
ObjectiveKind objective_from_name(const std::string& name);
AlgorithmKind algorithm_from_name(const std::string& name);
GradientMode gradient_mode_from_name(const std::string& name);

/// Full command-line entry point (subcommands gen, run, sweep, curvature,
/// bound). Returns the process exit code: 0 ok, 1 runtime error, 2 usage.
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace submax

#endif  // SUBMAX_IO_HPP_
