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

#include "submax/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "json.hpp"
#include "submax/comm.hpp"
#include "submax/rng.hpp"

namespace submax {
namespace {

using nlohmann::json;

// Curvature is reported in summaries only up to this ground size; beyond it
// the n+2 full-set oracle calls start to dominate the run itself.
constexpr int kCurvatureReportCap = 256;

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& text, int line_number) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw FormatError("line " + std::to_string(line_number) +
                      ": '" + text + "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw FormatError("line " + std::to_string(line_number) +
                      ": non-finite value '" + text + "'");
  }
  return value;
}

long parse_int(const std::string& text, int line_number) {
  const char* begin = text.c_str();
  char* end = nullptr;
  long value = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw FormatError("line " + std::to_string(line_number) +
                      ": '" + text + "' is not an integer");
  }
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  return out;
}

// Strips a trailing carriage return so CRLF inputs parse cleanly.
bool read_line(std::ifstream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

Embeddings load_embeddings(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!read_line(in, line)) throw FormatError(path + ": empty file");
  std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "id") {
    throw FormatError(path + ": header must be 'id,f0,f1,...'");
  }
  for (std::size_t k = 1; k < header.size(); ++k) {
    if (header[k] != "f" + std::to_string(k - 1)) {
      throw FormatError(path + ": header must be 'id,f0,f1,...'");
    }
  }
  const int dim = static_cast<int>(header.size()) - 1;

  Embeddings embeddings;
  embeddings.dim = dim;
  int line_number = 1;
  int expected_id = 0;
  while (read_line(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != dim + 1) {
      throw FormatError(path + ": line " + std::to_string(line_number) +
                        ": expected " + std::to_string(dim + 1) +
                        " fields, found " + std::to_string(fields.size()));
    }
    long id = parse_int(fields[0], line_number);
    if (id != expected_id) {
      throw FormatError(path + ": line " + std::to_string(line_number) +
                        ": ids must be consecutive from 0; expected " +
                        std::to_string(expected_id));
    }
    for (int k = 0; k < dim; ++k) {
      double v = parse_double(fields[k + 1], line_number);
      embeddings.data.push_back(v);
    }
    ++expected_id;
  }
  if (expected_id == 0) throw FormatError(path + ": no data rows");
  embeddings.n = expected_id;
  return embeddings;
}

void write_embeddings_csv(const Embeddings& embeddings,
                          const std::string& path) {
  std::ofstream out = open_output(path);
  out << "id";
  for (int k = 0; k < embeddings.dim; ++k) out << ",f" << k;
  out << "\n";
  for (int p = 0; p < embeddings.n; ++p) {
    out << p;
    for (int k = 0; k < embeddings.dim; ++k) {
      out << "," << format_double(embeddings.at(p, k));
    }
    out << "\n";
  }
}

RatingObjective load_ratings(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!read_line(in, line)) throw FormatError(path + ": empty file");
  if (split_csv_line(line) != std::vector<std::string>{"user", "item",
                                                       "rating"}) {
    throw FormatError(path + ": header must be 'user,item,rating'");
  }
  struct Triple {
    long user;
    long item;
    double rating;
  };
  std::vector<Triple> triples;
  std::vector<long> users, items;
  int line_number = 1;
  while (read_line(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw FormatError(path + ": line " + std::to_string(line_number) +
                        ": expected 3 fields");
    }
    Triple t;
    t.user = parse_int(fields[0], line_number);
    t.item = parse_int(fields[1], line_number);
    t.rating = parse_double(fields[2], line_number);
    if (t.rating < 0.0) {
      throw FormatError(path + ": line " + std::to_string(line_number) +
                        ": negative rating");
    }
    triples.push_back(t);
    users.push_back(t.user);
    items.push_back(t.item);
  }
  if (triples.empty()) throw FormatError(path + ": no data rows");

  auto densify = [](std::vector<long>& ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  };
  densify(users);
  densify(items);
  auto dense_index = [](const std::vector<long>& ids, long raw) {
    return static_cast<int>(
        std::lower_bound(ids.begin(), ids.end(), raw) - ids.begin());
  };

  const int n_users = static_cast<int>(users.size());
  const int n_items = static_cast<int>(items.size());
  std::vector<double> matrix(static_cast<std::size_t>(n_users) * n_items, 0.0);
  for (const Triple& t : triples) {
    int u = dense_index(users, t.user);
    int j = dense_index(items, t.item);
    matrix[static_cast<std::size_t>(u) * n_items + j] = t.rating;
  }
  return RatingObjective(n_users, n_items, std::move(matrix));
}

WeightedCoverage load_coverage(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!read_line(in, line)) throw FormatError(path + ": empty file");
  if (split_csv_line(line) != std::vector<std::string>{"element", "item",
                                                       "weight"}) {
    throw FormatError(path + ": header must be 'element,item,weight'");
  }
  long max_element = -1;
  std::vector<long> item_ids;
  struct Row {
    long element;
    long item;
    double weight;
  };
  std::vector<Row> rows;
  int line_number = 1;
  while (read_line(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw FormatError(path + ": line " + std::to_string(line_number) +
                        ": expected 3 fields");
    }
    Row row;
    row.element = parse_int(fields[0], line_number);
    row.item = parse_int(fields[1], line_number);
    row.weight = parse_double(fields[2], line_number);
    if (row.element < 0 || row.weight < 0.0) {
      throw FormatError(path + ": line " + std::to_string(line_number) +
                        ": element ids and weights must be nonnegative");
    }
    rows.push_back(row);
    max_element = std::max(max_element, row.element);
    item_ids.push_back(row.item);
  }
  if (rows.empty()) throw FormatError(path + ": no data rows");
  std::sort(item_ids.begin(), item_ids.end());
  item_ids.erase(std::unique(item_ids.begin(), item_ids.end()),
                 item_ids.end());

  std::vector<std::vector<int>> covers(max_element + 1);
  std::vector<double> weights(item_ids.size(), -1.0);
  for (const Row& row : rows) {
    int item = static_cast<int>(
        std::lower_bound(item_ids.begin(), item_ids.end(), row.item) -
        item_ids.begin());
    covers[row.element].push_back(item);
    if (weights[item] < 0.0) {
      weights[item] = row.weight;
    } else if (weights[item] != row.weight) {
      throw FormatError(path + ": item " + std::to_string(row.item) +
                        " has conflicting weights");
    }
  }
  for (double& w : weights) {
    if (w < 0.0) w = 0.0;
  }
  for (auto& cover : covers) {
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
  }
  return WeightedCoverage(std::move(covers), std::move(weights));
}

Embeddings gen_synthetic(const SyntheticSpec& spec) {
  if (spec.clusters < 1 || spec.points_per_cluster < 1 || spec.dim < 1) {
    throw ParameterError("synthetic counts must be positive");
  }
  if (spec.cluster_spread < 0.0 || !(spec.inter_cluster_distance > 0.0)) {
    throw ParameterError("synthetic distances must be nonnegative");
  }
  Embeddings embeddings;
  embeddings.n = spec.clusters * spec.points_per_cluster;
  embeddings.dim = spec.dim;
  embeddings.data.reserve(static_cast<std::size_t>(embeddings.n) * spec.dim);
  std::mt19937_64 gen = substream(spec.seed, kStreamDataGen);
  for (int c = 0; c < spec.clusters; ++c) {
    // Centers sit on an axis-aligned grid: axis c mod dim, rung 1 + c/dim.
    // Any two centers are at least inter_cluster_distance apart.
    std::vector<double> center(spec.dim, 0.0);
    center[c % spec.dim] =
        spec.inter_cluster_distance * (1.0 + static_cast<double>(c / spec.dim));
    for (int p = 0; p < spec.points_per_cluster; ++p) {
      for (int k = 0; k < spec.dim; ++k) {
        embeddings.data.push_back(center[k] +
                                  spec.cluster_spread * standard_normal(gen));
      }
    }
  }
  return embeddings;
}

ObjectiveKind objective_from_name(const std::string& name) {
  if (name == "facility_rbf") return ObjectiveKind::kFacilityRbf;
  if (name == "facility_rating") return ObjectiveKind::kFacilityRating;
  if (name == "modular") return ObjectiveKind::kModular;
  if (name == "coverage") return ObjectiveKind::kCoverage;
  throw ParameterError("unknown objective '" + name + "'");
}

AlgorithmKind algorithm_from_name(const std::string& name) {
  if (name == "sg") return AlgorithmKind::kSequentialGreedy;
  if (name == "cg") return AlgorithmKind::kContinuousGreedy;
  if (name == "atcg") return AlgorithmKind::kAtcg;
  if (name == "atcg_general") return AlgorithmKind::kAtcgGeneral;
  throw ParameterError("unknown algorithm '" + name + "'");
}

GradientMode gradient_mode_from_name(const std::string& name) {
  if (name == "exact") return GradientMode::kExact;
  if (name == "monte_carlo") return GradientMode::kMonteCarlo;
  throw ParameterError("unknown gradient mode '" + name + "'");
}

namespace {

std::unique_ptr<SubmodularOracle> build_oracle(const ExperimentConfig& cfg) {
  switch (cfg.objective) {
    case ObjectiveKind::kFacilityRbf: {
      Embeddings embeddings;
      if (cfg.synthetic.has_value()) {
        embeddings = gen_synthetic(*cfg.synthetic);
      } else if (!cfg.data_path.empty()) {
        embeddings = load_embeddings(cfg.data_path);
      } else {
        throw ParameterError(
            "facility_rbf needs data_path or a synthetic spec");
      }
      embeddings.bandwidth = cfg.sigma;
      return std::make_unique<FacilityLocation>(rbf_kernel(embeddings));
    }
    case ObjectiveKind::kFacilityRating:
      if (cfg.data_path.empty()) {
        throw ParameterError("facility_rating needs data_path");
      }
      return std::make_unique<RatingObjective>(load_ratings(cfg.data_path));
    case ObjectiveKind::kModular: {
      if (!cfg.weights.empty()) {
        return std::make_unique<ModularObjective>(cfg.weights);
      }
      if (cfg.data_path.empty()) {
        throw ParameterError("modular needs weights or data_path");
      }
      Embeddings embeddings = load_embeddings(cfg.data_path);
      if (embeddings.dim != 1) {
        throw ParameterError("modular weight files carry a single column");
      }
      return std::make_unique<ModularObjective>(embeddings.data);
    }
    case ObjectiveKind::kCoverage:
      if (cfg.data_path.empty()) {
        throw ParameterError("coverage needs data_path");
      }
      return std::make_unique<WeightedCoverage>(load_coverage(cfg.data_path));
  }
  throw ParameterError("unhandled objective kind");
}

PartitionMatroid build_matroid(const ExperimentConfig& cfg, int n) {
  std::vector<int> sizes = cfg.partition_sizes;
  if (sizes.empty() && cfg.synthetic.has_value()) {
    sizes.assign(cfg.synthetic->clusters, cfg.synthetic->points_per_cluster);
  }
  if (sizes.empty()) {
    throw ParameterError("partition_sizes must be given");
  }
  GroundSet ground = new_ground(sizes);
  if (ground.size() != n) {
    throw ParameterError("partition sizes sum to " +
                         std::to_string(ground.size()) +
                         " but the objective has " + std::to_string(n) +
                         " elements");
  }
  std::vector<int> budgets = cfg.budgets;
  if (budgets.empty()) budgets.assign(ground.partition_count(), 1);
  return PartitionMatroid(std::move(ground), std::move(budgets));
}

RunTrace run_sequential_greedy_trace(const SubmodularOracle& f,
                                     const PartitionMatroid& m,
                                     const ExperimentConfig& cfg) {
  std::vector<GreedyStep> steps;
  FeasibleSet result = sequential_greedy(f, m, &steps);

  RunTrace trace;
  trace.algorithm = "sg";
  trace.n = m.ground().size();
  trace.partitions = m.ground().partitions();
  trace.budgets = m.budgets();
  trace.horizon = cfg.horizon;
  trace.tau = cfg.tau;
  trace.samples = cfg.samples;
  trace.seed = cfg.seed;
  trace.gradient_mode = cfg.gradient_mode;
  trace.active_final.assign(m.ground().partition_count(), {});

  std::vector<int> chosen;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    int element = steps[s].element;
    int agent = m.ground().partition_of(element);
    chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), element),
                  element);
    trace.uploads.push_back(
        UploadEvent{static_cast<int>(s), agent, element});
    auto& active = trace.active_final[agent];
    active.insert(std::upper_bound(active.begin(), active.end(), element),
                  element);

    IterationRecord rec;
    rec.t = static_cast<int>(s);
    rec.objective = steps[s].value_after;
    rec.cumulative_uploads = static_cast<int>(s) + 1;
    rec.total_active = static_cast<int>(chosen.size());
    rec.x_after = indicator_vector(FeasibleSet(chosen), trace.n).values;
    trace.iterations.push_back(std::move(rec));
  }
  trace.x_final = indicator_vector(result, trace.n);
  trace.rounded_set = result;
  trace.rounded_value = f.eval(result.members);
  trace.final_objective =
      trace.iterations.empty() ? 0.0 : trace.iterations.back().objective;
  return trace;
}

void write_output_files(const ExperimentConfig& cfg, const RunTrace& trace) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const fs::path dir(cfg.output_dir);

  {
    std::ofstream out = open_output((dir / "trajectory.csv").string());
    out << "t,F_value\n";
    for (const IterationRecord& rec : trace.iterations) {
      out << rec.t << "," << format_double(rec.objective) << "\n";
    }
  }
  {
    std::ofstream out = open_output((dir / "communication.csv").string());
    out << "t,cum_embeddings\n";
    for (const IterationRecord& rec : trace.iterations) {
      out << rec.t << "," << rec.cumulative_uploads << "\n";
    }
  }
  {
    std::ofstream out = open_output((dir / "active.csv").string());
    out << "t,total_active,eta_min\n";
    for (const IterationRecord& rec : trace.iterations) {
      double eta_min = 1.0;
      for (double eta : rec.eta_after) eta_min = std::min(eta_min, eta);
      out << rec.t << "," << rec.total_active << "," << format_double(eta_min)
          << "\n";
    }
  }
  if (trace.algorithm == "atcg" || trace.algorithm == "atcg_general") {
    std::ofstream out = open_output((dir / "eta.csv").string());
    out << "t,partition,eta_before,eta_after\n";
    for (const IterationRecord& rec : trace.iterations) {
      for (std::size_t i = 0; i < rec.eta_before.size(); ++i) {
        out << rec.t << "," << i << "," << format_double(rec.eta_before[i])
            << "," << format_double(rec.eta_after[i]) << "\n";
      }
    }
  }

  json summary;
  summary["final_F"] = trace.final_objective;
  summary["rounded_set"] = trace.rounded_set.members;
  summary["rounded_value"] = trace.rounded_value;
  summary["C_T"] = static_cast<int>(trace.uploads.size());
  summary["tau"] = trace.tau;
  summary["T"] = trace.horizon;
  summary["K"] = trace.samples;
  summary["seed"] = trace.seed;
  if (trace.n <= kCurvatureReportCap) {
    try {
      GroundSet ground(
          [&] {
            std::vector<int> sizes;
            for (const IndexRange& part : trace.partitions) {
              sizes.push_back(part.size());
            }
            return sizes;
          }());
      std::unique_ptr<SubmodularOracle> oracle = build_oracle(cfg);
      CurvatureReport report = total_curvature(*oracle, ground);
      summary["c_total"] = report.c_total;
      summary["c_partition"] = report.c_partition;
    } catch (const Error&) {
      // Degenerate objectives simply omit the optional curvature block.
    }
  }
  std::ofstream out = open_output((dir / "summary.json").string());
  out << summary.dump(2) << "\n";
}

}  // namespace

RunTrace execute_experiment(const ExperimentConfig& cfg) {
  std::unique_ptr<SubmodularOracle> oracle = build_oracle(cfg);
  PartitionMatroid matroid = build_matroid(cfg, oracle->ground_size());

  RunConfig run_cfg;
  run_cfg.horizon = cfg.horizon;
  run_cfg.tau = cfg.tau;
  run_cfg.sample.samples = cfg.samples;
  run_cfg.sample.seed = cfg.seed;
  run_cfg.gradient_mode = cfg.gradient_mode;

  switch (cfg.algorithm) {
    case AlgorithmKind::kSequentialGreedy:
      return run_sequential_greedy_trace(*oracle, matroid, cfg);
    case AlgorithmKind::kContinuousGreedy:
      return continuous_greedy(*oracle, matroid, run_cfg);
    case AlgorithmKind::kAtcg:
      return atcg(*oracle, matroid, run_cfg);
    case AlgorithmKind::kAtcgGeneral:
      return atcg_general(*oracle, matroid, run_cfg);
  }
  throw ParameterError("unhandled algorithm kind");
}

int run_experiment(const ExperimentConfig& cfg) {
  try {
    RunTrace trace = execute_experiment(cfg);
    write_output_files(cfg, trace);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

ExperimentConfig config_from_json_file(const std::string& path) {
  std::ifstream in = open_input(path);
  json data;
  try {
    in >> data;
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  if (!data.is_object()) throw FormatError(path + ": config must be an object");

  static const std::vector<std::string> known = {
      "objective", "data_path", "partition_sizes", "budgets", "weights",
      "algorithm", "T", "tau", "K", "seed", "gradient_mode", "sigma",
      "output_dir", "clusters", "points_per_cluster", "dim", "cluster_spread",
      "inter_cluster_distance"};
  for (const auto& [key, value] : data.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw FormatError(path + ": unknown config key '" + key + "'");
    }
  }

  ExperimentConfig cfg;
  try {
    if (data.contains("objective")) {
      cfg.objective = objective_from_name(data["objective"]);
    }
    if (data.contains("data_path")) cfg.data_path = data["data_path"];
    if (data.contains("partition_sizes")) {
      cfg.partition_sizes = data["partition_sizes"].get<std::vector<int>>();
    }
    if (data.contains("budgets")) {
      cfg.budgets = data["budgets"].get<std::vector<int>>();
    }
    if (data.contains("weights")) {
      cfg.weights = data["weights"].get<std::vector<double>>();
    }
    if (data.contains("algorithm")) {
      cfg.algorithm = algorithm_from_name(data["algorithm"]);
    }
    if (data.contains("T")) cfg.horizon = data["T"];
    if (data.contains("tau")) cfg.tau = data["tau"];
    if (data.contains("K")) cfg.samples = data["K"];
    if (data.contains("seed")) cfg.seed = data["seed"];
    if (data.contains("gradient_mode")) {
      cfg.gradient_mode = gradient_mode_from_name(data["gradient_mode"]);
    }
    if (data.contains("sigma")) cfg.sigma = data["sigma"];
    if (data.contains("output_dir")) cfg.output_dir = data["output_dir"];
    if (data.contains("clusters")) {
      SyntheticSpec spec;
      spec.clusters = data["clusters"];
      if (data.contains("points_per_cluster")) {
        spec.points_per_cluster = data["points_per_cluster"];
      }
      if (data.contains("dim")) spec.dim = data["dim"];
      if (data.contains("cluster_spread")) {
        spec.cluster_spread = data["cluster_spread"];
      }
      if (data.contains("inter_cluster_distance")) {
        spec.inter_cluster_distance = data["inter_cluster_distance"];
      }
      spec.seed = cfg.seed;
      cfg.synthetic = spec;
    }
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  return cfg;
}

}  // namespace submax
