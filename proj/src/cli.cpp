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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "submax/comm.hpp"
#include "submax/io.hpp"

namespace submax {
namespace {

using nlohmann::json;

std::string print_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

// Experiment flags shared by run/sweep/curvature; set flags override the
// config file.
struct ExperimentFlags {
  std::string config_path;
  std::string objective;
  std::string data_path;
  std::string algorithm;
  std::string gradient_mode;
  std::string output_dir;
  std::vector<int> partition_sizes;
  std::vector<int> budgets;
  std::vector<double> weights;
  int horizon = 0;
  double tau = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double sigma = 0.0;

  std::map<std::string, CLI::Option*> options;

  bool given(const std::string& name) const {
    return options.at(name)->count() > 0;
  }
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& flags) {
  auto& o = flags.options;
  o["config"] = cmd->add_option("--config", flags.config_path,
                                "JSON config file (flat object)");
  o["objective"] = cmd->add_option(
      "--objective", flags.objective,
      "facility_rbf | facility_rating | modular | coverage");
  o["data_path"] = cmd->add_option("--data-path", flags.data_path, "input CSV");
  o["algorithm"] = cmd->add_option("--algorithm", flags.algorithm,
                                   "sg | cg | atcg | atcg_general");
  o["gradient_mode"] = cmd->add_option("--gradient-mode", flags.gradient_mode,
                                       "exact | monte_carlo");
  o["output_dir"] =
      cmd->add_option("--output-dir", flags.output_dir, "output directory");
  o["partition_sizes"] =
      cmd->add_option("--partition-sizes", flags.partition_sizes,
                      "comma-separated partition sizes")
          ->delimiter(',');
  o["budgets"] = cmd->add_option("--budgets", flags.budgets,
                                 "comma-separated per-partition budgets")
                     ->delimiter(',');
  o["weights"] = cmd->add_option("--weights", flags.weights,
                                 "comma-separated modular weights")
                     ->delimiter(',');
  o["T"] = cmd->add_option("--T", flags.horizon, "ascent steps");
  o["tau"] = cmd->add_option("--tau", flags.tau, "activation threshold");
  o["K"] = cmd->add_option("--K", flags.samples, "Monte Carlo samples");
  o["seed"] = cmd->add_option("--seed", flags.seed, "experiment seed");
  o["sigma"] = cmd->add_option("--sigma", flags.sigma, "RBF bandwidth");
}

ExperimentConfig assemble_config(const ExperimentFlags& flags) {
  ExperimentConfig cfg;
  if (flags.given("config")) cfg = config_from_json_file(flags.config_path);
  if (flags.given("objective")) {
    cfg.objective = objective_from_name(flags.objective);
  }
  if (flags.given("data_path")) cfg.data_path = flags.data_path;
  if (flags.given("algorithm")) {
    cfg.algorithm = algorithm_from_name(flags.algorithm);
  }
  if (flags.given("gradient_mode")) {
    cfg.gradient_mode = gradient_mode_from_name(flags.gradient_mode);
  }
  if (flags.given("output_dir")) cfg.output_dir = flags.output_dir;
  if (flags.given("partition_sizes")) {
    cfg.partition_sizes = flags.partition_sizes;
  }
  if (flags.given("budgets")) cfg.budgets = flags.budgets;
  if (flags.given("weights")) cfg.weights = flags.weights;
  if (flags.given("T")) cfg.horizon = flags.horizon;
  if (flags.given("tau")) cfg.tau = flags.tau;
  if (flags.given("K")) cfg.samples = flags.samples;
  if (flags.given("seed")) {
    cfg.seed = flags.seed;
    if (cfg.synthetic.has_value()) cfg.synthetic->seed = flags.seed;
  }
  if (flags.given("sigma")) cfg.sigma = flags.sigma;
  return cfg;
}

std::string compact_number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", v);
  return buffer;
}

std::unique_ptr<SubmodularOracle> build_cli_oracle(const ExperimentConfig& cfg) {
  switch (cfg.objective) {
    case ObjectiveKind::kFacilityRbf: {
      Embeddings embeddings = cfg.synthetic.has_value()
                                  ? gen_synthetic(*cfg.synthetic)
                                  : load_embeddings(cfg.data_path);
      embeddings.bandwidth = cfg.sigma;
      return std::make_unique<FacilityLocation>(rbf_kernel(embeddings));
    }
    case ObjectiveKind::kFacilityRating:
      return std::make_unique<RatingObjective>(load_ratings(cfg.data_path));
    case ObjectiveKind::kModular:
      if (!cfg.weights.empty()) {
        return std::make_unique<ModularObjective>(cfg.weights);
      } else {
        Embeddings embeddings = load_embeddings(cfg.data_path);
        return std::make_unique<ModularObjective>(embeddings.data);
      }
    case ObjectiveKind::kCoverage:
      return std::make_unique<WeightedCoverage>(load_coverage(cfg.data_path));
  }
  throw ParameterError("unhandled objective kind");
}

int run_curvature(const ExperimentFlags& flags) {
  ExperimentConfig cfg = assemble_config(flags);
  std::unique_ptr<SubmodularOracle> oracle = build_cli_oracle(cfg);
  std::vector<int> sizes = cfg.partition_sizes;
  if (sizes.empty() && cfg.synthetic.has_value()) {
    sizes.assign(cfg.synthetic->clusters, cfg.synthetic->points_per_cluster);
  }
  if (sizes.empty()) throw ParameterError("partition_sizes must be given");
  GroundSet ground = new_ground(sizes);
  if (ground.size() != oracle->ground_size()) {
    throw ParameterError("partition sizes do not match the objective size");
  }

  CurvatureReport report = total_curvature(*oracle, ground);
  json out;
  out["c_total"] = report.c_total;
  out["c_partition"] = report.c_partition;
  out["tau_star"] = report.tau_star;
  out["argmin_element"] = report.argmin_element;
  out["partition_argmin"] = report.partition_argmin;
  out["witness_set_size"] = report.witness_set_size;
  out["skipped_elements"] = report.skipped_elements;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_bound(const std::string& stats_path, double tau, int horizon,
              int agents) {
  std::ifstream in(stats_path);
  if (!in) throw FormatError("cannot open '" + stats_path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw FormatError(stats_path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "i,t,eta_bar,sigma") {
    throw FormatError(stats_path + ": header must be 'i,t,eta_bar,sigma'");
  }
  if (agents < 1 || horizon <= 1) {
    throw ParameterError("bound needs N >= 1 and T > 1");
  }
  EtaStats stats;
  // eta_bar at t=0 is never consumed by the bound; rows for it are optional.
  stats.eta_bar.assign(agents, std::vector<double>(horizon, 1.0));
  stats.sigma.assign(agents, 0.0);
  std::vector<std::vector<char>> seen(agents, std::vector<char>(horizon, 0));
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream stream(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (fields.size() != 4) {
      throw FormatError(stats_path + ": line " + std::to_string(line_number) +
                        ": expected 4 fields");
    }
    int i = 0, t = 0;
    double eta = 0.0, sigma = 0.0;
    try {
      i = std::stoi(fields[0]);
      t = std::stoi(fields[1]);
      eta = std::stod(fields[2]);
      sigma = std::stod(fields[3]);
    } catch (const std::exception&) {
      throw FormatError(stats_path + ": line " + std::to_string(line_number) +
                        ": malformed number");
    }
    if (i < 0 || i >= agents || t < 0 || t >= horizon) {
      throw FormatError(stats_path + ": line " + std::to_string(line_number) +
                        ": index outside the requested grid");
    }
    stats.eta_bar[i][t] = eta;
    seen[i][t] = 1;
    if (stats.sigma[i] == 0.0) {
      stats.sigma[i] = sigma;
    } else if (stats.sigma[i] != sigma) {
      throw FormatError(stats_path + ": partition " + std::to_string(i) +
                        " has conflicting sigma values");
    }
  }
  for (int i = 0; i < agents; ++i) {
    for (int t = 1; t < horizon; ++t) {
      if (!seen[i][t]) {
        throw FormatError(stats_path + ": missing row for partition " +
                          std::to_string(i) + ", step " + std::to_string(t));
      }
    }
  }
  std::cout << print_double(expected_comm_bound(stats, tau, horizon, agents))
            << "\n";
  return 0;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
  CLI::App app{"submodular maximization under partition matroids: greedy and "
               "thresholded continuous-greedy solvers with communication "
               "accounting"};
  app.name("submax");
  app.require_subcommand(1);

  ExperimentFlags run_flags, sweep_flags, curvature_flags;
  std::vector<double> sweep_taus;

  std::string gen_config, gen_out = "embeddings.csv";
  SyntheticSpec gen_spec;
  std::map<std::string, CLI::Option*> gen_opts;
  std::uint64_t gen_seed = 0;

  std::string bound_stats;
  double bound_tau = 0.5;
  int bound_horizon = 0;
  int bound_agents = 0;

  CLI::App* gen = app.add_subcommand(
      "gen", "generate a synthetic embeddings CSV (Gaussian blobs)");
  gen_opts["config"] =
      gen->add_option("--config", gen_config, "JSON config file");
  gen_opts["clusters"] =
      gen->add_option("--clusters", gen_spec.clusters, "number of clusters");
  gen_opts["points"] =
      gen->add_option("--points-per-cluster", gen_spec.points_per_cluster,
                      "points per cluster");
  gen_opts["dim"] = gen->add_option("--dim", gen_spec.dim, "dimensions");
  gen_opts["spread"] = gen->add_option("--spread", gen_spec.cluster_spread,
                                       "within-cluster stddev");
  gen_opts["distance"] =
      gen->add_option("--distance", gen_spec.inter_cluster_distance,
                      "minimum distance between cluster centers");
  gen_opts["seed"] = gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output CSV path");

  CLI::App* run = app.add_subcommand("run", "run one experiment");
  add_experiment_flags(run, run_flags);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run the experiment once per threshold value");
  add_experiment_flags(sweep, sweep_flags);
  sweep->add_option("--taus", sweep_taus, "comma-separated threshold values")
      ->delimiter(',')
      ->required();

  CLI::App* curvature = app.add_subcommand(
      "curvature", "print the curvature report of the configured objective");
  add_experiment_flags(curvature, curvature_flags);

  CLI::App* bound = app.add_subcommand(
      "bound", "evaluate the expected-communication bound from ratio stats");
  bound->add_option("--stats", bound_stats, "CSV with i,t,eta_bar,sigma rows")
      ->required();
  bound->add_option("--tau", bound_tau, "threshold")->required();
  bound->add_option("--T", bound_horizon, "horizon")->required();
  bound->add_option("--N", bound_agents, "number of partitions")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help() << "\n";
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All) << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) {
      SyntheticSpec spec;
      if (gen_opts.at("config")->count()) {
        ExperimentConfig cfg = config_from_json_file(gen_config);
        if (cfg.synthetic.has_value()) spec = *cfg.synthetic;
      }
      if (gen_opts.at("clusters")->count()) spec.clusters = gen_spec.clusters;
      if (gen_opts.at("points")->count()) {
        spec.points_per_cluster = gen_spec.points_per_cluster;
      }
      if (gen_opts.at("dim")->count()) spec.dim = gen_spec.dim;
      if (gen_opts.at("spread")->count()) {
        spec.cluster_spread = gen_spec.cluster_spread;
      }
      if (gen_opts.at("distance")->count()) {
        spec.inter_cluster_distance = gen_spec.inter_cluster_distance;
      }
      if (gen_opts.at("seed")->count()) spec.seed = gen_seed;
      write_embeddings_csv(gen_synthetic(spec), gen_out);
      return 0;
    }
    if (run->parsed()) {
      return run_experiment(assemble_config(run_flags));
    }
    if (sweep->parsed()) {
      ExperimentConfig base = assemble_config(sweep_flags);
      int status = 0;
      for (double tau : sweep_taus) {
        ExperimentConfig cfg = base;
        cfg.tau = tau;
        cfg.output_dir = base.output_dir + "/tau_" + compact_number(tau);
        int code = run_experiment(cfg);
        if (code != 0) status = code;
      }
      return status;
    }
    if (curvature->parsed()) return run_curvature(curvature_flags);
    if (bound->parsed()) {
      return run_bound(bound_stats, bound_tau, bound_horizon, bound_agents);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace submax
