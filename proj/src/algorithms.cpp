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

#include "submax/algorithms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "submax/rng.hpp"

namespace submax {
namespace {

// Guard added to ratio denominators; keeps empty-versus-zero cases finite.
constexpr double kRatioGuard = 1e-12;

double max_over(std::span<const double> g, IndexRange range) {
  double best = -std::numeric_limits<double>::infinity();
  for (int j = range.begin; j < range.end; ++j) best = std::max(best, g[j]);
  return best;
}

double max_over(std::span<const double> g, std::span<const int> indices) {
  double best = -std::numeric_limits<double>::infinity();
  for (int j : indices) best = std::max(best, g[j]);
  return best;
}

// Lowest-index argmax over the partition, skipping masked elements.
int argmax_excluding(std::span<const double> g, IndexRange range,
                     const std::vector<char>& excluded) {
  int best = -1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int j = range.begin; j < range.end; ++j) {
    if (excluded[j]) continue;
    if (g[j] > best_value) {
      best_value = g[j];
      best = j;
    }
  }
  return best;
}

int argmax_over(std::span<const double> g, std::span<const int> indices) {
  int best = -1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int j : indices) {
    if (g[j] > best_value) {
      best_value = g[j];
      best = j;
    }
  }
  return best;
}

// The k largest entries (ties to the lowest index), at most k of them.
std::vector<int> topk_indices(std::span<const double> g,
                              std::vector<int> candidates, int k) {
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    if (g[a] != g[b]) return g[a] > g[b];
    return a < b;
  });
  if (static_cast<int>(candidates.size()) > k) candidates.resize(k);
  return candidates;
}

double topk_sum(std::span<const double> g, std::vector<int> candidates,
                int k) {
  std::vector<int> top = topk_indices(g, std::move(candidates), k);
  double sum = 0.0;
  for (int j : top) sum += g[j];
  return sum;
}

std::vector<int> range_indices(IndexRange range) {
  std::vector<int> out(range.size());
  for (int j = range.begin; j < range.end; ++j) out[j - range.begin] = j;
  return out;
}

void validate_common(const PartitionMatroid& m, const RunConfig& cfg,
                     bool needs_tau) {
  if (cfg.horizon < 1) {
    throw ParameterError("horizon must be at least 1");
  }
  if (needs_tau && !(cfg.tau > 0.0 && cfg.tau <= 1.0)) {
    throw ParameterError("threshold must lie in (0,1]");
  }
  if (cfg.gradient_mode == GradientMode::kMonteCarlo && cfg.sample.samples < 1) {
    throw ParameterError("Monte Carlo sample count must be at least 1");
  }
  (void)m;
}

// Shared per-run machinery: membership vector held as integer step counts
// so partition sums stay exact, gradient dispatch with per-step seeds, and
// trace assembly.
class AscentRun {
 public:
  AscentRun(const SubmodularOracle& f, const PartitionMatroid& m,
            const RunConfig& cfg, std::string algorithm)
      : f_(f), m_(m), cfg_(cfg), n_(m.ground().size()) {
    counts_.assign(n_, 0);
    x_.values.assign(n_, 0.0);
    state_.active.assign(m.ground().partition_count(), {});
    trace_.algorithm = std::move(algorithm);
    trace_.n = n_;
    trace_.partitions = m.ground().partitions();
    trace_.budgets = m.budgets();
    trace_.horizon = cfg.horizon;
    trace_.tau = cfg.tau;
    trace_.samples = cfg.sample.samples;
    trace_.seed = cfg.sample.seed;
    trace_.gradient_mode = cfg.gradient_mode;
  }

  const MembershipVector& x() const { return x_; }
  ActiveState& state() { return state_; }

  // Gradient consumed at step t, sampled over the server's cached set so
  // that only uploaded embeddings participate. All entries are produced;
  // the cache always contains the support of x.
  std::vector<double> gradient(int t) {
    if (cfg_.gradient_mode == GradientMode::kExact) {
      return exact_gradient(x_, f_, state_.embedding_set).values;
    }
    SampleConfig step_cfg;
    step_cfg.samples = cfg_.sample.samples;
    step_cfg.seed = derive_seed(derive_seed(cfg_.sample.seed, kStreamMcSamples),
                                static_cast<std::uint64_t>(t));
    return mc_gradient(x_, f_, step_cfg, state_.embedding_set).values;
  }

  void upload(int t, int agent, int element) {
    state_.activate(agent, element);
    trace_.uploads.push_back(UploadEvent{t, agent, element});
  }

  void raise(int element) {
    ++counts_[element];
    x_.values[element] =
        static_cast<double>(counts_[element]) / static_cast<double>(cfg_.horizon);
  }

  bool never_raised(int element) const { return counts_[element] == 0; }

  double objective_now() const {
    if (n_ <= kEnumerationCap) return exact_value(x_, f_);
    FeasibleSet rounded = round_topk(x_, m_);
    return f_.eval(rounded.members);
  }

  void record(int t, std::vector<double> eta_before,
              std::vector<double> eta_after, std::vector<double> g) {
    IterationRecord rec;
    rec.t = t;
    rec.objective = objective_now();
    rec.cumulative_uploads = static_cast<int>(trace_.uploads.size());
    rec.total_active = state_.total_active();
    rec.eta_before = std::move(eta_before);
    rec.eta_after = std::move(eta_after);
    rec.gradient = std::move(g);
    rec.x_after = x_.values;
    trace_.iterations.push_back(std::move(rec));
  }

  void note_nonpositive_max(double partition_max) {
    if (partition_max <= 0.0) ++trace_.nonpositive_gradient_events;
  }

  RunTrace finish() {
    trace_.active_final = state_.active;
    trace_.x_final = x_;
    trace_.rounded_set = round_topk(x_, m_);
    trace_.rounded_value = f_.eval(trace_.rounded_set.members);
    trace_.final_objective = trace_.iterations.back().objective;
    return std::move(trace_);
  }

 private:
  const SubmodularOracle& f_;
  const PartitionMatroid& m_;
  const RunConfig& cfg_;
  int n_;
  std::vector<int> counts_;
  MembershipVector x_;
  ActiveState state_;
  RunTrace trace_;
};

}  // namespace

void ActiveState::activate(int partition, int element) {
  auto& list = active[partition];
  auto it = std::lower_bound(list.begin(), list.end(), element);
  if (it != list.end() && *it == element) return;
  list.insert(it, element);
  auto eit =
      std::lower_bound(embedding_set.begin(), embedding_set.end(), element);
  embedding_set.insert(eit, element);
}

int ActiveState::total_active() const {
  int total = 0;
  for (const auto& list : active) total += static_cast<int>(list.size());
  return total;
}

double progress_ratio(std::span<const double> g, std::span<const int> active,
                      IndexRange partition) {
  if (active.empty()) return 0.0;
  return max_over(g, active) / (max_over(g, partition) + kRatioGuard);
}

double progress_ratio_kappa(std::span<const double> g,
                            std::span<const int> active, IndexRange partition,
                            int budget) {
  if (budget < 1) throw ParameterError("budget must be at least 1");
  double active_sum =
      topk_sum(g, std::vector<int>(active.begin(), active.end()), budget);
  double full_sum = topk_sum(g, range_indices(partition), budget);
  return active_sum / (full_sum + kRatioGuard);
}

FeasibleSet sequential_greedy(const SubmodularOracle& f,
                              const PartitionMatroid& m,
                              std::vector<GreedyStep>* steps) {
  const GroundSet& ground = m.ground();
  std::vector<int> selected;
  std::vector<int> used(ground.partition_count(), 0);
  std::vector<char> in_set(ground.size(), 0);
  if (steps != nullptr) steps->clear();
  double current_value = 0.0;
  while (true) {
    int best = -1;
    double best_gain = 0.0;
    for (int j = 0; j < ground.size(); ++j) {
      if (in_set[j]) continue;
      int i = ground.partition_of(j);
      if (used[i] >= m.budget(i)) continue;
      std::vector<int> with(selected);
      with.insert(std::upper_bound(with.begin(), with.end(), j), j);
      double gain = f.eval(with) - current_value;
      if (gain > best_gain) {
        best_gain = gain;
        best = j;
      }
    }
    if (best < 0) break;
    selected.insert(std::upper_bound(selected.begin(), selected.end(), best),
                    best);
    in_set[best] = 1;
    ++used[ground.partition_of(best)];
    current_value += best_gain;
    if (steps != nullptr) {
      steps->push_back(GreedyStep{best, f.eval(selected)});
    }
  }
  FeasibleSet result;
  result.members = std::move(selected);
  return result;
}

RunTrace continuous_greedy(const SubmodularOracle& f,
                           const PartitionMatroid& m, const RunConfig& cfg) {
  validate_common(m, cfg, /*needs_tau=*/false);
  const GroundSet& ground = m.ground();
  AscentRun run(f, m, cfg, "cg");
  for (int t = 0; t < cfg.horizon; ++t) {
    std::vector<double> g = run.gradient(t);
    for (int i = 0; i < ground.partition_count(); ++i) {
      IndexRange part = ground.partition(i);
      run.note_nonpositive_max(max_over(g, part));
      std::vector<int> picks = topk_indices(g, range_indices(part), m.budget(i));
      for (int j : picks) {
        if (run.never_raised(j)) run.upload(t, i, j);
        run.raise(j);
      }
    }
    run.record(t, {}, {}, std::move(g));
  }
  return run.finish();
}

RunTrace atcg(const SubmodularOracle& f, const PartitionMatroid& m,
              const RunConfig& cfg) {
  bool unit = std::all_of(m.budgets().begin(), m.budgets().end(),
                          [](int b) { return b == 1; });
  if (!unit) return atcg_general(f, m, cfg);
  validate_common(m, cfg, /*needs_tau=*/true);

  const GroundSet& ground = m.ground();
  const int parts = ground.partition_count();
  AscentRun run(f, m, cfg, "atcg");
  std::vector<char> active_mask(ground.size(), 0);
  for (int t = 0; t < cfg.horizon; ++t) {
    std::vector<double> g = run.gradient(t);
    std::vector<double> eta_before(parts), eta_after(parts);
    for (int i = 0; i < parts; ++i) {
      IndexRange part = ground.partition(i);
      const std::vector<int>& active = run.state().active[i];
      eta_before[i] = progress_ratio(g, active, part);

      double part_max = max_over(g, part);
      run.note_nonpositive_max(part_max);
      bool saturated = static_cast<int>(active.size()) == part.size();
      // Expansion fires when the active set misses a tau fraction of the
      // best available gain (always on the first step, when it is empty).
      bool fire = !saturated && (active.empty() ||
                                 max_over(g, active) < cfg.tau * part_max);
      if (fire) {
        int added = argmax_excluding(g, part, active_mask);
        active_mask[added] = 1;
        run.upload(t, i, added);
      }
      eta_after[i] = progress_ratio(g, run.state().active[i], part);

      int pick = argmax_over(g, run.state().active[i]);
      run.raise(pick);
    }
    run.record(t, std::move(eta_before), std::move(eta_after), std::move(g));
  }
  return run.finish();
}

RunTrace atcg_general(const SubmodularOracle& f, const PartitionMatroid& m,
                      const RunConfig& cfg) {
  validate_common(m, cfg, /*needs_tau=*/true);
  const GroundSet& ground = m.ground();
  const int parts = ground.partition_count();
  AscentRun run(f, m, cfg, "atcg_general");
  std::vector<char> active_mask(ground.size(), 0);
  for (int t = 0; t < cfg.horizon; ++t) {
    std::vector<double> g = run.gradient(t);
    std::vector<double> eta_before(parts), eta_after(parts);
    for (int i = 0; i < parts; ++i) {
      IndexRange part = ground.partition(i);
      const int budget = m.budget(i);
      eta_before[i] =
          progress_ratio_kappa(g, run.state().active[i], part, budget);
      run.note_nonpositive_max(max_over(g, part));

      const double full_sum = topk_sum(g, range_indices(part), budget);
      // Inner expansion: the top-budget oracle needs at least budget-many
      // active elements, and their combined gain must reach a tau fraction
      // of the unrestricted top-budget gain.
      while (static_cast<int>(run.state().active[i].size()) < part.size()) {
        const std::vector<int>& active = run.state().active[i];
        bool underfilled = static_cast<int>(active.size()) < budget;
        double active_sum = topk_sum(g, active, budget);
        if (!underfilled && active_sum >= cfg.tau * full_sum) break;
        int added = argmax_excluding(g, part, active_mask);
        active_mask[added] = 1;
        run.upload(t, i, added);
      }
      eta_after[i] =
          progress_ratio_kappa(g, run.state().active[i], part, budget);

      std::vector<int> picks = topk_indices(g, run.state().active[i], budget);
      for (int j : picks) run.raise(j);
    }
    run.record(t, std::move(eta_before), std::move(eta_after), std::move(g));
  }
  return run.finish();
}

FeasibleSet round_topk(const MembershipVector& x, const PartitionMatroid& m) {
  if (!polytope_check(x, m)) {
    throw PreconditionError("membership vector lies outside the polytope");
  }
  const GroundSet& ground = m.ground();
  std::vector<int> members;
  for (int i = 0; i < ground.partition_count(); ++i) {
    IndexRange part = ground.partition(i);
    std::vector<int> positive;
    for (int j = part.begin; j < part.end; ++j) {
      if (x.values[j] > 0.0) positive.push_back(j);
    }
    std::sort(positive.begin(), positive.end(), [&](int a, int b) {
      if (x.values[a] != x.values[b]) return x.values[a] > x.values[b];
      return a < b;
    });
    if (static_cast<int>(positive.size()) > m.budget(i)) {
      positive.resize(m.budget(i));
    }
    members.insert(members.end(), positive.begin(), positive.end());
  }
  return FeasibleSet(std::move(members));
}

std::pair<FeasibleSet, double> brute_force_optimum(const SubmodularOracle& f,
                                                   const PartitionMatroid& m) {
  const GroundSet& ground = m.ground();
  const int parts = ground.partition_count();

  // Feasible family size: product over partitions of the number of subsets
  // within budget.
  double family_size = 1.0;
  for (int i = 0; i < parts; ++i) {
    int size = ground.partition(i).size();
    double count = 0.0;
    double binom = 1.0;  // C(size, 0)
    for (int k = 0; k <= m.budget(i); ++k) {
      count += binom;
      binom = binom * (size - k) / (k + 1);
    }
    family_size *= count;
    if (family_size > 1e6) {
      throw CapacityError("feasible family exceeds the exhaustive-search cap");
    }
  }

  // Per-partition subsets within budget, in mask order (so ties resolve to
  // a fixed enumeration order).
  std::vector<std::vector<std::vector<int>>> choices(parts);
  for (int i = 0; i < parts; ++i) {
    IndexRange part = ground.partition(i);
    const int size = part.size();
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << size); ++mask) {
      if (std::popcount(mask) > m.budget(i)) continue;
      std::vector<int> subset;
      for (int b = 0; b < size; ++b) {
        if (mask >> b & 1u) subset.push_back(part.begin + b);
      }
      choices[i].push_back(std::move(subset));
    }
  }

  std::vector<int> cursor(parts, 0);
  std::vector<int> current;
  FeasibleSet best_set;
  double best_value = -std::numeric_limits<double>::infinity();
  // Odometer over the per-partition choices.
  while (true) {
    current.clear();
    for (int i = 0; i < parts; ++i) {
      const auto& subset = choices[i][cursor[i]];
      current.insert(current.end(), subset.begin(), subset.end());
    }
    double value = f.eval(current);
    if (value > best_value) {
      best_value = value;
      best_set.members = current;
    }
    int i = parts - 1;
    while (i >= 0 && ++cursor[i] == static_cast<int>(choices[i].size())) {
      cursor[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return {std::move(best_set), best_value};
}

}  // namespace submax
