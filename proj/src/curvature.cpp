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

#include "submax/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace submax {
namespace {

constexpr double kCurvatureSlack = 1e-9;

// Marginal-to-singleton ratio for every element: the marginal is taken on
// top of all other elements, which minimizes it for submodular f.
// Returns NaN for elements with zero singleton value.
std::vector<double> element_ratios(const SubmodularOracle& f,
                                   const GroundSet& ground,
                                   std::vector<int>* skipped) {
  const int n = ground.size();
  std::vector<int> everything(n);
  for (int j = 0; j < n; ++j) everything[j] = j;
  const double full_value = f.eval(everything);

  std::vector<double> ratios(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<int> rest(n - 1);
  for (int p = 0; p < n; ++p) {
    double singleton = f.eval(std::vector<int>{p});
    if (singleton == 0.0) {
      if (skipped != nullptr) skipped->push_back(p);
      continue;
    }
    rest.clear();
    for (int j = 0; j < n; ++j) {
      if (j != p) rest.push_back(j);
    }
    ratios[p] = (full_value - f.eval(rest)) / singleton;
  }
  return ratios;
}

double ratio_to_curvature(double min_ratio) {
  double c = 1.0 - min_ratio;
  if (c < -kCurvatureSlack || c > 1.0 + kCurvatureSlack) {
    throw ParameterError("computed curvature " + std::to_string(c) +
                         " falls outside [0,1]; objective is not monotone "
                         "submodular");
  }
  return std::clamp(c, 0.0, 1.0);
}

}  // namespace

CurvatureReport total_curvature(const SubmodularOracle& f,
                                const GroundSet& ground) {
  CurvatureReport report;
  std::vector<double> ratios = element_ratios(f, ground, &report.skipped_elements);

  double best_ratio = std::numeric_limits<double>::infinity();
  for (int p = 0; p < ground.size(); ++p) {
    if (std::isnan(ratios[p])) continue;
    if (ratios[p] < best_ratio) {
      best_ratio = ratios[p];
      report.argmin_element = p;
    }
  }
  if (report.argmin_element < 0) {
    throw ParameterError("every singleton value is zero; curvature undefined");
  }
  report.c_total = ratio_to_curvature(best_ratio);
  report.tau_star = 1.0 - report.c_total;
  report.witness_set_size = ground.size() - 1;

  report.c_partition.assign(ground.partition_count(), 0.0);
  report.partition_argmin.assign(ground.partition_count(), -1);
  for (int i = 0; i < ground.partition_count(); ++i) {
    IndexRange part = ground.partition(i);
    double part_best = std::numeric_limits<double>::infinity();
    for (int p = part.begin; p < part.end; ++p) {
      if (std::isnan(ratios[p])) continue;
      if (ratios[p] < part_best) {
        part_best = ratios[p];
        report.partition_argmin[i] = p;
      }
    }
    // A partition may consist entirely of zero-value elements; report it as
    // curvature 0 with no witness rather than failing the whole report.
    report.c_partition[i] =
        std::isinf(part_best) ? 0.0 : ratio_to_curvature(part_best);
  }
  return report;
}

double partition_curvature(const SubmodularOracle& f, const GroundSet& ground,
                           int partition) {
  IndexRange part = ground.partition(partition);
  std::vector<double> ratios = element_ratios(f, ground, nullptr);
  double best = std::numeric_limits<double>::infinity();
  for (int p = part.begin; p < part.end; ++p) {
    if (std::isnan(ratios[p])) continue;
    best = std::min(best, ratios[p]);
  }
  if (std::isinf(best)) {
    throw ParameterError("every singleton value in the partition is zero");
  }
  return ratio_to_curvature(best);
}

EffectiveRate effective_rate(double tau, double curvature) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw ParameterError("threshold must lie in (0,1]");
  }
  if (!(curvature >= 0.0 && curvature <= 1.0)) {
    throw ParameterError("curvature must lie in [0,1]");
  }
  EffectiveRate rate;
  rate.tau_eff = std::max(tau, 1.0 - curvature);
  rate.bound = 1.0 - std::exp(-rate.tau_eff);
  return rate;
}

}  // namespace submax
