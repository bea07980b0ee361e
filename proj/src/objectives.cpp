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

#include "submax/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace submax {
namespace {

void check_index(int j, int n) {
  if (j < 0 || j >= n) {
    throw DimensionError("element index " + std::to_string(j) +
                         " out of range for ground size " + std::to_string(n));
  }
}

}  // namespace

KernelMatrix::KernelMatrix(int clients, int elements,
                           std::vector<double> values)
    : clients_(clients), elements_(elements), values_(std::move(values)) {
  if (clients_ < 0 || elements_ < 0 ||
      values_.size() != static_cast<std::size_t>(clients_) * elements_) {
    throw DimensionError("kernel matrix shape does not match value count");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw ParameterError("kernel entries must be finite and in [0,1]");
    }
  }
}

KernelMatrix rbf_kernel(const Embeddings& embeddings) {
  if (!(embeddings.bandwidth > 0.0)) {
    throw ParameterError("RBF bandwidth must be positive");
  }
  const int n = embeddings.n;
  const int d = embeddings.dim;
  const double inv = 1.0 / (2.0 * embeddings.bandwidth * embeddings.bandwidth);
  std::vector<double> values(static_cast<std::size_t>(n) * n, 1.0);
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      double dist2 = 0.0;
      for (int k = 0; k < d; ++k) {
        double diff = embeddings.at(p, k) - embeddings.at(q, k);
        dist2 += diff * diff;
      }
      double v = std::exp(-dist2 * inv);
      values[static_cast<std::size_t>(p) * n + q] = v;
      values[static_cast<std::size_t>(q) * n + p] = v;
    }
  }
  return KernelMatrix(n, n, std::move(values));
}

FacilityLocation::FacilityLocation(KernelMatrix kernel)
    : kernel_(std::move(kernel)) {}

double FacilityLocation::eval(std::span<const int> s) const {
  if (s.empty()) return 0.0;
  const int n = kernel_.elements();
  for (int j : s) check_index(j, n);
  double total = 0.0;
  for (int c = 0; c < kernel_.clients(); ++c) {
    double best = 0.0;
    for (int j : s) best = std::max(best, kernel_.at(c, j));
    total += best;
  }
  return total;
}

RatingObjective::RatingObjective(int users, int items,
                                 std::vector<double> ratings)
    : users_(users), items_(items), ratings_(std::move(ratings)) {
  if (users_ <= 0 || items_ <= 0 ||
      ratings_.size() != static_cast<std::size_t>(users_) * items_) {
    throw DimensionError("rating matrix shape does not match value count");
  }
  for (double r : ratings_) {
    if (!std::isfinite(r) || r < 0.0) {
      throw ParameterError("ratings must be finite and nonnegative");
    }
  }
}

double RatingObjective::eval(std::span<const int> s) const {
  if (s.empty()) return 0.0;
  for (int j : s) check_index(j, items_);
  double total = 0.0;
  for (int u = 0; u < users_; ++u) {
    double best = 0.0;
    for (int j : s) best = std::max(best, rating(u, j));
    total += best;
  }
  return total / static_cast<double>(users_);
}

ModularObjective::ModularObjective(std::vector<double> weights)
    : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ParameterError("modular weights must be finite and nonnegative");
    }
  }
}

double ModularObjective::eval(std::span<const int> s) const {
  double total = 0.0;
  for (int j : s) {
    check_index(j, ground_size());
    total += weights_[j];
  }
  return total;
}

WeightedCoverage::WeightedCoverage(std::vector<std::vector<int>> covers,
                                   std::vector<double> item_weights)
    : covers_(std::move(covers)), item_weights_(std::move(item_weights)) {
  for (const auto& cover : covers_) {
    for (int item : cover) {
      if (item < 0 || item >= static_cast<int>(item_weights_.size())) {
        throw DimensionError("covered item index out of range");
      }
    }
  }
  for (double w : item_weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ParameterError("item weights must be finite and nonnegative");
    }
  }
}

double WeightedCoverage::eval(std::span<const int> s) const {
  std::vector<char> covered(item_weights_.size(), 0);
  for (int j : s) {
    check_index(j, ground_size());
    for (int item : covers_[j]) covered[item] = 1;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (covered[i]) total += item_weights_[i];
  }
  return total;
}

double marginal_gain(std::span<const int> s, int element,
                     const SubmodularOracle& f) {
  check_index(element, f.ground_size());
  std::vector<int> with(s.begin(), s.end());
  if (std::find(with.begin(), with.end(), element) != with.end()) {
    return 0.0;
  }
  with.push_back(element);
  return f.eval(with) - f.eval(s);
}

}  // namespace submax
