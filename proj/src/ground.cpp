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

#include "submax/ground.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace submax {

GroundSet::GroundSet(const std::vector<int>& partition_sizes) {
  if (partition_sizes.empty()) {
    throw ParameterError("ground set needs at least one partition");
  }
  int next = 0;
  partitions_.reserve(partition_sizes.size());
  for (std::size_t i = 0; i < partition_sizes.size(); ++i) {
    int size = partition_sizes[i];
    if (size < 1) {
      throw ParameterError("partition " + std::to_string(i) +
                           " has non-positive size " + std::to_string(size));
    }
    partitions_.push_back(IndexRange{next, next + size});
    next += size;
  }
  n_ = next;
  partition_of_.resize(n_);
  for (int i = 0; i < partition_count(); ++i) {
    for (int j = partitions_[i].begin; j < partitions_[i].end; ++j) {
      partition_of_[j] = i;
    }
  }
}

IndexRange GroundSet::partition(int i) const {
  if (i < 0 || i >= partition_count()) {
    throw DimensionError("partition index " + std::to_string(i) +
                         " out of range");
  }
  return partitions_[i];
}

int GroundSet::partition_of(int j) const {
  if (j < 0 || j >= n_) {
    throw DimensionError("element index " + std::to_string(j) +
                         " out of range");
  }
  return partition_of_[j];
}

GroundSet new_ground(const std::vector<int>& partition_sizes) {
  return GroundSet(partition_sizes);
}

PartitionMatroid::PartitionMatroid(GroundSet ground, std::vector<int> budgets)
    : ground_(std::move(ground)), budgets_(std::move(budgets)) {
  if (static_cast<int>(budgets_.size()) != ground_.partition_count()) {
    throw ParameterError("budget list length " +
                         std::to_string(budgets_.size()) +
                         " does not match partition count " +
                         std::to_string(ground_.partition_count()));
  }
  for (int i = 0; i < ground_.partition_count(); ++i) {
    if (budgets_[i] < 1) {
      throw ParameterError("budget for partition " + std::to_string(i) +
                           " must be at least 1");
    }
    if (budgets_[i] > ground_.partition(i).size()) {
      throw ParameterError("budget for partition " + std::to_string(i) +
                           " exceeds its size");
    }
  }
}

int PartitionMatroid::total_budget() const {
  return std::accumulate(budgets_.begin(), budgets_.end(), 0);
}

FeasibleSet::FeasibleSet(std::vector<int> elements)
    : members(std::move(elements)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool polytope_check(const MembershipVector& x, const PartitionMatroid& m) {
  const GroundSet& ground = m.ground();
  if (static_cast<int>(x.values.size()) != ground.size()) {
    throw DimensionError("membership vector length " +
                         std::to_string(x.values.size()) +
                         " does not match ground size " +
                         std::to_string(ground.size()));
  }
  for (double v : x.values) {
    if (!(v >= -kPolytopeTolerance && v <= 1.0 + kPolytopeTolerance)) {
      return false;
    }
  }
  for (int i = 0; i < ground.partition_count(); ++i) {
    IndexRange part = ground.partition(i);
    double sum = 0.0;
    for (int j = part.begin; j < part.end; ++j) sum += x.values[j];
    if (sum > static_cast<double>(m.budget(i)) + kPolytopeTolerance) {
      return false;
    }
  }
  return true;
}

bool feasibility_check(const FeasibleSet& s, const PartitionMatroid& m) {
  const GroundSet& ground = m.ground();
  std::vector<int> counts(ground.partition_count(), 0);
  for (int j : s.members) {
    if (j < 0 || j >= ground.size()) {
      throw DimensionError("set member " + std::to_string(j) +
                           " out of range");
    }
    ++counts[ground.partition_of(j)];
  }
  for (int i = 0; i < ground.partition_count(); ++i) {
    if (counts[i] > m.budget(i)) return false;
  }
  return true;
}

MembershipVector indicator_vector(const FeasibleSet& s, int n) {
  MembershipVector x;
  x.values.assign(n, 0.0);
  for (int j : s.members) {
    if (j < 0 || j >= n) {
      throw DimensionError("set member " + std::to_string(j) +
                           " out of range");
    }
    x.values[j] = 1.0;
  }
  return x;
}

}  // namespace submax
