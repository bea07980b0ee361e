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

#ifndef SUBMAX_GROUND_HPP_
#define SUBMAX_GROUND_HPP_

#include <vector>

#include "submax/errors.hpp"

namespace submax {

/// Half-open index range [begin, end). Partitions are contiguous by
/// construction, so a range is all the bookkeeping a block needs.
struct IndexRange {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool contains(int j) const { return j >= begin && j < end; }
  bool operator==(const IndexRange&) const = default;
};

/// Partitioned element universe {0,...,n-1}. Each block occupies a
/// contiguous index range; element j belongs to exactly one block.
/// Immutable after construction.
class GroundSet {
 public:
  GroundSet() = default;

  /// Builds contiguous partitions of the given sizes.
  /// Throws ParameterError when the list is empty or a size is < 1.
  explicit GroundSet(const std::vector<int>& partition_sizes);

  int size() const { return n_; }
  int partition_count() const { return static_cast<int>(partitions_.size()); }
  const std::vector<IndexRange>& partitions() const { return partitions_; }
  IndexRange partition(int i) const;

  /// Owning partition index of element j. Throws DimensionError when j is
  /// out of range.
  int partition_of(int j) const;

  bool operator==(const GroundSet&) const = default;

 private:
  int n_ = 0;
  std::vector<IndexRange> partitions_;
  std::vector<int> partition_of_;
};

/// Convenience constructor matching the CLI-facing vocabulary.
GroundSet new_ground(const std::vector<int>& partition_sizes);

/// Independence system: at most budgets[i] elements from partition i.
class PartitionMatroid {
 public:
  PartitionMatroid() = default;

  /// Throws ParameterError unless budgets.size() == N and
  /// 1 <= budgets[i] <= |P_i| for every block.
  PartitionMatroid(GroundSet ground, std::vector<int> budgets);

  const GroundSet& ground() const { return ground_; }
  const std::vector<int>& budgets() const { return budgets_; }
  int budget(int i) const { return budgets_.at(i); }
  /// Sum of all budgets; the rank of the matroid.
  int total_budget() const;

 private:
  GroundSet ground_;
  std::vector<int> budgets_;
};

/// Fractional selection point, one probability per element.
struct MembershipVector {
  std::vector<double> values;

  bool operator==(const MembershipVector&) const = default;
};

/// Discrete selection: sorted, duplicate-free element indices.
/// The constructor normalizes arbitrary input order.
struct FeasibleSet {
  std::vector<int> members;

  FeasibleSet() = default;
  explicit FeasibleSet(std::vector<int> elements);
  bool operator==(const FeasibleSet&) const = default;
};

/// Tolerance absorbed by the polytope membership test. Iterates of the
/// ascent algorithms are exact multiples of 1/T, so this only covers float
/// accumulation.
inline constexpr double kPolytopeTolerance = 1e-9;

/// True iff x satisfies the box constraints and every per-partition sum is
/// at most the budget, all within kPolytopeTolerance.
/// Throws DimensionError when x's length differs from the ground size.
bool polytope_check(const MembershipVector& x, const PartitionMatroid& m);

/// True iff every per-partition cardinality cap holds.
/// Throws DimensionError on an out-of-range member index.
bool feasibility_check(const FeasibleSet& s, const PartitionMatroid& m);

/// Indicator vector of a feasible set (1.0 on members, 0.0 elsewhere).
MembershipVector indicator_vector(const FeasibleSet& s, int n);

}  // namespace submax

#endif  // SUBMAX_GROUND_HPP_
