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

// Test-only reference implementations. Everything here recomputes results
// by direct definition-level enumeration, independent of the library's
// faster code paths, so the two can check each other.

#ifndef SUBMAX_TESTS_ORACLES_HPP_
#define SUBMAX_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "submax/algorithms.hpp"
#include "submax/ground.hpp"
#include "submax/multilinear.hpp"
#include "submax/objectives.hpp"
#include "submax/rng.hpp"

namespace submax::testing {

// Two pairs of nearby 1-D points far from each other; bandwidth 0.5,
// partitions [2,2], unit budgets. Small enough for every exhaustive check.
inline Embeddings near_far_embeddings() {
  Embeddings e;
  e.n = 4;
  e.dim = 1;
  e.data = {0.0, 0.1, 1.0, 1.1};
  e.bandwidth = 0.5;
  return e;
}

inline FacilityLocation near_far_facility() {
  return FacilityLocation(rbf_kernel(near_far_embeddings()));
}

inline PartitionMatroid near_far_matroid() {
  return PartitionMatroid(new_ground({2, 2}), {1, 1});
}

// Definition-level multilinear value: weighted sum of f over all subsets.
inline double bf_multilinear_value(const std::vector<double>& x,
                                   const SubmodularOracle& f) {
  const int n = f.ground_size();
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<int> subset;
    double w = 1.0;
    for (int j = 0; j < n; ++j) {
      if (mask >> j & 1u) {
        subset.push_back(j);
        w *= x[j];
      } else {
        w *= 1.0 - x[j];
      }
    }
    total += w * f.eval(subset);
  }
  return total;
}

// Definition-level gradient: for each coordinate, expectation of
// f(R u {j}) - f(R) with R enumerated over the other coordinates.
inline std::vector<double> bf_multilinear_gradient(
    const std::vector<double>& x, const SubmodularOracle& f) {
  const int n = f.ground_size();
  std::vector<double> g(n, 0.0);
  for (int j = 0; j < n; ++j) {
    std::vector<int> others;
    for (int p = 0; p < n; ++p) {
      if (p != j) others.push_back(p);
    }
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << (n - 1)); ++mask) {
      std::vector<int> subset;
      double w = 1.0;
      for (int b = 0; b < n - 1; ++b) {
        if (mask >> b & 1u) {
          subset.push_back(others[b]);
          w *= x[others[b]];
        } else {
          w *= 1.0 - x[others[b]];
        }
      }
      double without = f.eval(subset);
      subset.insert(std::upper_bound(subset.begin(), subset.end(), j), j);
      total += w * (f.eval(subset) - without);
    }
    g[j] = total;
  }
  return g;
}

// Full-definition curvature: minimum marginal-to-singleton ratio over every
// (set, element) pair, optionally restricting the element to one partition.
inline double bf_curvature(const SubmodularOracle& f, int restrict_begin = -1,
                           int restrict_end = -1) {
  const int n = f.ground_size();
  double best = std::numeric_limits<double>::infinity();
  for (int p = 0; p < n; ++p) {
    if (restrict_begin >= 0 && (p < restrict_begin || p >= restrict_end)) {
      continue;
    }
    double singleton = f.eval(std::vector<int>{p});
    if (singleton == 0.0) continue;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
      if (mask >> p & 1u) continue;
      std::vector<int> subset;
      for (int j = 0; j < n; ++j) {
        if (mask >> j & 1u) subset.push_back(j);
      }
      double without = f.eval(subset);
      subset.insert(std::upper_bound(subset.begin(), subset.end(), p), p);
      best = std::min(best, (f.eval(subset) - without) / singleton);
    }
  }
  return 1.0 - best;
}

// High-precision normal CDF via the ascending series
// Phi(z) = 1/2 + phi(z) * sum_k z^(2k+1) / (1*3*...*(2k+1)), z >= 0.
inline long double ref_normal_cdf(long double z) {
  if (z < 0.0L) return 1.0L - ref_normal_cdf(-z);
  const long double phi =
      std::exp(-z * z / 2.0L) / std::sqrt(6.283185307179586476925286766559L);
  long double term = z;
  long double sum = z;
  for (int k = 1; k < 500; ++k) {
    term *= z * z / static_cast<long double>(2 * k + 1);
    sum += term;
    if (term < sum * 1e-25L) break;
  }
  return 0.5L + phi * sum;
}

// Seeded random facility-location instance: up to `max_n` points in the
// plane, 2..4 partitions, unit budgets unless told otherwise.
struct RandomInstance {
  Embeddings embeddings;
  std::vector<int> partition_sizes;
};

inline RandomInstance random_facility_instance(std::uint64_t seed,
                                               int max_n = 10) {
  std::mt19937_64 gen = substream(seed, 7);
  RandomInstance inst;
  const int parts = 2 + static_cast<int>(gen() % 3);
  int n = 0;
  for (int i = 0; i < parts; ++i) {
    int remaining = max_n - n - (parts - 1 - i) * 2;
    int size = 2 + static_cast<int>(gen() % std::max(1, remaining - 1));
    size = std::min(size, 4);
    inst.partition_sizes.push_back(size);
    n += size;
  }
  inst.embeddings.n = n;
  inst.embeddings.dim = 2;
  inst.embeddings.bandwidth = 0.6 + uniform01(gen);
  for (int i = 0; i < 2 * n; ++i) {
    inst.embeddings.data.push_back(2.0 * uniform01(gen) - 1.0 +
                                   0.5 * standard_normal(gen));
  }
  return inst;
}

inline std::vector<double> random_weights(std::uint64_t seed, int n) {
  std::mt19937_64 gen = substream(seed, 11);
  std::vector<double> w(n);
  for (double& v : w) v = 0.1 + 4.9 * uniform01(gen);
  return w;
}

// Weights on a dyadic grid: every subset sum is exact in double
// arithmetic, so modular marginal ratios come out exactly 1.
inline std::vector<double> random_dyadic_weights(std::uint64_t seed, int n) {
  std::mt19937_64 gen = substream(seed, 19);
  std::vector<double> w(n);
  for (double& v : w) v = static_cast<double>(1 + gen() % 64) * 0.125;
  return w;
}

// Spot-checks normalization, monotonicity, and diminishing returns on
// random chains (A subset of B, e outside B). Returns the violation count.
inline int submodularity_violations(const SubmodularOracle& f,
                                    std::uint64_t seed, int trials,
                                    double tol = 1e-9) {
  const int n = f.ground_size();
  std::mt19937_64 gen = substream(seed, 13);
  int violations = 0;
  if (f.eval(std::vector<int>{}) != 0.0) ++violations;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<int> small, large, outside;
    for (int j = 0; j < n; ++j) {
      double u = uniform01(gen);
      if (u < 0.3) {
        small.push_back(j);
        large.push_back(j);
      } else if (u < 0.6) {
        large.push_back(j);
      } else {
        outside.push_back(j);
      }
    }
    if (outside.empty()) continue;
    int e = outside[gen() % outside.size()];
    double fs = f.eval(small);
    double fl = f.eval(large);
    if (fs > fl + tol) ++violations;  // monotone on the chain
    std::vector<int> small_e(small), large_e(large);
    small_e.insert(std::upper_bound(small_e.begin(), small_e.end(), e), e);
    large_e.insert(std::upper_bound(large_e.begin(), large_e.end(), e), e);
    double gain_small = f.eval(small_e) - fs;
    double gain_large = f.eval(large_e) - fl;
    if (gain_small + tol < gain_large) ++violations;  // diminishing returns
    if (gain_small < -tol || gain_large < -tol) ++violations;
  }
  return violations;
}

}  // namespace submax::testing

#endif  // SUBMAX_TESTS_ORACLES_HPP_
