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

#include "submax/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "submax/rng.hpp"

namespace submax {
namespace {

void check_length(const MembershipVector& x, const SubmodularOracle& f) {
  if (static_cast<int>(x.values.size()) != f.ground_size()) {
    throw DimensionError("membership vector length does not match oracle");
  }
}

void check_probabilities(const MembershipVector& x) {
  for (double v : x.values) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw ParameterError("membership values must lie in [0,1]");
    }
  }
}

// Normalizes an optional support list to sorted unique indices; defaults to
// the full ground set.
std::vector<int> resolve_support(const std::optional<std::vector<int>>& support,
                                 int n) {
  std::vector<int> domain;
  if (support.has_value()) {
    domain = *support;
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
    for (int j : domain) {
      if (j < 0 || j >= n) {
        throw DimensionError("support index " + std::to_string(j) +
                             " out of range");
      }
    }
  } else {
    domain.resize(n);
    for (int j = 0; j < n; ++j) domain[j] = j;
  }
  return domain;
}

void require_zero_outside(const MembershipVector& x,
                          const std::vector<int>& domain) {
  std::vector<char> inside(x.values.size(), 0);
  for (int j : domain) inside[j] = 1;
  for (std::size_t j = 0; j < x.values.size(); ++j) {
    if (!inside[j] && x.values[j] != 0.0) {
      throw PreconditionError(
          "support must contain every element with nonzero membership");
    }
  }
}

// Values of f on every subset of `domain`, indexed by bitmask over the
// domain positions. One oracle call per subset.
std::vector<double> subset_value_table(const std::vector<int>& domain,
                                       const SubmodularOracle& f) {
  const int s = static_cast<int>(domain.size());
  std::vector<double> table(std::size_t{1} << s);
  std::vector<int> subset;
  subset.reserve(s);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << s); ++mask) {
    subset.clear();
    for (int b = 0; b < s; ++b) {
      if (mask >> b & 1u) subset.push_back(domain[b]);
    }
    table[mask] = f.eval(subset);
  }
  return table;
}

}  // namespace

double exact_value(const MembershipVector& x, const SubmodularOracle& f) {
  check_length(x, f);
  check_probabilities(x);
  const int n = f.ground_size();
  if (n > kEnumerationCap) {
    throw CapacityError("exact_value supports at most " +
                        std::to_string(kEnumerationCap) +
                        " elements; use mc_gradient-style sampling instead");
  }
  std::vector<int> domain(n);
  for (int j = 0; j < n; ++j) domain[j] = j;
  std::vector<double> table = subset_value_table(domain, f);
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    double w = 1.0;
    for (int b = 0; b < n; ++b) {
      w *= (mask >> b & 1u) ? x.values[b] : 1.0 - x.values[b];
    }
    total += w * table[mask];
  }
  return total;
}

GradientEstimate exact_gradient(
    const MembershipVector& x, const SubmodularOracle& f,
    const std::optional<std::vector<int>>& support) {
  check_length(x, f);
  check_probabilities(x);
  const int n = f.ground_size();
  std::vector<int> domain = resolve_support(support, n);
  if (support.has_value()) require_zero_outside(x, domain);
  const int s = static_cast<int>(domain.size());
  if (s > kEnumerationCap) {
    throw CapacityError("exact_gradient enumeration domain exceeds " +
                        std::to_string(kEnumerationCap) + " elements");
  }

  std::vector<double> table = subset_value_table(domain, f);
  std::vector<int> position(n, -1);
  for (int b = 0; b < s; ++b) position[domain[b]] = b;

  GradientEstimate out;
  out.values.assign(n, 0.0);
  std::vector<int> subset;
  subset.reserve(s + 1);
  for (int j = 0; j < n; ++j) {
    const int pj = position[j];
    double g = 0.0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << s); ++mask) {
      if (pj >= 0 && (mask >> pj & 1u)) continue;  // enumerate R without j
      double w = 1.0;
      for (int b = 0; b < s; ++b) {
        if (b == pj) continue;
        w *= (mask >> b & 1u) ? x.values[domain[b]] : 1.0 - x.values[domain[b]];
      }
      if (w == 0.0) continue;
      double with_j;
      if (pj >= 0) {
        with_j = table[mask | (std::uint32_t{1} << pj)];
      } else {
        // j lies outside the enumeration domain; evaluate R u {j} directly.
        subset.clear();
        for (int b = 0; b < s; ++b) {
          if (mask >> b & 1u) subset.push_back(domain[b]);
        }
        subset.push_back(j);
        with_j = f.eval(subset);
      }
      g += w * (with_j - table[mask]);
    }
    out.values[j] = g;
  }
  return out;
}

GradientEstimate mc_gradient(const MembershipVector& x,
                             const SubmodularOracle& f,
                             const SampleConfig& cfg,
                             const std::optional<std::vector<int>>& support,
                             const std::optional<std::vector<int>>& coords) {
  check_length(x, f);
  check_probabilities(x);
  if (cfg.samples < 1) {
    throw ParameterError("Monte Carlo sample count must be at least 1");
  }
  const int n = f.ground_size();
  std::vector<int> domain = resolve_support(support, n);
  if (support.has_value()) require_zero_outside(x, domain);
  std::vector<int> requested = resolve_support(coords, n);

  std::vector<char> in_sample(n, 0);
  std::vector<int> sample;
  std::vector<int> scratch;
  sample.reserve(domain.size());
  scratch.reserve(domain.size() + 1);

  GradientEstimate out;
  out.values.assign(n, 0.0);
  out.samples_used = cfg.samples;
  out.seed = cfg.seed;

  for (int s = 0; s < cfg.samples; ++s) {
    std::mt19937_64 gen = substream(cfg.seed, static_cast<std::uint64_t>(s));
    sample.clear();
    for (int j : domain) {
      if (uniform01(gen) < x.values[j]) {
        sample.push_back(j);
        in_sample[j] = 1;
      }
    }
    const double base = f.eval(sample);
    for (int j : requested) {
      double term;
      if (in_sample[j]) {
        scratch.clear();
        for (int e : sample) {
          if (e != j) scratch.push_back(e);
        }
        term = base - f.eval(scratch);
      } else {
        scratch.assign(sample.begin(), sample.end());
        scratch.insert(std::upper_bound(scratch.begin(), scratch.end(), j), j);
        term = f.eval(scratch) - base;
      }
      out.values[j] += term;
    }
    for (int j : sample) in_sample[j] = 0;
  }
  const double inv = 1.0 / static_cast<double>(cfg.samples);
  for (int j : requested) out.values[j] *= inv;
  return out;
}

}  // namespace submax
