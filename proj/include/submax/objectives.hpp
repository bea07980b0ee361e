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

#ifndef SUBMAX_OBJECTIVES_HPP_
#define SUBMAX_OBJECTIVES_HPP_

#include <span>
#include <vector>

#include "submax/errors.hpp"

namespace submax {

/// Monotone submodular set function over ground elements {0,...,n-1}.
///
/// Contract: eval({}) == 0, eval is monotone and has diminishing returns.
/// Implementations are immutable after construction and eval is reentrant,
/// so oracles may be shared freely across workers. eval accepts any
/// duplicate-free index list; order does not matter.
class SubmodularOracle {
 public:
  virtual ~SubmodularOracle() = default;

  virtual double eval(std::span<const int> s) const = 0;
  virtual int ground_size() const = 0;
};

/// Row-major client-by-element similarity matrix with entries in [0,1].
class KernelMatrix {
 public:
  KernelMatrix() = default;

  /// Throws ParameterError when an entry is non-finite or outside [0,1].
  KernelMatrix(int clients, int elements, std::vector<double> values);

  int clients() const { return clients_; }
  int elements() const { return elements_; }
  double at(int client, int element) const {
    return values_[static_cast<std::size_t>(client) * elements_ + element];
  }

 private:
  int clients_ = 0;
  int elements_ = 0;
  std::vector<double> values_;
};

/// Feature vectors, one row per element, plus the RBF bandwidth that turns
/// distances into similarities.
struct Embeddings {
  int n = 0;
  int dim = 0;
  std::vector<double> data;  // row-major n x dim
  double bandwidth = 1.0;

  double at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * dim + col];
  }
};

/// Similarity matrix K(p,q) = exp(-||z_p - z_q||^2 / (2 sigma^2)) with
/// clients = elements. Symmetric, unit diagonal, entries in (0,1].
/// Throws ParameterError when the bandwidth is not positive.
KernelMatrix rbf_kernel(const Embeddings& embeddings);

/// f(S) = sum over clients of the best similarity to any selected element;
/// the empty max contributes 0. Clients default to the elements themselves
/// (self-coverage) but any external client rows work.
class FacilityLocation : public SubmodularOracle {
 public:
  explicit FacilityLocation(KernelMatrix kernel);

  double eval(std::span<const int> s) const override;
  int ground_size() const override { return kernel_.elements(); }
  const KernelMatrix& kernel() const { return kernel_; }

 private:
  KernelMatrix kernel_;
};

/// f(S) = (1/n_users) * sum over users of the best rating inside S.
/// Missing ratings are zeros.
class RatingObjective : public SubmodularOracle {
 public:
  /// ratings is row-major users x items, all entries >= 0.
  RatingObjective(int users, int items, std::vector<double> ratings);

  double eval(std::span<const int> s) const override;
  int ground_size() const override { return items_; }
  int users() const { return users_; }
  double rating(int user, int item) const {
    return ratings_[static_cast<std::size_t>(user) * items_ + item];
  }

 private:
  int users_ = 0;
  int items_ = 0;
  std::vector<double> ratings_;
};

/// Additive function f(S) = sum of per-element weights. Total curvature 0.
class ModularObjective : public SubmodularOracle {
 public:
  /// Throws ParameterError on a negative weight.
  explicit ModularObjective(std::vector<double> weights);

  double eval(std::span<const int> s) const override;
  int ground_size() const override {
    return static_cast<int>(weights_.size());
  }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

/// Weighted coverage: element j covers a fixed item subset and f(S) is the
/// total weight of items covered by the union.
class WeightedCoverage : public SubmodularOracle {
 public:
  /// covers[j] lists the items element j covers; item_weights are >= 0.
  WeightedCoverage(std::vector<std::vector<int>> covers,
                   std::vector<double> item_weights);

  double eval(std::span<const int> s) const override;
  int ground_size() const override { return static_cast<int>(covers_.size()); }

 private:
  std::vector<std::vector<int>> covers_;
  std::vector<double> item_weights_;
};

/// f(S u {j}) - f(S). Nonnegative for monotone f.
double marginal_gain(std::span<const int> s, int element,
                     const SubmodularOracle& f);

}  // namespace submax

#endif  // SUBMAX_OBJECTIVES_HPP_
