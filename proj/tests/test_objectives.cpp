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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

using namespace submax;

namespace {

// Direct-summation value of the pair fixture on {0,2}, frozen from the
// kernel formula: sum over the four clients of their best similarity.
constexpr double kNearFarValue02 = 3.9603973466135107;
constexpr double kNearFarValueSingle0 = 2.2044555740027545;

}  // namespace

TEST_CASE("rbf kernel basics") {
  SUBCASE("identical points have similarity one") {
    Embeddings e;
    e.n = 2;
    e.dim = 3;
    e.data = {1.0, 2.0, 3.0, 1.0, 2.0, 3.0};
    e.bandwidth = 0.7;
    KernelMatrix k = rbf_kernel(e);
    CHECK(k.at(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("one-dimensional pair") {
    Embeddings e;
    e.n = 2;
    e.dim = 1;
    e.data = {0.0, 1.0};
    e.bandwidth = 0.5;
    KernelMatrix k = rbf_kernel(e);
    // exp(-1 / (2 * 0.25)) = exp(-2)
    CHECK(k.at(0, 1) == doctest::Approx(0.1353352832366127).epsilon(1e-12));
    CHECK(k.at(1, 0) == k.at(0, 1));
    CHECK(k.at(0, 0) == 1.0);
  }
  SUBCASE("huge bandwidth saturates") {
    Embeddings e = testing::near_far_embeddings();
    e.bandwidth = 1e6;
    KernelMatrix k = rbf_kernel(e);
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) CHECK(k.at(p, q) >= 1.0 - 1e-9);
    }
  }
  SUBCASE("bandwidth must be positive") {
    Embeddings e = testing::near_far_embeddings();
    e.bandwidth = 0.0;
    CHECK_THROWS_AS(rbf_kernel(e), ParameterError);
    e.bandwidth = -1.0;
    CHECK_THROWS_AS(rbf_kernel(e), ParameterError);
  }
}

TEST_CASE("rbf kernel is translation invariant") {
  Embeddings e;
  e.n = 5;
  e.dim = 2;
  e.bandwidth = 0.8;
  std::mt19937_64 gen = substream(21, 0);
  for (int i = 0; i < 10; ++i) e.data.push_back(uniform01(gen) * 3.0);
  Embeddings shifted = e;
  for (int p = 0; p < e.n; ++p) {
    shifted.data[2 * p] += 17.25;
    shifted.data[2 * p + 1] -= 4.5;
  }
  KernelMatrix a = rbf_kernel(e);
  KernelMatrix b = rbf_kernel(shifted);
  for (int p = 0; p < e.n; ++p) {
    for (int q = 0; q < e.n; ++q) {
      CHECK(std::abs(a.at(p, q) - b.at(p, q)) <= 1e-12);
    }
  }
}

TEST_CASE("facility location evaluation") {
  FacilityLocation fl = testing::near_far_facility();
  SUBCASE("full self-kernel selection covers every client at one") {
    std::vector<int> all{0, 1, 2, 3};
    CHECK(fl.eval(all) == doctest::Approx(4.0).epsilon(1e-15));
  }
  SUBCASE("empty selection is worthless") {
    CHECK(fl.eval(std::vector<int>{}) == 0.0);
  }
  SUBCASE("pair fixture golden value") {
    std::vector<int> s{0, 2};
    CHECK(fl.eval(s) == doctest::Approx(kNearFarValue02).epsilon(1e-14));
  }
}

TEST_CASE("facility location accepts external client rows") {
  // Three clients scored against two candidate elements.
  KernelMatrix k(3, 2, {0.9, 0.1, 0.2, 0.8, 0.5, 0.5});
  FacilityLocation f(k);
  CHECK(f.ground_size() == 2);
  CHECK(f.eval(std::vector<int>{0}) == doctest::Approx(0.9 + 0.2 + 0.5));
  CHECK(f.eval(std::vector<int>{0, 1}) == doctest::Approx(0.9 + 0.8 + 0.5));
}

TEST_CASE("modular evaluation") {
  ModularObjective f({3, 1, 2, 1});
  CHECK(f.eval(std::vector<int>{0, 2}) == 5.0);
  CHECK(f.eval(std::vector<int>{}) == 0.0);
  CHECK(f.eval(std::vector<int>{0, 1, 2, 3}) == 7.0);
  CHECK_THROWS_AS(ModularObjective({1.0, -0.5}), ParameterError);
}

TEST_CASE("marginal gains") {
  SUBCASE("modular gain is the weight") {
    ModularObjective f({3, 1, 2, 1});
    CHECK(marginal_gain(std::vector<int>{1}, 0, f) == 3.0);
    CHECK(marginal_gain(std::vector<int>{}, 2, f) == 2.0);
  }
  SUBCASE("duplicate column contributes nothing") {
    // Elements 0 and 1 share a column, so adding the twin gains zero.
    KernelMatrix k(2, 2, {0.9, 0.9, 0.4, 0.4});
    FacilityLocation f(k);
    CHECK(marginal_gain(std::vector<int>{0}, 1, f) == 0.0);
  }
  SUBCASE("gain from the empty set is the singleton value") {
    FacilityLocation fl = testing::near_far_facility();
    CHECK(marginal_gain(std::vector<int>{}, 0, fl) ==
          doctest::Approx(kNearFarValueSingle0).epsilon(1e-14));
  }
}

TEST_CASE("rating objective averages the per-user best") {
  // Two users, two items, every rating 5 -> any single item scores 5.
  RatingObjective r(2, 2, {5, 5, 5, 5});
  CHECK(r.eval(std::vector<int>{0}) == 5.0);
  CHECK(r.eval(std::vector<int>{}) == 0.0);

  RatingObjective sparse(3, 3, {4, 0, 0, 0, 2, 0, 0, 0, 1});
  CHECK(sparse.eval(std::vector<int>{0, 2}) ==
        doctest::Approx((4.0 + 0.0 + 1.0) / 3.0));
  CHECK_THROWS_AS(RatingObjective(1, 1, {-1.0}), ParameterError);
}

TEST_CASE("weighted coverage counts covered items once") {
  WeightedCoverage f({{0, 1}, {1, 2}, {3}}, {1.0, 2.0, 4.0, 8.0});
  CHECK(f.eval(std::vector<int>{0}) == 3.0);
  CHECK(f.eval(std::vector<int>{0, 1}) == 7.0);
  CHECK(f.eval(std::vector<int>{0, 1, 2}) == 15.0);
  CHECK(f.eval(std::vector<int>{}) == 0.0);
}

TEST_CASE("shipped oracles are normalized, monotone, and submodular") {
  FacilityLocation fl = testing::near_far_facility();
  CHECK(testing::submodularity_violations(fl, 1, 200) == 0);

  ModularObjective mod({3, 1, 2, 1});
  CHECK(testing::submodularity_violations(mod, 2, 200) == 0);

  RatingObjective rating(3, 4, {4, 0, 1, 0, 0, 2, 0, 5, 3, 0, 0, 1});
  CHECK(testing::submodularity_violations(rating, 3, 200) == 0);

  WeightedCoverage cover({{0, 1}, {1, 2}, {3}, {0, 3}}, {1, 2, 4, 8});
  CHECK(testing::submodularity_violations(cover, 4, 200) == 0);

  testing::RandomInstance inst = testing::random_facility_instance(42);
  FacilityLocation random_fl(rbf_kernel(inst.embeddings));
  CHECK(testing::submodularity_violations(random_fl, 5, 200) == 0);
}
