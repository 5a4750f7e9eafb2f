// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The cellfree-maxmin Authors
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

#include <doctest.h>

#include <cmath>
#include <random>

#include "cfmm/projection.hpp"
#include "cfmm/rates.hpp"
#include "helpers.hpp"

using namespace cfmm;

TEST_SUITE("projection") {
  TEST_CASE("interior point is unchanged") {
    const Eigen::Vector2d x(0.3, 0.4);
    const Vector p = project_feasible(x, 1, 2).values();
    CHECK(p == x);
  }

  TEST_CASE("clip then rescale") {
    const Eigen::Vector2d x(-1.0, 2.0);
    const Vector p = project_feasible(x, 1, 2).values();
    CHECK(p[0] == 0.0);
    CHECK(p[1] == 1.0);
  }

  TEST_CASE("stacked layout: each AP is projected on its own") {
    // M = 2, N = 2: AP 0 holds (x[0], x[2]), AP 1 holds (x[1], x[3]).
    Eigen::Vector4d x(3.0, 0.1, 4.0, -0.2);
    const Vector p = project_feasible(x, 2, 2).values();
    CHECK(p[0] == doctest::Approx(0.6));
    CHECK(p[2] == doctest::Approx(0.8));
    CHECK(p[1] == 0.1);
    CHECK(p[3] == 0.0);
  }

  TEST_CASE("satisfies the optimality conditions on random vectors") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      Vector x(10);
      for (auto& v : x) v = normal(rng) * (trial % 3 == 0 ? 0.1 : 1.0);
      const Vector u = project_feasible(x, 1, 10).values();
      CHECK(testing::kkt_violation(x, u) < 1e-8);
    }
  }

  TEST_CASE("idempotent and non-expansive") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      Vector x(12);
      Vector y(12);
      for (auto& v : x) v = normal(rng);
      for (auto& v : y) v = normal(rng);
      const Vector px = project_feasible(x, 4, 3).values();
      const Vector py = project_feasible(y, 4, 3).values();
      CHECK(project_feasible(px, 4, 3).values() == px);
      CHECK((px - py).norm() <= (x - y).norm() + 1e-12);
      CHECK(is_feasible(px, 4, 3));
    }
  }

  TEST_CASE("idempotent on points just outside the ball") {
    for (double scale : {1.0 + 1e-16, 1.0 + 1e-15, 1.0 + 1e-12, 1.0 - 1e-16}) {
      Eigen::Vector3d x(0.6, 0.0, 0.8);
      x *= scale;
      const Vector p = project_feasible(x, 1, 3).values();
      CHECK(project_feasible(p, 1, 3).values() == p);
    }
  }

  TEST_CASE("nan coordinates are clipped to zero") {
    Eigen::Vector2d x(std::nan(""), 0.5);
    const Vector p = project_feasible(x, 1, 2).values();
    CHECK(p[0] == 0.0);
    CHECK(p[1] == 0.5);
  }

  TEST_CASE("linear minimum over the feasible set") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      Vector c(6);
      for (auto& v : c) v = normal(rng);
      const double closed = min_linear_over_feasible(c, 3, 2);
      // Random feasible points never beat the closed form ...
      for (int s = 0; s < 500; ++s) {
        Vector u(6);
        for (auto& v : u) v = unit(rng);
        u = project_feasible(u, 3, 2).values();
        CHECK(c.dot(u) >= closed - 1e-12);
      }
      // ... and the minimiser -[-c]_+ / ||[-c]_+|| per AP attains it.
      Vector best = Vector::Zero(6);
      for (int m = 0; m < 3; ++m) {
        Eigen::Vector2d neg(std::max(0.0, -c[m]), std::max(0.0, -c[3 + m]));
        if (neg.norm() > 0) neg /= neg.norm();
        best[m] = neg[0];
        best[3 + m] = neg[1];
      }
      CHECK(c.dot(best) == doctest::Approx(closed).epsilon(1e-12));
    }
  }
}
