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
#include <numbers>
#include <random>

#include "cfmm/smoothing.hpp"
#include "helpers.hpp"

using namespace cfmm;

namespace {

// Two single-user groups behind one AP with rates 0 (group 0 silent) and 1.
RateModel two_user_model() {
  RateModel model;
  model.dims = Dimensions{1, {1, 1}};
  model.user_group = {0, 1};
  model.sqrt_gamma = Matrix::Constant(1, 2, std::sqrt(4.0 * (std::numbers::e - 1.0) / std::numbers::pi));
  model.interference = Matrix::Zero(1, 2);
  model.rho_bar = 1.0;
  return model;
}

Vector central_difference(const RateModel& model, const Vector& mu, double sigma, double h) {
  Vector fd(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    Vector plus = mu;
    Vector minus = mu;
    plus[i] += h;
    minus[i] -= h;
    fd[i] = (smooth_objective(model, plus, sigma) - smooth_objective(model, minus, sigma)) / (2 * h);
  }
  return fd;
}

}  // namespace

TEST_SUITE("smoothing") {
  TEST_CASE("two users with rates 0 and 1 at sigma = 1") {
    const RateModel model = two_user_model();
    const Eigen::Vector2d mu(0.0, 1.0);
    const RateVector rates = user_rates(model, mu);
    REQUIRE(rates.rates[0] == 0.0);
    REQUIRE(rates.rates[1] == doctest::Approx(1.0).epsilon(1e-15));
    const double expected = std::log(2.0) - std::log(1.0 + std::exp(-1.0));
    CHECK(smooth_objective(model, mu, 1.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(0.3799).epsilon(1e-4));
  }

  TEST_CASE("equal rates give the rate exactly") {
    const NetworkInstance inst =
        testing::instance_from_zeta(Dimensions{4, {2, 2}}, Matrix::Constant(4, 4, 3e-10));
    const RateModel model = build_rate_model(inst);
    const Vector mu = PowerControl::equal_power(4, 2).values();
    const double r = min_rate(model, mu);
    for (double sigma : {0.5, 100.0, 1e6}) CHECK(smooth_objective(model, mu, sigma) == r);
  }

  TEST_CASE("sandwich bound with a sharp sigma") {
    std::mt19937_64 rng(1);
    const NetworkInstance inst = generate_instance(Dimensions{10, {3, 4}}, PhysicalConfig{}, 3);
    const RateModel model = build_rate_model(inst);
    const SmoothingConfig cfg{1e4};
    for (int i = 0; i < 50; ++i) {
      const Vector mu = testing::random_feasible_point(10, 2, rng);
      const double f = min_rate(model, mu);
      const double fs = smooth_objective(model, mu, cfg.sigma);
      CHECK(fs >= f);
      CHECK(fs <= f + cfg.bound(7));
    }
  }

  TEST_CASE("gradient matches central differences") {
    std::mt19937_64 rng(2);
    const NetworkInstance inst = generate_instance(Dimensions::uniform(6, 2, 2), PhysicalConfig{}, 5);
    const RateModel model = build_rate_model(inst);
    for (int i = 0; i < 20; ++i) {
      Vector mu = testing::random_feasible_point(6, 2, rng);
      mu.array() += 1e-3;  // stay away from the boundary of the domain of the difference stencil
      const Vector grad = smooth_gradient(model, mu, 100.0);
      const Vector fd = central_difference(model, mu, 100.0, 1e-6);
      CHECK((grad - fd).norm() / grad.norm() < 1e-5);
    }
  }

  TEST_CASE("evaluator returns the same value and gradient as the free functions") {
    std::mt19937_64 rng(3);
    const NetworkInstance inst = generate_instance(Dimensions{7, {2, 3}}, PhysicalConfig{}, 6);
    const RateModel model = build_rate_model(inst);
    const SmoothedMinRate evaluator(model, 100.0);
    const Vector mu = testing::random_feasible_point(7, 2, rng);
    Vector grad;
    const double value = evaluator(mu, &grad);
    CHECK(value == doctest::Approx(smooth_objective(model, mu, 100.0)).epsilon(1e-14));
    CHECK((grad - smooth_gradient(model, mu, 100.0)).norm() <= 1e-12 * grad.norm());
    CHECK(evaluator.last_min_rate() == min_rate(model, mu));
  }

  TEST_CASE("single user: smooth gradient is the rate gradient") {
    const NetworkInstance inst = generate_instance(Dimensions{5, {1}}, PhysicalConfig{}, 7);
    const RateModel model = build_rate_model(inst);
    const Vector mu = Vector::Constant(5, 0.4);
    for (double sigma : {1.0, 100.0}) {
      const Vector direct = user_rate_gradient(model, mu, 0, 0);
      CHECK((smooth_gradient(model, mu, sigma) - direct).norm() <= 1e-14 * direct.norm());
      CHECK(smooth_objective(model, mu, sigma) == doctest::Approx(user_rate(model, mu, 0, 0)).epsilon(1e-14));
    }
  }

  TEST_CASE("per-user gradients are block sparse and vanish on a silent group") {
    const NetworkInstance inst = generate_instance(Dimensions{4, {2, 2}}, PhysicalConfig{}, 8);
    const RateModel model = build_rate_model(inst);
    Vector mu = Vector::Constant(8, 0.5);
    const Vector g = user_rate_gradient(model, mu, 1, 0);
    CHECK(g.head(4).norm() == 0.0);
    CHECK(g.tail(4).norm() > 0.0);

    mu.head(4).setZero();
    CHECK(user_rate_gradient(model, mu, 0, 1).norm() == 0.0);
  }

  TEST_CASE("large rate differences do not overflow") {
    const RateModel model = two_user_model();
    const Eigen::Vector2d mu(0.0, 1.0);
    const double value = smooth_objective(model, mu, 1e5);
    CHECK(std::isfinite(value));
    CHECK(value == doctest::Approx(std::log(2.0) / 1e5).epsilon(1e-9));
  }
}
