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

#include "cfmm/harness.hpp"
#include "cfmm/monte_carlo.hpp"
#include "cfmm/rates.hpp"
#include "helpers.hpp"

using namespace cfmm;

TEST_SUITE("monte_carlo") {
  TEST_CASE("zero power gives zero gain and zero rate") {
    const NetworkInstance inst = generate_instance(Dimensions{3, {1, 2}}, PhysicalConfig{}, 1);
    const MonteCarloReport report = rate_oracle_monte_carlo(inst, Vector::Zero(6), 5000, 1, 1);
    for (const auto& u : report.users) {
      CHECK(u.mean_gain == std::complex<double>(0, 0));
      CHECK(u.gain_variance == 0.0);
      CHECK(u.interference_power == 0.0);
      CHECK(u.rate_nats == 0.0);
    }
  }

  TEST_CASE("single user matches the closed form") {
    const NetworkInstance inst = generate_instance(Dimensions{4, {1}}, PhysicalConfig{}, 2);
    const Vector eta = Vector::Ones(4);
    const MonteCarloReport report = rate_oracle_monte_carlo(inst, eta, 200000, 3);
    const auto& u = report.users.front();
    CHECK(std::abs(u.rate_nats - user_rate_eta(inst, eta, 0, 0)) <= 3 * u.rate_std_error);
  }

  TEST_CASE("mean gain is sqrt(pi)/2 times the coherent sum") {
    const NetworkInstance inst = generate_instance(Dimensions{5, {2, 1}}, PhysicalConfig{}, 4);
    const Vector eta = random_feasible_eta(inst.dims, 4);
    const MonteCarloReport report = rate_oracle_monte_carlo(inst, eta, 100000, 5);
    for (int u = 0; u < 3; ++u) {
      const auto& est = report.users[static_cast<std::size_t>(u)];
      double coherent = 0;
      for (int m = 0; m < 5; ++m) coherent += std::sqrt(eta[est.group * 5 + m] * inst.gamma(m, u));
      const double expected = std::sqrt(std::numbers::pi) / 2 * coherent;
      CHECK(std::abs(est.mean_gain.real() - expected) <= 3 * est.mean_gain_std_error);
      CHECK(std::abs(est.mean_gain.imag()) <= 3 * est.mean_gain_std_error);
    }
  }

  TEST_CASE("equal power: estimate within the confidence band of the closed form") {
    const NetworkInstance inst = generate_instance(Dimensions{8, {3, 3}}, PhysicalConfig{}, 6);
    const Vector eta = Vector::Constant(16, 0.5);
    const MonteCarloReport report = rate_oracle_monte_carlo(inst, eta, 200000, 7);
    for (const auto& u : report.users) {
      CHECK(std::abs(u.rate_nats - user_rate_eta(inst, eta, u.group, u.user)) <= 3 * u.rate_std_error);
    }
  }

  TEST_CASE("arbitrary eta: estimate within the band of the per-group interference form") {
    const NetworkInstance inst = generate_instance(Dimensions{8, {3, 3}}, PhysicalConfig{}, 8);
    const Vector eta = random_feasible_eta(inst.dims, 8);
    const MonteCarloReport report = rate_oracle_monte_carlo(inst, eta, 200000, 9);
    for (const auto& u : report.users) {
      const double closed = user_rate_eta_per_group_interference(inst, eta, u.group, u.user);
      CHECK(std::abs(u.rate_nats - closed) <= 3 * u.rate_std_error);
    }
  }

  TEST_CASE("result does not depend on the thread count") {
    const NetworkInstance inst = generate_instance(Dimensions{3, {2}}, PhysicalConfig{}, 10);
    const Vector eta = Vector::Constant(3, 0.7);
    const MonteCarloReport one = rate_oracle_monte_carlo(inst, eta, 3 * kMonteCarloChunk + 17, 11, 1);
    const MonteCarloReport four = rate_oracle_monte_carlo(inst, eta, 3 * kMonteCarloChunk + 17, 11, 4);
    for (std::size_t u = 0; u < one.users.size(); ++u) {
      CHECK(one.users[u].rate_nats == four.users[u].rate_nats);
      CHECK(one.users[u].rate_std_error == four.users[u].rate_std_error);
    }
  }

  TEST_CASE("input validation") {
    const NetworkInstance inst = generate_instance(Dimensions{2, {1}}, PhysicalConfig{}, 1);
    CHECK_THROWS_AS(rate_oracle_monte_carlo(inst, Vector::Ones(3), 100, 1), std::invalid_argument);
    CHECK_THROWS_AS(rate_oracle_monte_carlo(inst, -Vector::Ones(2), 100, 1), std::invalid_argument);
    CHECK_THROWS_AS(rate_oracle_monte_carlo(inst, Vector::Ones(2), 1, 1), std::invalid_argument);
  }
}
