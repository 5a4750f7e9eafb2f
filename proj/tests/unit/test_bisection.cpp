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
#include <sstream>

#include "cfmm/bisection.hpp"
#include "helpers.hpp"

using namespace cfmm;

TEST_SUITE("bisection") {
  TEST_CASE("residual sign matches the rate level") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> level(0.0, 3.0);
    const NetworkInstance inst = generate_instance(Dimensions{6, {2, 3}}, PhysicalConfig{}, 2);
    const RateModel model = build_rate_model(inst);
    const SocSystem system = build_soc_system(model);
    for (int i = 0; i < 200; ++i) {
      const Vector mu = testing::random_feasible_point(6, 2, rng);
      const double t = level(rng);
      const Vector r = soc_residual(system, mu, t);
      const RateVector rates = user_rates(model, mu);
      for (int u = 0; u < 5; ++u) CHECK((r[u] <= 0) == (rates.rates[u] >= t));
    }
  }

  TEST_CASE("residual at level zero and at zero power") {
    const NetworkInstance inst = generate_instance(Dimensions{4, {2, 1}}, PhysicalConfig{}, 3);
    const SocSystem system = build_soc_system(build_rate_model(inst));
    const Vector mu = Vector::Constant(8, 0.3);
    CHECK((soc_residual(system, mu, 0.0).array() <= 0).all());
    const Vector r = soc_residual(system, Vector::Zero(8), 0.7);
    for (int u = 0; u < 3; ++u) CHECK(r[u] == doctest::Approx(std::sqrt(std::expm1(0.7))).epsilon(1e-15));
  }

  TEST_CASE("zero-interference bound dominates every rate") {
    std::mt19937_64 rng(2);
    const NetworkInstance inst = generate_instance(Dimensions{8, {2, 2}}, PhysicalConfig{}, 4);
    const RateModel model = build_rate_model(inst);
    const double bound = zero_interference_upper_bound(build_soc_system(model));
    double expected = 0;
    for (int u = 0; u < 4; ++u) {
      const double s = model.sqrt_gamma.col(u).sum();
      expected = std::max(expected, std::log1p(std::numbers::pi * model.rho_bar / 4 * s * s));
    }
    CHECK(bound == doctest::Approx(expected).epsilon(1e-13));
    for (int i = 0; i < 100; ++i) {
      CHECK(user_rates(model, testing::random_feasible_point(8, 2, rng)).rates.maxCoeff() <= bound);
    }
  }

  TEST_CASE("oracle on trivial levels") {
    const NetworkInstance inst = generate_instance(Dimensions{10, {2, 2}}, PhysicalConfig{}, 5);
    const RateModel model = build_rate_model(inst);
    const SocSystem system = build_soc_system(model);
    const Vector epa = PowerControl::equal_power(10, 2).values();

    const OracleResult at_zero = feasibility_oracle(system, 0.0, 1e-6, 1000, epa);
    CHECK(at_zero.status == OracleStatus::kFeasible);
    CHECK(is_feasible(at_zero.mu, 10, 2));

    const double epa_level = epa_rates(model).min();
    const OracleResult at_epa = feasibility_oracle(system, epa_level, 1e-6, 1000, epa);
    CHECK(at_epa.status == OracleStatus::kFeasible);
    CHECK(at_epa.max_residual <= 1e-6);

    const double above = zero_interference_upper_bound(system) + 0.1;
    const OracleResult too_high = feasibility_oracle(system, above, 1e-6, 20000, epa);
    CHECK(too_high.status == OracleStatus::kInfeasible);
    CHECK(too_high.lower_bound > -1e-6);
  }

  TEST_CASE("oracle lower bound never exceeds the achieved residual") {
    const NetworkInstance inst = generate_instance(Dimensions{10, {2, 2}}, PhysicalConfig{}, 6);
    const RateModel model = build_rate_model(inst);
    const SocSystem system = build_soc_system(model);
    const Vector epa = PowerControl::equal_power(10, 2).values();
    const SolveReport solved = bisection_solve(model, BisectionConfig{});
    for (double t : {0.5 * solved.t_lower, solved.t_upper + 0.05, 2 * solved.t_upper}) {
      const OracleResult res = feasibility_oracle(system, t, 1e-6, 5000, epa);
      CHECK(res.lower_bound <= res.max_residual + 1e-12);
    }
  }

  TEST_CASE("single AP and user: optimum is full power") {
    const NetworkInstance inst = generate_instance(Dimensions{1, {1}}, PhysicalConfig{}, 7);
    const RateModel model = build_rate_model(inst);
    const SolveReport report = bisection_solve(model, BisectionConfig{});
    const double optimum = user_rate(model, Vector::Ones(1), 0, 0);
    CHECK(report.t_lower <= optimum + 1e-9);
    CHECK(report.t_upper >= optimum - 1e-4);
    CHECK(report.t_upper - report.t_lower <= 1e-4);
  }

  TEST_CASE("bracket, witness and step-count invariants") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const NetworkInstance inst = generate_instance(Dimensions{12, {3, 2}}, PhysicalConfig{}, seed);
      const RateModel model = build_rate_model(inst);
      const SocSystem system = build_soc_system(model);
      BisectionConfig cfg;
      const SolveReport report = bisection_solve(model, cfg);
      const double upper0 = zero_interference_upper_bound(system);
      CHECK(report.t_upper - report.t_lower <= cfg.tol_t);
      CHECK(report.iterations <= static_cast<int>(std::ceil(std::log2(upper0 / cfg.tol_t))));
      CHECK(report.t_lower >= epa_rates(model).min() - cfg.tol_t);
      CHECK(is_feasible(report.mu, 12, 2));
      CHECK(report.f_true >= report.t_lower - 10 * cfg.eps_soc);
      CHECK(std::isnan(report.f_sigma));

      double lo = 0;
      double hi = upper0;
      for (const auto& step : report.bisection_trace) {
        CHECK(step.t_tested == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-15));
        if (step.oracle_status == OracleStatus::kFeasible) {
          lo = step.t_tested;
        } else {
          hi = step.t_tested;
        }
        CHECK(step.t_lo == lo);
        CHECK(step.t_hi == hi);
      }
      int undecided = 0;
      for (const auto& step : report.bisection_trace) undecided += step.oracle_status == OracleStatus::kUndecided;
      CHECK(report.undecided == undecided);
    }
  }

  TEST_CASE("feasibility is monotone in the level") {
    const NetworkInstance inst = generate_instance(Dimensions{8, {2, 2}}, PhysicalConfig{}, 8);
    const RateModel model = build_rate_model(inst);
    const SocSystem system = build_soc_system(model);
    const SolveReport report = bisection_solve(model, BisectionConfig{});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int i = 0; i < 5; ++i) {
      const double t = report.t_lower * frac(rng);
      const double lower = t * frac(rng);
      const OracleResult high = feasibility_oracle(system, t, 1e-6, 20000, PowerControl::equal_power(8, 2).values());
      REQUIRE(high.status == OracleStatus::kFeasible);
      CHECK((soc_residual(system, high.mu, lower).array() <= 1e-6).all());
      const OracleResult low = feasibility_oracle(system, lower, 1e-6, 20000, PowerControl::equal_power(8, 2).values());
      CHECK(low.status == OracleStatus::kFeasible);
    }
  }

  TEST_CASE("configuration validation") {
    BisectionConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.t_upper = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    BisectionConfig tol;
    tol.tol_t = 0;
    CHECK_THROWS_AS(tol.validate(), std::invalid_argument);

    const NetworkInstance inst = generate_instance(Dimensions{4, {1, 1}}, PhysicalConfig{}, 9);
    const RateModel model = build_rate_model(inst);
    BisectionConfig unreachable;
    unreachable.t_lower = zero_interference_upper_bound(build_soc_system(model)) * 0.99;
    unreachable.oracle_max_iters = 2000;
    CHECK_THROWS_AS(bisection_solve(model, unreachable), std::invalid_argument);
  }

  TEST_CASE("trace csv") {
    std::vector<BisectionStep> steps{{1, 0.5, 0.5, 1.0, 12, OracleStatus::kFeasible, 0.25}};
    std::ostringstream out;
    write_bisection_trace_csv(out, steps, false);
    CHECK(out.str() == "step,t_lo,t_hi,oracle_iters,oracle_status,t_tested,elapsed_s\n1,0.5,1,12,feasible,0.5,\n");
  }
}
