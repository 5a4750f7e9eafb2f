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

#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "cfmm/netgen.hpp"
#include "cfmm/rates.hpp"

namespace cfmm::testing {

/// Instance with hand-picked large-scale gains; gamma and noise derived from cfg.
inline NetworkInstance instance_from_zeta(const Dimensions& dims, const Matrix& zeta,
                                          const PhysicalConfig& cfg = {}) {
  NetworkInstance inst;
  inst.dims = dims;
  inst.config = cfg;
  inst.zeta = zeta;
  inst.noise_variance_w = noise_power(cfg);
  inst.gamma = gamma_coefficients(zeta, dims, cfg);
  inst.validate();
  return inst;
}

/// Uniform random point of S: per AP a random direction in the orthant scaled
/// by a random radius in [0, 1].
inline Vector random_feasible_point(int num_aps, int num_groups, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector mu(num_aps * num_groups);
  for (int m = 0; m < num_aps; ++m) {
    double norm = 0;
    for (int n = 0; n < num_groups; ++n) {
      const double v = unit(rng);
      mu[n * num_aps + m] = v;
      norm += v * v;
    }
    const double radius = unit(rng) / std::sqrt(norm);
    for (int n = 0; n < num_groups; ++n) mu[n * num_aps + m] *= radius;
  }
  return mu;
}

// Optimality conditions of min ||u - x||^2 / 2 over {u >= 0, ||u|| <= 1}:
//   u - x + lambda u - nu = 0,  lambda, nu >= 0,  lambda (||u||^2 - 1) = 0,  nu_i u_i = 0.
// Recovers the multipliers from (x, u) and returns the worst violation.
inline double kkt_violation(const Vector& x, const Vector& u) {
  double worst = 0;
  worst = std::max(worst, -u.minCoeff());
  worst = std::max(worst, u.norm() - 1.0);
  double lambda = 0;
  int support = 0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u[i] > 1e-12) {
      lambda += (x[i] - u[i]) / u[i];
      ++support;
    }
  }
  if (support > 0) lambda /= support;
  worst = std::max(worst, -lambda);
  worst = std::max(worst, std::abs(lambda * (u.squaredNorm() - 1.0)));
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double nu = u[i] - x[i] + lambda * u[i];
    if (u[i] > 1e-12) {
      worst = std::max(worst, std::abs(nu));
    } else {
      worst = std::max(worst, -nu);
    }
  }
  return worst;
}

}  // namespace cfmm::testing
