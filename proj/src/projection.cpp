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

#include "cfmm/projection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cfmm {

void project_in_place(Eigen::Ref<Vector> x, int num_aps, int num_groups) {
  if (x.size() != static_cast<Eigen::Index>(num_aps) * num_groups) {
    throw std::invalid_argument("project_feasible: length must be M * N");
  }
  const double ball_limit = 1.0 + (2.0 * num_groups + 8.0) * std::numeric_limits<double>::epsilon();
  for (int m = 0; m < num_aps; ++m) {
    double sq = 0;
    for (int n = 0; n < num_groups; ++n) {
      double& v = x[n * num_aps + m];
      if (!(v > 0)) v = 0;
      sq += v * v;
    }
    // Slices already rescaled by a previous call carry a few ulps of rounding
    // in sq; leaving them untouched keeps the projection idempotent.
    if (sq > ball_limit) {
      const double inv = 1.0 / std::sqrt(sq);
      for (int n = 0; n < num_groups; ++n) x[n * num_aps + m] *= inv;
    }
  }
}

PowerControl project_feasible(const Vector& x, int num_aps, int num_groups) {
  Vector mu = x;
  project_in_place(mu, num_aps, num_groups);
  return PowerControl(num_aps, num_groups, std::move(mu));
}

double min_linear_over_feasible(const Vector& c, int num_aps, int num_groups) {
  double total = 0;
  for (int m = 0; m < num_aps; ++m) {
    double sq = 0;
    for (int n = 0; n < num_groups; ++n) {
      const double neg = -c[n * num_aps + m];
      if (neg > 0) sq += neg * neg;
    }
    total -= std::sqrt(sq);
  }
  return total;
}

}  // namespace cfmm
