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

#include "cfmm/rates.hpp"
#include "cfmm/types.hpp"

namespace cfmm {

/// Euclidean projection onto S = {mu >= 0, ||mu_m|| <= 1 for every AP m}.
///
/// S is a product of per-AP sets, so each AP slice is projected on its own:
/// clip to the nonnegative orthant, then rescale onto the unit ball if the
/// clipped slice is longer than one. For the intersection of the orthant with
/// a ball centred at the origin, this two-step composition is the exact projection.
void project_in_place(Eigen::Ref<Vector> x, int num_aps, int num_groups);

PowerControl project_feasible(const Vector& x, int num_aps, int num_groups);

/// min_{u in S} c^T u, in closed form: -sum_m ||[-c_m]_+||.
double min_linear_over_feasible(const Vector& c, int num_aps, int num_groups);

}  // namespace cfmm
