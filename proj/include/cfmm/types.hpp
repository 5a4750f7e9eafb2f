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

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace cfmm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Feasibility slack used for the per-AP power predicate ||mu_m||^2 <= 1 + eps.
inline constexpr double kFeasibilityTol = 1e-9;

/// Network size: M single-antenna APs serving N multicast groups of K_n users.
///
/// Users are addressed either by (group, user-in-group) or by a flat index
/// that enumerates groups in order, so group n occupies
/// [group_offset(n), group_offset(n) + K_n).
struct Dimensions {
  int num_aps = 0;
  std::vector<int> group_sizes;

  int num_groups() const { return static_cast<int>(group_sizes.size()); }

  int total_users() const {
    int total = 0;
    for (int k : group_sizes) total += k;
    return total;
  }

  int group_offset(int n) const {
    int offset = 0;
    for (int i = 0; i < n; ++i) offset += group_sizes[i];
    return offset;
  }

  int user_index(int n, int k) const { return group_offset(n) + k; }

  /// Group of every flat user index.
  std::vector<int> user_groups() const {
    std::vector<int> groups;
    groups.reserve(total_users());
    for (int n = 0; n < num_groups(); ++n) groups.insert(groups.end(), group_sizes[n], n);
    return groups;
  }

  /// Length of the stacked power-control vector (M * N).
  int num_coefficients() const { return num_aps * num_groups(); }

  void validate() const {
    if (num_aps < 1) throw std::invalid_argument("Dimensions: num_aps must be >= 1");
    if (group_sizes.empty()) throw std::invalid_argument("Dimensions: at least one group required");
    for (int k : group_sizes) {
      if (k < 1) throw std::invalid_argument("Dimensions: every group needs >= 1 user");
    }
  }

  /// N groups of K users each.
  static Dimensions uniform(int num_aps, int num_groups, int users_per_group) {
    return Dimensions{num_aps, std::vector<int>(static_cast<std::size_t>(num_groups), users_per_group)};
  }

  bool operator==(const Dimensions&) const = default;
};

}  // namespace cfmm
