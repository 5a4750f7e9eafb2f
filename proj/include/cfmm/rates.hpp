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

#include <iosfwd>
#include <utility>
#include <vector>

#include "cfmm/netgen.hpp"
#include "cfmm/types.hpp"

namespace cfmm {

/// Square-root power-control coefficients mu_mn = sqrt(eta_mn), stacked as
/// N group blocks of length M: index n * M + m.
class PowerControl {
 public:
  PowerControl(int num_aps, int num_groups, Vector mu);

  /// Equal power allocation, mu_mn = 1 / sqrt(N).
  static PowerControl equal_power(int num_aps, int num_groups);

  const Vector& values() const { return mu_; }
  int num_aps() const { return num_aps_; }
  int num_groups() const { return num_groups_; }

  double at(int m, int n) const { return mu_[n * num_aps_ + m]; }
  Eigen::VectorBlock<const Vector> group_block(int n) const { return mu_.segment(n * num_aps_, num_aps_); }
  /// Coefficients of AP m across groups.
  Vector ap_slice(int m) const;

  /// mu >= 0 and ||mu_m||^2 <= 1 + eps for every AP.
  bool is_feasible(double eps = kFeasibilityTol) const;

 private:
  int num_aps_;
  int num_groups_;
  Vector mu_;
};

/// Predicate on a raw stacked vector.
bool is_feasible(const Vector& mu, int num_aps, int num_groups, double eps = kFeasibilityTol);

/// Precomputed per-user data for the closed-form rate in normalized form
///   R(mu) = ln(1 + (pi rho/4) (g^T mu_n)^2 / (rho ||A mu_n||^2 + 1)),
/// with rho = rho_d / sigma^2, g = sqrt(gamma) and A = diag(sqrt(N zeta - pi/4 gamma)).
struct RateModel {
  Dimensions dims;
  std::vector<int> user_group;
  Matrix sqrt_gamma;   // M x U
  Matrix interference; // M x U, squared diagonal of A: N zeta - pi/4 gamma
  double rho_bar = 0;  // rho_d / sigma^2

  int num_aps() const { return dims.num_aps; }
  int num_users() const { return static_cast<int>(user_group.size()); }
  /// Diagonal of A for every user (M x U).
  Matrix a_diagonal() const { return interference.array().sqrt(); }
};

RateModel build_rate_model(const NetworkInstance& instance);
/// Throws std::domain_error if any N zeta - pi/4 gamma is negative.
RateModel build_rate_model(const Dimensions& dims, const Matrix& zeta, const Matrix& gamma,
                           double rho_bar);

/// Per-user rates in nats/s/Hz, flat user order.
struct RateVector {
  Dimensions dims;
  Vector rates;

  double at(int n, int k) const { return rates[dims.user_index(n, k)]; }
  double min() const { return rates.minCoeff(); }
  /// Lexicographically first (group, user) attaining the minimum.
  std::pair<int, int> argmin() const;
};

double user_rate(const RateModel& model, const Vector& mu, int n, int k);
RateVector user_rates(const RateModel& model, const Vector& mu);
double min_rate(const RateModel& model, const Vector& mu);
std::pair<int, int> argmin_user(const RateModel& model, const Vector& mu);

/// Rates at the equal-power point.
RateVector epa_rates(const RateModel& model);

/// Equal-power rate evaluated from zeta and gamma directly, without going
/// through the mu parametrisation.
RateVector epa_rates_direct(const NetworkInstance& instance);

/// Closed form in terms of eta, evaluated from the instance (sigma^2 kept
/// explicit). Same value as user_rate at mu = sqrt(eta).
double user_rate_eta(const NetworkInstance& instance, const Vector& eta, int n, int k);

/// Rate with the cross-group interference written per group,
///   rho sum_m eta_mn (zeta - pi/4 gamma) + rho sum_{n' != n} sum_m eta_mn' zeta + sigma^2,
/// which is what the hardening bound evaluates to for arbitrary eta. It agrees
/// with user_rate_eta whenever eta_mn is the same for every group at each AP.
double user_rate_eta_per_group_interference(const NetworkInstance& instance, const Vector& eta,
                                            int n, int k);

inline double nats_to_bits(double nats) { return nats * 1.4426950408889634; }

/// CSV rows: group,user,rate_nats,rate_bits.
void write_rates_csv(std::ostream& out, const RateVector& rates);

}  // namespace cfmm
