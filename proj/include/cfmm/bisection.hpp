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

#include <optional>
#include <vector>

#include "cfmm/apg.hpp"
#include "cfmm/rates.hpp"
#include "cfmm/report.hpp"

namespace cfmm {

/// Per-user second-order cone data for the level constraint R_u(mu) >= t:
///   signal_coef_u^T mu_n >= sqrt(e^t - 1) * sqrt(||diag(cone_diag_u) mu_n||^2 + 1).
struct SocSystem {
  Dimensions dims;
  std::vector<int> user_group;
  Matrix signal_coef;  // M x U, sqrt(pi rho / 4) * sqrt(gamma)
  Matrix cone_diag;    // M x U, sqrt(rho) * diag(A)

  int num_aps() const { return dims.num_aps; }
  int num_users() const { return static_cast<int>(user_group.size()); }
};

SocSystem build_soc_system(const RateModel& model);

/// RHS - LHS of every user's cone constraint. The user satisfies the
/// constraint iff its residual is <= 0. Each entry is convex in mu.
Vector soc_residual(const SocSystem& system, const Vector& mu, double t);

/// max_u ln(1 + (sum_m signal_coef_mu)^2): every rate is below this, since the
/// denominator is at least one and mu_n <= 1 elementwise on S.
double zero_interference_upper_bound(const SocSystem& system);

struct BisectionConfig {
  double t_lower = 0.0;
  std::optional<double> t_upper;  // defaults to zero_interference_upper_bound
  double tol_t = 1e-4;
  double eps_soc = 1e-6;
  int oracle_max_iters = 20000;
  ApgConfig oracle_apg = default_oracle_apg();

  static ApgConfig default_oracle_apg();
  void validate() const;
};

struct OracleResult {
  OracleStatus status = OracleStatus::kUndecided;
  Vector mu;                // best point found (a witness when feasible)
  double max_residual = 0;  // at mu
  double lower_bound = 0;   // certified lower bound on min_S max_u residual
  int iterations = 0;
};

/// Decides whether some mu in S has every residual <= eps_soc.
///
/// Minimises the log-sum-exp upper bound of the max residual over S with the
/// APG engine, sharpening the smoothing in stages. Along the way it keeps a
/// certified lower bound on min_S max_u residual: for softmax weights lambda,
///   min_S max_u r_u >= sum lambda_u r_u(mu) + min_{u' in S} grad^T (u' - mu)
/// by convexity, and the linear minimum over S has a closed form.
/// Returns kFeasible with a witness when max residual <= eps_soc, kInfeasible
/// once the lower bound exceeds -eps_soc, kUndecided when the budget runs out.
OracleResult feasibility_oracle(const SocSystem& system, double t, double eps_soc, int max_iters,
                                const Vector& warm_start, const ApgConfig& apg = BisectionConfig::default_oracle_apg());

/// Bisection on the epigraph level t. Undecided oracle calls count as
/// infeasible, which can only lower the reported optimum.
SolveReport bisection_solve(const RateModel& model, const BisectionConfig& cfg);
SolveReport bisection_solve(const SocSystem& system, const RateModel& model, const BisectionConfig& cfg);

}  // namespace cfmm
