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

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfmm/report.hpp"
#include "cfmm/smoothing.hpp"

namespace cfmm {

/// Parameters of the monotone accelerated projected gradient method.
struct ApgConfig {
  double delta = 1e-5;  // sufficient-increase constant
  double kappa = 0.45;  // backtracking factor
  double alpha_y0 = 1.0;
  double alpha_mu0 = 1.0;
  int max_iters = 5000;
  double stop_tol = 1e-6;  // |f^n - f^(n - stop_window)| below this stops
  int stop_window = 20;
  int max_backtracks = 60;
  /// Divide both step sizes by kappa once at the start of each iteration,
  /// so steps can recover after a run of backtracks.
  bool step_growth = true;

  /// Optional sigma continuation: after each converged stage multiply sigma by
  /// sigma_growth until sigma_max. Off by default.
  bool sigma_continuation = false;
  double sigma_growth = 10.0;
  double sigma_max = 1e4;

  void validate() const;
};

/// Thrown when backtracking exceeds max_backtracks, which only happens if the
/// objective and gradient are inconsistent. Carries the state at failure.
class LineSearchError : public std::runtime_error {
 public:
  LineSearchError(const std::string& what, int iteration, double alpha, Vector point, double objective)
      : std::runtime_error(what), iteration(iteration), alpha(alpha), point(std::move(point)), objective(objective) {}

  int iteration;
  double alpha;
  Vector point;
  double objective;
};

/// Objective to maximise over S. Returns f(x); fills the gradient when non-null.
using AscentObjective = std::function<double(const Vector& x, Vector* gradient)>;

/// Called after every accepted iterate; return true to stop.
using IterateCallback = std::function<bool(int iter, const Vector& x, double f, const Vector& gradient)>;

struct ApgIterate {
  int iter = 0;
  double objective = 0;
  double alpha_y = 0;
  double alpha_mu = 0;
  int backtracks_y = 0;
  int backtracks_mu = 0;
  double momentum = 1;  // t_n
  bool took_extrapolated = false;
};

enum class ApgTermination { kConverged, kMaxIterations, kCallback };

const char* to_string(ApgTermination t);

struct ApgRun {
  Vector x;
  double objective = 0;
  Vector gradient;
  int iterations = 0;
  ApgTermination termination = ApgTermination::kMaxIterations;
  std::vector<ApgIterate> trace;  // trace[0] is the starting point
};

/// Monotone APG with extrapolation and two parallel backtracking line searches.
///
/// Each iteration extrapolates
///   y = x + (t_{n-1}/t_n)(z - x) + ((t_{n-1} - 1)/t_n)(x - x_prev),
/// searches z+ = P(y + kappa^l alpha_y grad f(y)) until
///   f(z+) >= f(y) + delta ||z+ - y||^2,
/// does the same from x to get v+, and keeps z+ only if f(z+) > f(v+).
/// The test at y treats f(y) as -inf when y lies outside S, since the
/// composite objective includes the indicator of S. The v-branch alone
/// guarantees f(x_{n+1}) >= f(x_n).
///
/// x0 must lie in S. t_0 = t_1 = 1 and t_{n+1} = 0.5 + sqrt(t_n^2 + 0.25).
ApgRun maximize_apg(const AscentObjective& objective, const Vector& x0, int num_aps, int num_groups,
                    const ApgConfig& cfg, const IterateCallback& on_iterate = {});

/// Maximises the smoothed min-rate from mu0 (feasible, strictly positive).
/// With cfg.sigma_continuation the trace spans several sigma values and
/// f_sigma is only monotone within a stage.
SolveReport apg_solve(const RateModel& model, const ApgConfig& cfg, double sigma, const Vector& mu0);

/// apg_solve started from the equal-power point.
SolveReport apg_solve(const RateModel& model, const ApgConfig& cfg, double sigma);

}  // namespace cfmm
