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

#include "cfmm/apg.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "cfmm/projection.hpp"

namespace cfmm {

void ApgConfig::validate() const {
  if (!(delta > 0)) throw std::invalid_argument("ApgConfig: delta must be > 0");
  if (!(kappa > 0 && kappa < 1)) throw std::invalid_argument("ApgConfig: kappa must be in (0, 1)");
  if (!(alpha_y0 > 0 && alpha_mu0 > 0)) throw std::invalid_argument("ApgConfig: step sizes must be > 0");
  if (max_iters < 0) throw std::invalid_argument("ApgConfig: max_iters must be >= 0");
  if (stop_window < 1) throw std::invalid_argument("ApgConfig: stop_window must be >= 1");
  if (max_backtracks < 1) throw std::invalid_argument("ApgConfig: max_backtracks must be >= 1");
  if (sigma_continuation && !(sigma_growth > 1)) {
    throw std::invalid_argument("ApgConfig: sigma_growth must be > 1");
  }
}

const char* to_string(ApgTermination t) {
  switch (t) {
    case ApgTermination::kConverged: return "converged";
    case ApgTermination::kMaxIterations: return "max_iterations";
    case ApgTermination::kCallback: return "stopped";
  }
  return "unknown";
}

namespace {

struct StepResult {
  Vector point;
  double value = 0;
  double alpha = 0;
  int backtracks = 0;
};

// Smallest l >= 0 with f(P(base + kappa^l alpha grad)) >= reference + delta ||. - base||^2.
StepResult backtrack(const AscentObjective& objective, const Vector& base, const Vector& grad, double reference,
                     double alpha, int num_aps, int num_groups, const ApgConfig& cfg, int iteration,
                     const char* branch) {
  StepResult out;
  double step = alpha;
  for (int l = 0; l <= cfg.max_backtracks; ++l) {
    out.point = base + step * grad;
    project_in_place(out.point, num_aps, num_groups);
    out.value = objective(out.point, nullptr);
    if (out.value >= reference + cfg.delta * (out.point - base).squaredNorm()) {
      out.alpha = step;
      out.backtracks = l;
      return out;
    }
    step *= cfg.kappa;
  }
  throw LineSearchError(fmt::format("line search at {} failed after {} backtracks (iteration {})", branch,
                                    cfg.max_backtracks, iteration),
                        iteration, step, base, reference);
}

}  // namespace

ApgRun maximize_apg(const AscentObjective& objective, const Vector& x0, int num_aps, int num_groups,
                    const ApgConfig& cfg, const IterateCallback& on_iterate) {
  cfg.validate();
  if (!is_feasible(x0, num_aps, num_groups)) throw std::invalid_argument("maximize_apg: x0 must lie in S");

  ApgRun run;
  Vector x = x0;
  Vector x_prev = x0;
  Vector z = x0;
  Vector grad_x;
  double fx = objective(x, &grad_x);
  double t_prev = 1.0;
  double t = 1.0;
  double alpha_y = cfg.alpha_y0;
  double alpha_mu = cfg.alpha_mu0;

  run.trace.push_back({0, fx, alpha_y, alpha_mu, 0, 0, t, false});
  run.termination = ApgTermination::kMaxIterations;
  if (on_iterate && on_iterate(0, x, fx, grad_x)) run.termination = ApgTermination::kCallback;

  Vector y;
  Vector projected_y;
  Vector grad_y;
  int iter = 0;
  while (run.termination != ApgTermination::kCallback && iter < cfg.max_iters) {
    ++iter;
    if (cfg.step_growth) {
      alpha_y /= cfg.kappa;
      alpha_mu /= cfg.kappa;
    }

    y = x + (t_prev / t) * (z - x) + ((t_prev - 1.0) / t) * (x - x_prev);
    double fy;
    if (y == x) {
      fy = fx;
      grad_y = grad_x;
    } else {
      fy = objective(y, &grad_y);
    }
    // y is in S exactly when the projection leaves it unchanged.
    projected_y = y;
    project_in_place(projected_y, num_aps, num_groups);
    const bool y_in_s = projected_y == y;
    const double y_reference = y_in_s ? fy : -std::numeric_limits<double>::infinity();

    StepResult z_step = backtrack(objective, y, grad_y, y_reference, alpha_y, num_aps, num_groups, cfg, iter, "y");
    StepResult v_step = backtrack(objective, x, grad_x, fx, alpha_mu, num_aps, num_groups, cfg, iter, "mu");
    // Against a -inf reference the first trial is always accepted, which says
    // nothing about the local curvature: keep the previous step.
    alpha_y = y_in_s ? z_step.alpha : (cfg.step_growth ? alpha_y * cfg.kappa : alpha_y);
    alpha_mu = v_step.alpha;

    const double t_next = 0.5 + std::sqrt(t * t + 0.25);
    t_prev = t;
    t = t_next;

    x_prev = x;
    z = z_step.point;
    const bool take_z = z_step.value > v_step.value;
    if (take_z) {
      x = z_step.point;
    } else {
      x = std::move(v_step.point);
    }
    fx = objective(x, &grad_x);

    run.trace.push_back({iter, fx, alpha_y, alpha_mu, z_step.backtracks, v_step.backtracks, t_prev, take_z});

    if (on_iterate && on_iterate(iter, x, fx, grad_x)) {
      run.termination = ApgTermination::kCallback;
      break;
    }
    if (iter >= cfg.stop_window &&
        std::abs(fx - run.trace[static_cast<std::size_t>(iter - cfg.stop_window)].objective) < cfg.stop_tol) {
      run.termination = ApgTermination::kConverged;
      break;
    }
  }

  run.x = std::move(x);
  run.objective = fx;
  run.gradient = std::move(grad_x);
  run.iterations = iter;
  return run;
}

SolveReport apg_solve(const RateModel& model, const ApgConfig& cfg, double sigma, const Vector& mu0) {
  const int num_aps = model.num_aps();
  const int num_groups = model.dims.num_groups();
  if (mu0.size() != model.dims.num_coefficients()) throw std::invalid_argument("apg_solve: mu0 has wrong length");
  if (!(mu0.array() > 0).all()) throw std::invalid_argument("apg_solve: mu0 must be strictly positive");

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  SolveReport report;
  report.solver = "apg";
  Vector mu = mu0;
  double stage_sigma = sigma;
  int iter_offset = 0;
  ApgTermination termination = ApgTermination::kMaxIterations;

  while (true) {
    const SmoothedMinRate smoothed(model, stage_sigma);
    const AscentObjective objective = [&smoothed](const Vector& x, Vector* grad) { return smoothed(x, grad); };
    ApgConfig stage_cfg = cfg;
    stage_cfg.max_iters = cfg.max_iters - iter_offset;

    const int offset = iter_offset;
    // The engine evaluates each accepted iterate (with gradient) right before
    // the callback, so the evaluator's cached rates belong to x.
    ApgRun run = maximize_apg(objective, mu, num_aps, num_groups, stage_cfg,
                              [&](int iter, const Vector&, double f, const Vector&) {
                                if (offset > 0 && iter == 0) return false;
                                const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
                                report.apg_trace.push_back(
                                    {offset + iter, f, smoothed.last_min_rate(), 0.0, 0.0, 0, 0, elapsed});
                                return false;
                              });
    // Step sizes and backtrack counts come from the engine's own trace.
    for (const auto& it : run.trace) {
      if (offset > 0 && it.iter == 0) continue;
      auto& row = report.apg_trace[static_cast<std::size_t>(offset + it.iter)];
      row.alpha_y = it.alpha_y;
      row.alpha_mu = it.alpha_mu;
      row.backtracks_y = it.backtracks_y;
      row.backtracks_mu = it.backtracks_mu;
    }
    mu = run.x;
    iter_offset += run.iterations;
    termination = run.termination;
    report.f_sigma = run.objective;

    if (!cfg.sigma_continuation || stage_sigma >= cfg.sigma_max || iter_offset >= cfg.max_iters) break;
    stage_sigma = std::min(stage_sigma * cfg.sigma_growth, cfg.sigma_max);
  }

  report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  report.mu = mu;
  report.rates = user_rates(model, mu);
  report.f_true = report.rates.min();
  report.iterations = iter_offset;
  report.termination = to_string(termination);
  return report;
}

SolveReport apg_solve(const RateModel& model, const ApgConfig& cfg, double sigma) {
  return apg_solve(model, cfg, sigma, PowerControl::equal_power(model.num_aps(), model.dims.num_groups()).values());
}

}  // namespace cfmm
