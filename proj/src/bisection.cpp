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

#include "cfmm/bisection.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cfmm/projection.hpp"

namespace cfmm {

SocSystem build_soc_system(const RateModel& model) {
  SocSystem system;
  system.dims = model.dims;
  system.user_group = model.user_group;
  system.signal_coef = std::sqrt(std::numbers::pi * model.rho_bar / 4.0) * model.sqrt_gamma;
  system.cone_diag = std::sqrt(model.rho_bar) * model.interference.array().sqrt().matrix();
  return system;
}

Vector soc_residual(const SocSystem& system, const Vector& mu, double t) {
  const int num_aps = system.num_aps();
  const double level = std::sqrt(std::expm1(t));
  Vector residual(system.num_users());
  for (int u = 0; u < system.num_users(); ++u) {
    const auto mu_n = mu.segment(system.user_group[u] * num_aps, num_aps);
    const double lhs = system.signal_coef.col(u).dot(mu_n);
    const double cone = system.cone_diag.col(u).cwiseProduct(mu_n).squaredNorm();
    residual[u] = level * std::sqrt(cone + 1.0) - lhs;
  }
  return residual;
}

double zero_interference_upper_bound(const SocSystem& system) {
  double best = 0;
  for (int u = 0; u < system.num_users(); ++u) {
    const double s = system.signal_coef.col(u).sum();
    best = std::max(best, std::log1p(s * s));
  }
  return best;
}

ApgConfig BisectionConfig::default_oracle_apg() {
  ApgConfig cfg;
  cfg.stop_window = 20;
  return cfg;
}

void BisectionConfig::validate() const {
  if (t_upper && !(t_lower < *t_upper)) throw std::invalid_argument("BisectionConfig: need t_lower < t_upper");
  if (t_lower < 0) throw std::invalid_argument("BisectionConfig: t_lower must be >= 0");
  if (!(tol_t > 0)) throw std::invalid_argument("BisectionConfig: tol_t must be > 0");
  if (!(eps_soc > 0)) throw std::invalid_argument("BisectionConfig: eps_soc must be > 0");
  if (oracle_max_iters < 1) throw std::invalid_argument("BisectionConfig: oracle_max_iters must be >= 1");
  oracle_apg.validate();
}

namespace {

// -(1/s) ln sum_u exp(s r_u(mu)), i.e. the negated smooth maximum of the
// residuals, so that the APG engine (a maximiser) drives residuals down.
class NegSmoothMaxResidual {
 public:
  NegSmoothMaxResidual(const SocSystem& system, double t)
      : system_(system),
        level_(std::sqrt(std::expm1(t))),
        cone_sq_(system.cone_diag.cwiseAbs2()),
        residual_(system.num_users()),
        root_(system.num_users()) {}

  void set_smoothing(double s) { smoothing_ = s; }
  double smoothing() const { return smoothing_; }

  double operator()(const Vector& mu, Vector* gradient) const {
    const int num_aps = system_.num_aps();
    const int num_users = system_.num_users();
    double max_r = -std::numeric_limits<double>::infinity();
    for (int u = 0; u < num_users; ++u) {
      const auto mu_n = mu.segment(system_.user_group[u] * num_aps, num_aps);
      root_[u] = std::sqrt(cone_sq_.col(u).dot(mu_n.cwiseAbs2()) + 1.0);
      residual_[u] = level_ * root_[u] - system_.signal_coef.col(u).dot(mu_n);
      max_r = std::max(max_r, residual_[u]);
    }
    double weight_sum = 0;
    double weighted = 0;
    for (int u = 0; u < num_users; ++u) {
      const double w = std::exp(smoothing_ * (residual_[u] - max_r));
      weight_sum += w;
      weighted += w * residual_[u];
    }
    last_max_residual_ = max_r;
    last_weighted_residual_ = weighted / weight_sum;

    if (gradient != nullptr) {
      gradient->setZero(mu.size());
      for (int u = 0; u < num_users; ++u) {
        const double w = std::exp(smoothing_ * (residual_[u] - max_r)) / weight_sum;
        const int n = system_.user_group[u];
        const auto mu_n = mu.segment(n * num_aps, num_aps);
        // grad r_u = level * cone^2 .* mu_n / root - signal_coef
        gradient->segment(n * num_aps, num_aps) -=
            w * ((level_ / root_[u]) * cone_sq_.col(u).cwiseProduct(mu_n) - system_.signal_coef.col(u));
      }
    }
    return -(max_r + std::log(weight_sum) / smoothing_);
  }

  double last_max_residual() const { return last_max_residual_; }
  /// sum_u lambda_u r_u at the last evaluated point, lambda = softmax(s r).
  double last_weighted_residual() const { return last_weighted_residual_; }

 private:
  const SocSystem& system_;
  double level_;
  Matrix cone_sq_;
  double smoothing_ = 1.0;
  mutable Vector residual_;
  mutable Vector root_;
  mutable double last_max_residual_ = 0;
  mutable double last_weighted_residual_ = 0;
};

}  // namespace

OracleResult feasibility_oracle(const SocSystem& system, double t, double eps_soc, int max_iters,
                                const Vector& warm_start, const ApgConfig& apg) {
  if (t < 0) throw std::invalid_argument("feasibility_oracle: t must be >= 0");
  const int num_aps = system.num_aps();
  const int num_groups = system.dims.num_groups();

  OracleResult result;
  Vector start = warm_start;
  project_in_place(start, num_aps, num_groups);
  result.mu = start;

  NegSmoothMaxResidual objective(system, t);
  const double log_terms = std::log(static_cast<double>(std::max(2, system.num_users())));
  const double scale = std::max(1.0, std::sqrt(std::expm1(t)));
  // Stage s has smoothing error log_terms / s; start at a tenth of the
  // residual scale and sharpen tenfold per stage down to eps_soc / 10.
  double smoothing = log_terms / (0.1 * scale);
  const double finest = log_terms / (0.1 * eps_soc);

  result.lower_bound = -std::numeric_limits<double>::infinity();
  result.max_residual = std::numeric_limits<double>::infinity();

  while (true) {
    objective.set_smoothing(smoothing);
    ApgConfig stage = apg;
    stage.max_iters = max_iters - result.iterations;
    stage.stop_tol = 1e-3 * log_terms / smoothing;

    const AscentObjective fn = [&objective](const Vector& x, Vector* g) { return objective(x, g); };
    ApgRun run = maximize_apg(fn, start, num_aps, num_groups, stage,
                              [&](int, const Vector& x, double, const Vector& gradient) {
                                // Cached values belong to x (evaluated with gradient just before).
                                const double max_r = objective.last_max_residual();
                                if (max_r < result.max_residual) {
                                  result.max_residual = max_r;
                                  result.mu = x;
                                }
                                if (max_r <= eps_soc) {
                                  result.status = OracleStatus::kFeasible;
                                  return true;
                                }
                                // -gradient is the lambda-weighted residual gradient.
                                const Vector psi = -gradient;
                                const double bound = objective.last_weighted_residual() - psi.dot(x) +
                                                     min_linear_over_feasible(psi, num_aps, num_groups);
                                result.lower_bound = std::max(result.lower_bound, bound);
                                if (result.lower_bound > -eps_soc) {
                                  result.status = OracleStatus::kInfeasible;
                                  return true;
                                }
                                return false;
                              });
    result.iterations += run.iterations;
    if (result.status != OracleStatus::kUndecided) break;
    if (result.iterations >= max_iters) break;
    start = run.x;
    if (smoothing < finest) smoothing = std::min(smoothing * 10.0, finest);
  }

  return result;
}

SolveReport bisection_solve(const SocSystem& system, const RateModel& model, const BisectionConfig& cfg) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  const int num_aps = model.num_aps();
  const int num_groups = model.dims.num_groups();
  double lo = cfg.t_lower;
  double hi = cfg.t_upper.value_or(zero_interference_upper_bound(system));
  if (!(lo < hi)) throw std::invalid_argument("bisection_solve: empty initial bracket");

  SolveReport report;
  report.solver = "bisection";
  Vector witness = PowerControl::equal_power(num_aps, num_groups).values();
  if (lo > 0) {
    const OracleResult check = feasibility_oracle(system, lo, cfg.eps_soc, cfg.oracle_max_iters, witness, cfg.oracle_apg);
    if (check.status != OracleStatus::kFeasible) throw std::invalid_argument("bisection_solve: t_lower is not feasible");
    witness = check.mu;
  }

  bool hi_undecided = false;
  int step = 0;
  while (hi - lo > cfg.tol_t) {
    const double t = 0.5 * (lo + hi);
    const OracleResult res = feasibility_oracle(system, t, cfg.eps_soc, cfg.oracle_max_iters, witness, cfg.oracle_apg);
    if (res.status == OracleStatus::kFeasible) {
      lo = t;
      witness = res.mu;
    } else {
      hi = t;
      hi_undecided = res.status == OracleStatus::kUndecided;
      if (hi_undecided) ++report.undecided;
    }
    report.bisection_trace.push_back({++step, t, lo, hi, res.iterations, res.status,
                                      std::chrono::duration<double>(Clock::now() - start).count()});
  }

  report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  report.mu = witness;
  report.rates = user_rates(model, witness);
  report.f_true = report.rates.min();
  report.f_sigma = std::numeric_limits<double>::quiet_NaN();
  report.t_lower = lo;
  report.t_upper = hi;
  report.iterations = step;
  report.approximate = hi_undecided;
  report.termination = hi_undecided ? "bracket_approximate" : "bracket";
  return report;
}

SolveReport bisection_solve(const RateModel& model, const BisectionConfig& cfg) {
  return bisection_solve(build_soc_system(model), model, cfg);
}

}  // namespace cfmm
