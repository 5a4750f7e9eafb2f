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

#include "cfmm/smoothing.hpp"

#include <numbers>
#include <stdexcept>

namespace cfmm {

SmoothedMinRate::SmoothedMinRate(const RateModel& model, double sigma)
    : model_(model),
      sigma_(sigma),
      rates_(model.num_users()),
      signal_(model.num_users()),
      denom_(model.num_users()) {
  if (!(sigma > 0)) throw std::invalid_argument("smoothing parameter sigma must be > 0");
}

double SmoothedMinRate::operator()(const Vector& mu, Vector* gradient) const {
  const int num_aps = model_.num_aps();
  const int num_users = model_.num_users();
  const double rho = model_.rho_bar;
  const double quarter_pi_rho = std::numbers::pi * rho / 4.0;

  double min_r = std::numeric_limits<double>::infinity();
  for (int u = 0; u < num_users; ++u) {
    const auto mu_n = mu.segment(model_.user_group[u] * num_aps, num_aps);
    const double s = model_.sqrt_gamma.col(u).dot(mu_n);
    const double c = rho * model_.interference.col(u).dot(mu_n.cwiseAbs2()) + 1.0;
    signal_[u] = s;
    denom_[u] = c;
    rates_[u] = std::log1p(quarter_pi_rho * s * s / c);
    min_r = std::min(min_r, rates_[u]);
  }

  last_min_rate_ = min_r;

  double weight_sum = 0;
  for (int u = 0; u < num_users; ++u) weight_sum += std::exp(-sigma_ * (rates_[u] - min_r));
  const double value = min_r - std::log(weight_sum / num_users) / sigma_;

  if (gradient != nullptr) {
    gradient->setZero(mu.size());
    for (int u = 0; u < num_users; ++u) {
      const double w = std::exp(-sigma_ * (rates_[u] - min_r)) / weight_sum;
      const int n = model_.user_group[u];
      const auto mu_n = mu.segment(n * num_aps, num_aps);
      const double b = quarter_pi_rho * signal_[u] * signal_[u];
      const double c = denom_[u];
      // grad R = (grad b + grad c) / (b + c) - grad c / c
      //   grad b = (pi rho / 2) s g,  grad c = 2 rho diag(A^2) mu_n
      const double coef_b = w * 2.0 * quarter_pi_rho * signal_[u] / (b + c);
      const double coef_c = w * 2.0 * rho * (1.0 / (b + c) - 1.0 / c);
      gradient->segment(n * num_aps, num_aps) +=
          coef_b * model_.sqrt_gamma.col(u) + coef_c * model_.interference.col(u).cwiseProduct(mu_n);
    }
  }
  return value;
}

double smooth_objective(const RateModel& model, const Vector& mu, double sigma) {
  return SmoothedMinRate(model, sigma)(mu);
}

Vector smooth_gradient(const RateModel& model, const Vector& mu, double sigma) {
  Vector grad;
  SmoothedMinRate(model, sigma)(mu, &grad);
  return grad;
}

Vector user_rate_gradient(const RateModel& model, const Vector& mu, int n, int k) {
  const int num_aps = model.num_aps();
  const int u = model.dims.user_index(n, k);
  const auto mu_n = mu.segment(n * num_aps, num_aps);
  const double rho = model.rho_bar;
  const auto g = model.sqrt_gamma.col(u);
  const double s = g.dot(mu_n);
  const double b = std::numbers::pi * rho / 4.0 * s * s;
  const double c = rho * model.interference.col(u).dot(mu_n.cwiseAbs2()) + 1.0;
  const Vector grad_b = std::numbers::pi * rho / 2.0 * s * g;
  const Vector grad_c = 2.0 * rho * model.interference.col(u).cwiseProduct(mu_n);

  Vector grad = Vector::Zero(mu.size());
  grad.segment(n * num_aps, num_aps) = (grad_b + grad_c) / (b + c) - grad_c / c;
  return grad;
}

}  // namespace cfmm
