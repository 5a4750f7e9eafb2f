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

#include "cfmm/rates.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace cfmm {

PowerControl::PowerControl(int num_aps, int num_groups, Vector mu)
    : num_aps_(num_aps), num_groups_(num_groups), mu_(std::move(mu)) {
  if (mu_.size() != static_cast<Eigen::Index>(num_aps) * num_groups) {
    throw std::invalid_argument("PowerControl: length must be M * N");
  }
  if ((mu_.array() < 0).any()) throw std::invalid_argument("PowerControl: coefficients must be >= 0");
}

PowerControl PowerControl::equal_power(int num_aps, int num_groups) {
  return PowerControl(num_aps, num_groups,
                      Vector::Constant(num_aps * num_groups, 1.0 / std::sqrt(static_cast<double>(num_groups))));
}

Vector PowerControl::ap_slice(int m) const {
  Vector slice(num_groups_);
  for (int n = 0; n < num_groups_; ++n) slice[n] = at(m, n);
  return slice;
}

bool PowerControl::is_feasible(double eps) const { return cfmm::is_feasible(mu_, num_aps_, num_groups_, eps); }

bool is_feasible(const Vector& mu, int num_aps, int num_groups, double eps) {
  if ((mu.array() < 0).any()) return false;
  for (int m = 0; m < num_aps; ++m) {
    double sq = 0;
    for (int n = 0; n < num_groups; ++n) sq += mu[n * num_aps + m] * mu[n * num_aps + m];
    if (sq > 1.0 + eps) return false;
  }
  return true;
}

RateModel build_rate_model(const Dimensions& dims, const Matrix& zeta, const Matrix& gamma,
                           double rho_bar) {
  dims.validate();
  const double num_groups = dims.num_groups();
  RateModel model;
  model.dims = dims;
  model.user_group = dims.user_groups();
  model.rho_bar = rho_bar;
  model.sqrt_gamma = gamma.array().sqrt();
  model.interference = num_groups * zeta.array() - std::numbers::pi / 4.0 * gamma.array();
  if ((model.interference.array() < 0).any()) {
    throw std::domain_error("build_rate_model: N*zeta - pi/4*gamma < 0, instance is corrupted");
  }
  return model;
}

RateModel build_rate_model(const NetworkInstance& instance) {
  return build_rate_model(instance.dims, instance.zeta, instance.gamma,
                          instance.rho_d_w() / instance.noise_variance_w);
}

std::pair<int, int> RateVector::argmin() const {
  Eigen::Index best = 0;
  for (Eigen::Index u = 1; u < rates.size(); ++u) {
    if (rates[u] < rates[best]) best = u;
  }
  const auto groups = dims.user_groups();
  const int n = groups[static_cast<std::size_t>(best)];
  return {n, static_cast<int>(best) - dims.group_offset(n)};
}

namespace {

double rate_of_user(const RateModel& model, const Vector& mu, int u) {
  const int num_aps = model.num_aps();
  const auto mu_n = mu.segment(model.user_group[u] * num_aps, num_aps);
  const double signal = model.sqrt_gamma.col(u).dot(mu_n);
  const double b = std::numbers::pi * model.rho_bar / 4.0 * signal * signal;
  const double c = model.rho_bar * model.interference.col(u).dot(mu_n.cwiseAbs2()) + 1.0;
  return std::log1p(b / c);
}

}  // namespace

double user_rate(const RateModel& model, const Vector& mu, int n, int k) {
  return rate_of_user(model, mu, model.dims.user_index(n, k));
}

RateVector user_rates(const RateModel& model, const Vector& mu) {
  RateVector out{model.dims, Vector(model.num_users())};
  for (int u = 0; u < model.num_users(); ++u) out.rates[u] = rate_of_user(model, mu, u);
  return out;
}

double min_rate(const RateModel& model, const Vector& mu) {
  double best = std::numeric_limits<double>::infinity();
  for (int u = 0; u < model.num_users(); ++u) best = std::min(best, rate_of_user(model, mu, u));
  return best;
}

std::pair<int, int> argmin_user(const RateModel& model, const Vector& mu) {
  return user_rates(model, mu).argmin();
}

RateVector epa_rates(const RateModel& model) {
  const int num_groups = model.dims.num_groups();
  return user_rates(model, PowerControl::equal_power(model.num_aps(), num_groups).values());
}

RateVector epa_rates_direct(const NetworkInstance& instance) {
  const Dimensions& dims = instance.dims;
  const double big_n = dims.num_groups();
  const double rho = instance.rho_d_w();
  const double noise = instance.noise_variance_w;
  RateVector out{dims, Vector(dims.total_users())};
  for (int u = 0; u < dims.total_users(); ++u) {
    const double sum_sqrt_gamma = instance.gamma.col(u).array().sqrt().sum();
    const double denom =
        rho * (instance.zeta.col(u).array() - std::numbers::pi / (4.0 * big_n) * instance.gamma.col(u).array()).sum() +
        noise;
    out.rates[u] = std::log1p(std::numbers::pi * rho / (4.0 * big_n) * sum_sqrt_gamma * sum_sqrt_gamma / denom);
  }
  return out;
}

double user_rate_eta(const NetworkInstance& instance, const Vector& eta, int n, int k) {
  const Dimensions& dims = instance.dims;
  const int u = dims.user_index(n, k);
  const double big_n = dims.num_groups();
  const double rho = instance.rho_d_w();
  double numer = 0;
  double denom = 0;
  for (int m = 0; m < dims.num_aps; ++m) {
    const double e = eta[n * dims.num_aps + m];
    numer += std::sqrt(e * instance.gamma(m, u));
    denom += e * (big_n * instance.zeta(m, u) - std::numbers::pi / 4.0 * instance.gamma(m, u));
  }
  return std::log1p(std::numbers::pi * rho / 4.0 * numer * numer / (rho * denom + instance.noise_variance_w));
}

double user_rate_eta_per_group_interference(const NetworkInstance& instance, const Vector& eta,
                                            int n, int k) {
  const Dimensions& dims = instance.dims;
  const int u = dims.user_index(n, k);
  const double rho = instance.rho_d_w();
  double numer = 0;
  double denom = 0;
  for (int m = 0; m < dims.num_aps; ++m) {
    const double e = eta[n * dims.num_aps + m];
    numer += std::sqrt(e * instance.gamma(m, u));
    denom += e * (instance.zeta(m, u) - std::numbers::pi / 4.0 * instance.gamma(m, u));
    for (int other = 0; other < dims.num_groups(); ++other) {
      if (other != n) denom += eta[other * dims.num_aps + m] * instance.zeta(m, u);
    }
  }
  return std::log1p(std::numbers::pi * rho / 4.0 * numer * numer / (rho * denom + instance.noise_variance_w));
}

void write_rates_csv(std::ostream& out, const RateVector& rates) {
  out << "group,user,rate_nats,rate_bits\n";
  for (int n = 0; n < rates.dims.num_groups(); ++n) {
    for (int k = 0; k < rates.dims.group_sizes[n]; ++k) {
      const double r = rates.at(n, k);
      out << fmt::format("{},{},{:.17g},{:.17g}\n", n, k, r, nats_to_bits(r));
    }
  }
}

}  // namespace cfmm
