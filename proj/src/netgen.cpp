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

#include "cfmm/netgen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cfmm {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("PhysicalConfig: ") + what);
}

std::complex<double> standard_complex_normal(Engine& engine, std::normal_distribution<double>& normal) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  const double re = normal(engine);
  const double im = normal(engine);
  return {re * kInvSqrt2, im * kInvSqrt2};
}

}  // namespace

void PhysicalConfig::validate(int num_groups) const {
  require(bandwidth_hz > 0, "bandwidth_hz must be > 0");
  require(carrier_freq_hz > 0, "carrier_freq_hz must be > 0");
  require(temperature_k > 0, "temperature_k must be > 0");
  require(pilot_power_w > 0, "pilot_power_w must be > 0");
  require(data_power_w > 0, "data_power_w must be > 0");
  require(pilot_len_symbols > 0, "pilot_len_symbols must be > 0");
  require(coherence_len_symbols > 0, "coherence_len_symbols must be > 0");
  require(shadow_std_db >= 0, "shadow_std_db must be >= 0");
  require(area_side_m > 0, "area_side_m must be > 0");
  require(pathloss_d0_m > 0 && pathloss_d1_m > pathloss_d0_m, "need 0 < d0 < d1");
  require(ap_height_m > 0 && user_height_m > 0, "antenna heights must be > 0");
  require(pilot_len_symbols <= coherence_len_symbols, "pilot length exceeds coherence length");
  require(pilot_len_symbols >= num_groups, "pilot length must be >= number of groups");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double noise_power(const PhysicalConfig& cfg) {
  return kBoltzmann * cfg.temperature_k * cfg.bandwidth_hz * db_to_linear(cfg.noise_figure_db);
}

Geometry generate_geometry(const Dimensions& dims, double area_side_m, std::uint64_t seed) {
  dims.validate();
  Engine engine = make_engine(seed, Stream::kGeometry);
  std::uniform_real_distribution<double> uniform(0.0, area_side_m);

  Geometry geometry;
  geometry.ap_xy.resize(dims.num_aps, 2);
  geometry.user_xy.resize(dims.total_users(), 2);
  for (Eigen::Index m = 0; m < geometry.ap_xy.rows(); ++m) {
    geometry.ap_xy(m, 0) = uniform(engine);
    geometry.ap_xy(m, 1) = uniform(engine);
  }
  for (Eigen::Index u = 0; u < geometry.user_xy.rows(); ++u) {
    geometry.user_xy(u, 0) = uniform(engine);
    geometry.user_xy(u, 1) = uniform(engine);
  }
  return geometry;
}

double hata_constant_db(const PhysicalConfig& cfg) {
  const double f_mhz = cfg.carrier_freq_hz / 1e6;
  const double log_f = std::log10(f_mhz);
  return 46.3 + 33.9 * log_f - 13.82 * std::log10(cfg.ap_height_m) -
         (1.1 * log_f - 0.7) * cfg.user_height_m + (1.56 * log_f - 0.8);
}

double path_loss_db(double distance_m, const PhysicalConfig& cfg) {
  const double big_l = hata_constant_db(cfg);
  const double d_km = std::max(distance_m, cfg.pathloss_d0_m) / 1000.0;
  const double d0_km = cfg.pathloss_d0_m / 1000.0;
  const double d1_km = cfg.pathloss_d1_m / 1000.0;
  if (d_km > d1_km) return -big_l - 35.0 * std::log10(d_km);
  if (d_km > d0_km) return -big_l - 15.0 * std::log10(d1_km) - 20.0 * std::log10(d_km);
  return -big_l - 15.0 * std::log10(d1_km) - 20.0 * std::log10(d0_km);
}

Matrix large_scale_fading(const Geometry& geometry, const PhysicalConfig& cfg, std::uint64_t seed) {
  Engine engine = make_engine(seed, Stream::kShadowing);
  std::normal_distribution<double> normal(0.0, 1.0);

  const Eigen::Index num_aps = geometry.ap_xy.rows();
  const Eigen::Index num_users = geometry.user_xy.rows();
  Matrix zeta(num_aps, num_users);
  for (Eigen::Index m = 0; m < num_aps; ++m) {
    for (Eigen::Index u = 0; u < num_users; ++u) {
      const double d = (geometry.ap_xy.row(m) - geometry.user_xy.row(u)).norm();
      const double shadow = normal(engine);
      double gain_db = path_loss_db(d, cfg);
      if (d > cfg.pathloss_d1_m) gain_db += cfg.shadow_std_db * shadow;
      zeta(m, u) = db_to_linear(gain_db);
    }
  }
  return zeta;
}

Matrix gamma_coefficients(const Matrix& zeta, const Dimensions& dims, double pilot_energy,
                          double noise_variance) {
  if (zeta.cols() != dims.total_users() || zeta.rows() != dims.num_aps) {
    throw std::invalid_argument("gamma_coefficients: zeta shape does not match dimensions");
  }
  Matrix gamma(zeta.rows(), zeta.cols());
  for (int n = 0; n < dims.num_groups(); ++n) {
    const int offset = dims.group_offset(n);
    const int size = dims.group_sizes[n];
    for (Eigen::Index m = 0; m < zeta.rows(); ++m) {
      const double group_sum = zeta.row(m).segment(offset, size).sum();
      const double denom = noise_variance + pilot_energy * group_sum;
      for (int k = 0; k < size; ++k) {
        const double z = zeta(m, offset + k);
        gamma(m, offset + k) = pilot_energy * z * z / denom;
      }
    }
  }
  return gamma;
}

Matrix gamma_coefficients(const Matrix& zeta, const Dimensions& dims, const PhysicalConfig& cfg) {
  return gamma_coefficients(zeta, dims, cfg.pilot_power_w * cfg.pilot_len_symbols, noise_power(cfg));
}

void NetworkInstance::validate() const {
  dims.validate();
  const Eigen::Index users = dims.total_users();
  if (zeta.rows() != dims.num_aps || zeta.cols() != users || gamma.rows() != dims.num_aps ||
      gamma.cols() != users) {
    throw std::invalid_argument("NetworkInstance: zeta/gamma shape mismatch");
  }
  if (!(noise_variance_w > 0)) throw std::invalid_argument("NetworkInstance: noise variance must be > 0");
  if (!(zeta.array() > 0).all()) throw std::invalid_argument("NetworkInstance: zeta must be > 0");
  if (!(gamma.array() > 0).all() || !(gamma.array() < zeta.array()).all()) {
    throw std::invalid_argument("NetworkInstance: need 0 < gamma < zeta");
  }
}

NetworkInstance instance_from_geometry(const Dimensions& dims, const PhysicalConfig& cfg,
                                       const Geometry& geometry, std::uint64_t seed) {
  dims.validate();
  cfg.validate(dims.num_groups());
  NetworkInstance instance;
  instance.dims = dims;
  instance.config = cfg;
  instance.seed = seed;
  instance.noise_variance_w = noise_power(cfg);
  instance.zeta = large_scale_fading(geometry, cfg, seed);
  instance.gamma = gamma_coefficients(instance.zeta, dims, cfg);
  return instance;
}

NetworkInstance generate_instance(const Dimensions& dims, const PhysicalConfig& cfg,
                                  std::uint64_t seed) {
  return instance_from_geometry(dims, cfg, generate_geometry(dims, cfg.area_side_m, seed), seed);
}

SmallScaleSampler::SmallScaleSampler(const NetworkInstance& instance)
    : instance_(instance),
      user_group_(instance.dims.user_groups()),
      sqrt_zeta_(instance.zeta.array().sqrt()),
      sqrt_pilot_energy_(std::sqrt(instance.pilot_energy())),
      noise_std_(std::sqrt(instance.noise_variance_w)) {
  const Dimensions& dims = instance.dims;
  z_scale_.resize(dims.num_aps, dims.num_groups());
  for (int n = 0; n < dims.num_groups(); ++n) {
    const int offset = dims.group_offset(n);
    for (int m = 0; m < dims.num_aps; ++m) {
      const double group_sum = instance.zeta.row(m).segment(offset, dims.group_sizes[n]).sum();
      z_scale_(m, n) = 1.0 / std::sqrt(instance.pilot_energy() * group_sum + instance.noise_variance_w);
    }
  }
}

void SmallScaleSampler::draw(Engine& engine, Eigen::MatrixXcd& g, Eigen::MatrixXcd& z) const {
  const Dimensions& dims = instance_.dims;
  const int num_aps = dims.num_aps;
  const int num_users = dims.total_users();
  std::normal_distribution<double> normal(0.0, 1.0);

  g.resize(num_aps, num_users);
  z.resize(num_aps, dims.num_groups());
  for (int u = 0; u < num_users; ++u) {
    for (int m = 0; m < num_aps; ++m) g(m, u) = standard_complex_normal(engine, normal);
  }
  // y_tilde_mn = sqrt(rho_p tau_p) sum_k h_mnk + w_mn, with w_mn ~ CN(0, sigma^2).
  z.setZero();
  for (int u = 0; u < num_users; ++u) {
    const int n = user_group_[u];
    for (int m = 0; m < num_aps; ++m) z(m, n) += sqrt_zeta_(m, u) * g(m, u);
  }
  for (int n = 0; n < dims.num_groups(); ++n) {
    for (int m = 0; m < num_aps; ++m) {
      const std::complex<double> noise = noise_std_ * standard_complex_normal(engine, normal);
      z(m, n) = (sqrt_pilot_energy_ * z(m, n) + noise) * z_scale_(m, n);
    }
  }
}

std::vector<SmallScaleDraw> sample_small_scale(const NetworkInstance& instance, int count,
                                               std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_small_scale: count must be >= 1");
  SmallScaleSampler sampler(instance);
  Engine engine = make_engine(seed, Stream::kSmallScale);
  std::vector<SmallScaleDraw> draws(static_cast<std::size_t>(count));
  for (auto& d : draws) sampler.draw(engine, d.g, d.z);
  return draws;
}

}  // namespace cfmm
