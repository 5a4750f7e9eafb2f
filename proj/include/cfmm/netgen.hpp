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

#include <complex>
#include <cstdint>
#include <vector>

#include "cfmm/rng.hpp"
#include "cfmm/types.hpp"

namespace cfmm {

inline constexpr double kBoltzmann = 1.38e-23;  // J/K

/// Physical constants of a deployment. Defaults are the reference
/// 20 MHz / 1.9 GHz / 1 km^2 setup.
struct PhysicalConfig {
  double bandwidth_hz = 20e6;
  double carrier_freq_hz = 1900e6;
  double noise_figure_db = 9.0;
  double temperature_k = 290.0;
  double pilot_power_w = 0.2;
  double data_power_w = 0.2;
  int pilot_len_symbols = 20;
  int coherence_len_symbols = 200;
  double shadow_std_db = 9.0;
  double area_side_m = 1000.0;

  // Three-slope path loss.
  double pathloss_d0_m = 10.0;
  double pathloss_d1_m = 50.0;
  double ap_height_m = 15.0;
  double user_height_m = 1.65;

  /// Throws std::invalid_argument when a field is out of range. Pilots must be
  /// long enough to give every group its own orthonormal sequence.
  void validate(int num_groups) const;

  bool operator==(const PhysicalConfig&) const = default;
};

/// k * T * B * NF, in watts.
double noise_power(const PhysicalConfig& cfg);

double db_to_linear(double db);

struct Geometry {
  Matrix ap_xy;    // M x 2, metres
  Matrix user_xy;  // U x 2, metres
};

Geometry generate_geometry(const Dimensions& dims, double area_side_m, std::uint64_t seed);

/// COST-231 Hata constant L (dB) for the configured carrier and antenna heights.
double hata_constant_db(const PhysicalConfig& cfg);

/// Deterministic part of the large-scale gain in dB (negative). Distances are
/// floored at d0, so the curve is flat below d0, 20 dB/decade on (d0, d1] and
/// 35 dB/decade beyond d1.
double path_loss_db(double distance_m, const PhysicalConfig& cfg);

/// zeta(m, u) = PL(d) * 10^(sigma_sh z / 10); shadowing only applies past d1.
/// Shadowing draws are consumed for every pair, in AP-major order.
Matrix large_scale_fading(const Geometry& geometry, const PhysicalConfig& cfg, std::uint64_t seed);

/// MMSE estimate quality per (AP, user). The pilot-power sum runs over the
/// users of the same group only, since a group shares one pilot.
Matrix gamma_coefficients(const Matrix& zeta, const Dimensions& dims, double pilot_energy,
                          double noise_variance);
Matrix gamma_coefficients(const Matrix& zeta, const Dimensions& dims, const PhysicalConfig& cfg);

/// Immutable problem data for one network realization.
struct NetworkInstance {
  Dimensions dims;
  PhysicalConfig config;
  std::uint64_t seed = 0;
  Matrix zeta;   // M x U large-scale gains (linear)
  Matrix gamma;  // M x U estimation coefficients (linear)
  double noise_variance_w = 0.0;

  double rho_d_w() const { return config.data_power_w; }
  double rho_p_w() const { return config.pilot_power_w; }
  double pilot_energy() const { return config.pilot_power_w * config.pilot_len_symbols; }

  /// Checks zeta > 0, 0 < gamma < zeta and shapes; throws std::invalid_argument.
  void validate() const;
};

NetworkInstance generate_instance(const Dimensions& dims, const PhysicalConfig& cfg,
                                  std::uint64_t seed);

/// Builds an instance from an explicit geometry (shadowing still seeded).
NetworkInstance instance_from_geometry(const Dimensions& dims, const PhysicalConfig& cfg,
                                       const Geometry& geometry, std::uint64_t seed);

/// One joint small-scale realization: g (M x U) and the normalized pilot
/// observation z (M x N) from which each AP forms its beam phase.
struct SmallScaleDraw {
  Eigen::MatrixXcd g;
  Eigen::MatrixXcd z;
};

/// Draws g ~ CN(0,1) and z = y_tilde / sqrt(rho_p tau_p sum_k zeta + sigma^2),
/// where y_tilde is the de-spread pilot observation. With this construction
/// E{h z*} = sqrt(gamma).
class SmallScaleSampler {
 public:
  explicit SmallScaleSampler(const NetworkInstance& instance);

  void draw(Engine& engine, Eigen::MatrixXcd& g, Eigen::MatrixXcd& z) const;

 private:
  const NetworkInstance& instance_;
  std::vector<int> user_group_;
  Matrix sqrt_zeta_;
  Matrix z_scale_;  // M x N, 1 / sqrt(rho_p tau_p sum zeta + sigma^2)
  double sqrt_pilot_energy_;
  double noise_std_;
};

std::vector<SmallScaleDraw> sample_small_scale(const NetworkInstance& instance, int count,
                                               std::uint64_t seed);

}  // namespace cfmm
