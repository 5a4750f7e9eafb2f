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

#include "cfmm/netgen.hpp"

namespace cfmm {

/// Sample estimates for one user under a fixed eta.
struct MonteCarloUserEstimate {
  int group = 0;
  int user = 0;
  std::complex<double> mean_gain;  // E{a_nk}
  double mean_gain_std_error = 0;  // std error of Re E{a_nk}
  double gain_variance = 0;        // Var{a_nk}
  double interference_power = 0;   // sum_{n' != n} E{|a_n'k|^2}
  double rate_nats = 0;
  double rate_std_error = 0;       // delta-method standard error
};

struct MonteCarloReport {
  std::int64_t draws = 0;
  std::vector<MonteCarloUserEstimate> users;  // flat user order
};

/// Draws per RNG substream. Results depend only on (seed, draws), never on
/// how chunks are scheduled across threads.
inline constexpr std::int64_t kMonteCarloChunk = 4096;

/// Plug-in estimate of the hardening-bound rate
///   ln(1 + rho |E a|^2 / (rho Var a + rho sum_{n'} E|a_n'|^2 + sigma^2))
/// with a_nk = sum_m h_mnk sqrt(eta_mn) z*_mn / |z_mn|. eta uses the same
/// stacked layout as PowerControl.
MonteCarloReport rate_oracle_monte_carlo(const NetworkInstance& instance, const Vector& eta,
                                         std::int64_t draws, std::uint64_t seed, int threads = 0);

}  // namespace cfmm
