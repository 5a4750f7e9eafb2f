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

#include "cfmm/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace cfmm {

namespace {

using Moments = Eigen::Matrix<double, 4, 1>;
using Cross = Eigen::Matrix<double, 4, 4>;

// Per-user running sums of x = (Re a, Im a, |a|^2, interference) and x x^T.
struct UserSums {
  Moments sum = Moments::Zero();
  Cross outer = Cross::Zero();
};

using ChunkSums = std::vector<UserSums>;

ChunkSums run_chunk(const NetworkInstance& instance, const SmallScaleSampler& sampler,
                    const Matrix& sqrt_eta, std::uint64_t seed, std::int64_t chunk, std::int64_t count) {
  const Dimensions& dims = instance.dims;
  const int num_aps = dims.num_aps;
  const int num_groups = dims.num_groups();
  const int num_users = dims.total_users();
  const auto user_group = dims.user_groups();
  const Matrix sqrt_zeta = instance.zeta.array().sqrt();

  Engine engine = make_engine(seed, Stream::kSmallScale, static_cast<std::uint64_t>(chunk));
  ChunkSums sums(static_cast<std::size_t>(num_users));
  Eigen::MatrixXcd g;
  Eigen::MatrixXcd z;
  Eigen::MatrixXcd beam(num_aps, num_groups);  // sqrt(eta_mn) z*_mn / |z_mn|
  Moments x;

  for (std::int64_t d = 0; d < count; ++d) {
    sampler.draw(engine, g, z);
    for (int n = 0; n < num_groups; ++n) {
      for (int m = 0; m < num_aps; ++m) {
        const std::complex<double> zm = z(m, n);
        beam(m, n) = sqrt_eta(m, n) * std::conj(zm) / std::abs(zm);
      }
    }
    for (int u = 0; u < num_users; ++u) {
      const int own = user_group[static_cast<std::size_t>(u)];
      std::complex<double> a_own{0, 0};
      double interference = 0;
      for (int n = 0; n < num_groups; ++n) {
        std::complex<double> a{0, 0};
        for (int m = 0; m < num_aps; ++m) a += sqrt_zeta(m, u) * g(m, u) * beam(m, n);
        if (n == own) {
          a_own = a;
        } else {
          interference += std::norm(a);
        }
      }
      x << a_own.real(), a_own.imag(), std::norm(a_own), interference;
      auto& s = sums[static_cast<std::size_t>(u)];
      s.sum += x;
      s.outer.noalias() += x * x.transpose();
    }
  }
  return sums;
}

}  // namespace

MonteCarloReport rate_oracle_monte_carlo(const NetworkInstance& instance, const Vector& eta,
                                         std::int64_t draws, std::uint64_t seed, int threads) {
  const Dimensions& dims = instance.dims;
  if (draws < 2) throw std::invalid_argument("rate_oracle_monte_carlo: need at least 2 draws");
  if (eta.size() != dims.num_coefficients() || (eta.array() < 0).any()) {
    throw std::invalid_argument("rate_oracle_monte_carlo: eta must be nonnegative with length M*N");
  }

  Matrix sqrt_eta(dims.num_aps, dims.num_groups());
  for (int n = 0; n < dims.num_groups(); ++n) {
    for (int m = 0; m < dims.num_aps; ++m) sqrt_eta(m, n) = std::sqrt(eta[n * dims.num_aps + m]);
  }

  const SmallScaleSampler sampler(instance);
  const std::int64_t num_chunks = (draws + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<ChunkSums> chunk_sums(static_cast<std::size_t>(num_chunks));

  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t c = next++; c < num_chunks; c = next++) {
      const std::int64_t count = std::min(kMonteCarloChunk, draws - c * kMonteCarloChunk);
      chunk_sums[static_cast<std::size_t>(c)] = run_chunk(instance, sampler, sqrt_eta, seed, c, count);
    }
  };
  int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::int64_t>(workers, num_chunks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Fixed reduction order over chunks.
  const int num_users = dims.total_users();
  ChunkSums total(static_cast<std::size_t>(num_users));
  for (const auto& chunk : chunk_sums) {
    for (int u = 0; u < num_users; ++u) {
      total[static_cast<std::size_t>(u)].sum += chunk[static_cast<std::size_t>(u)].sum;
      total[static_cast<std::size_t>(u)].outer += chunk[static_cast<std::size_t>(u)].outer;
    }
  }

  const double rho_bar = instance.rho_d_w() / instance.noise_variance_w;
  const double count = static_cast<double>(draws);
  const auto user_group = dims.user_groups();
  MonteCarloReport report;
  report.draws = draws;
  for (int u = 0; u < num_users; ++u) {
    const auto& s = total[static_cast<std::size_t>(u)];
    const Moments mean = s.sum / count;
    const Cross cov = (s.outer - count * mean * mean.transpose()) / (count - 1.0);

    const double power = mean[0] * mean[0] + mean[1] * mean[1];
    const double variance = mean[2] - power;
    const double denom = rho_bar * (variance + mean[3]) + 1.0;
    const double sinr = rho_bar * power / denom;

    // Delta method on F(x) = ln(1 + rho P / (rho (x3 - P + x4) + 1)), P = x1^2 + x2^2.
    Moments grad;
    grad[0] = 2.0 * rho_bar * mean[0] / denom;
    grad[1] = 2.0 * rho_bar * mean[1] / denom;
    grad[2] = -rho_bar * sinr / (denom * (1.0 + sinr));
    grad[3] = grad[2];

    MonteCarloUserEstimate est;
    est.group = user_group[static_cast<std::size_t>(u)];
    est.user = u - dims.group_offset(est.group);
    est.mean_gain = {mean[0], mean[1]};
    est.mean_gain_std_error = std::sqrt(cov(0, 0) / count);
    est.gain_variance = variance;
    est.interference_power = mean[3];
    est.rate_nats = std::log1p(sinr);
    est.rate_std_error = std::sqrt(std::max(0.0, grad.dot(cov * grad)) / count);
    report.users.push_back(est);
  }
  return report;
}

}  // namespace cfmm
