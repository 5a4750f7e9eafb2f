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

#include <cmath>

#include "cfmm/rates.hpp"

namespace cfmm {

struct SmoothingConfig {
  double sigma = 100.0;

  /// Additive accuracy of the log-sum-exp minimum over `num_terms` rates.
  double bound(int num_terms) const { return std::log(static_cast<double>(num_terms)) / sigma; }
};

/// f_sigma(mu) = -(1/sigma) ln((1/U) sum_u exp(-sigma R_u(mu))), computed with
/// a shift by the smallest rate so that exp never overflows.
/// Satisfies min_rate <= f_sigma <= min_rate + ln(U)/sigma.
double smooth_objective(const RateModel& model, const Vector& mu, double sigma);

/// Gradient of f_sigma: softmax(-sigma R)-weighted sum of per-user rate gradients.
Vector smooth_gradient(const RateModel& model, const Vector& mu, double sigma);

/// Gradient of one user's rate (nonzero only on that user's group block).
Vector user_rate_gradient(const RateModel& model, const Vector& mu, int n, int k);

/// Evaluates f_sigma and, optionally, its gradient in one pass over the users.
/// Cost is O(M * U) per call.
class SmoothedMinRate {
 public:
  SmoothedMinRate(const RateModel& model, double sigma);

  double operator()(const Vector& mu, Vector* gradient = nullptr) const;

  double sigma() const { return sigma_; }
  /// Smallest user rate at the most recently evaluated point.
  double last_min_rate() const { return last_min_rate_; }
  const RateModel& model() const { return model_; }

 private:
  const RateModel& model_;
  double sigma_;
  mutable Vector rates_;
  mutable Vector signal_;
  mutable Vector denom_;
  mutable double last_min_rate_ = 0;
};

}  // namespace cfmm
