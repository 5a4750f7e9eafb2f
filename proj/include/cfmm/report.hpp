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

#include <iosfwd>
#include <string>
#include <vector>

#include "cfmm/rates.hpp"

namespace cfmm {

struct ApgTraceRow {
  int iter = 0;
  double f_sigma = 0;
  double f_true = 0;
  double alpha_y = 0;
  double alpha_mu = 0;
  int backtracks_y = 0;
  int backtracks_mu = 0;
  double elapsed_s = 0;
};

enum class OracleStatus { kFeasible, kInfeasible, kUndecided };

const char* to_string(OracleStatus status);

struct BisectionStep {
  int step = 0;
  double t_tested = 0;
  double t_lo = 0;
  double t_hi = 0;
  int oracle_iters = 0;
  OracleStatus oracle_status = OracleStatus::kUndecided;
  double elapsed_s = 0;
};

/// Outcome of one solve, from either solver.
struct SolveReport {
  std::string solver;
  Vector mu;
  double f_sigma = 0;  // smoothed objective at mu (APG only)
  double f_true = 0;   // min-rate at mu
  RateVector rates;
  int iterations = 0;
  double wall_seconds = 0;
  std::string termination;

  std::vector<ApgTraceRow> apg_trace;

  // Bisection bracket. t_lower is certified feasible with witness mu.
  std::vector<BisectionStep> bisection_trace;
  double t_lower = 0;
  double t_upper = 0;
  int undecided = 0;
  bool approximate = false;
};

/// iter,f_sigma_nats,f_true_nats,alpha_y,alpha_mu,backtracks_y,backtracks_mu,elapsed_s
/// With include_timing == false the elapsed_s field is left empty so the file
/// is a deterministic function of the inputs.
void write_apg_trace_csv(std::ostream& out, const std::vector<ApgTraceRow>& trace, bool include_timing);

/// step,t_lo,t_hi,oracle_iters,oracle_status (t_tested and elapsed_s appended).
void write_bisection_trace_csv(std::ostream& out, const std::vector<BisectionStep>& trace,
                               bool include_timing);

}  // namespace cfmm
