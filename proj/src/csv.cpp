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

#include <ostream>

#include <fmt/format.h>

#include "cfmm/report.hpp"

namespace cfmm {

const char* to_string(OracleStatus status) {
  switch (status) {
    case OracleStatus::kFeasible: return "feasible";
    case OracleStatus::kInfeasible: return "infeasible";
    case OracleStatus::kUndecided: return "undecided";
  }
  return "unknown";
}

void write_apg_trace_csv(std::ostream& out, const std::vector<ApgTraceRow>& trace, bool include_timing) {
  out << "iter,f_sigma_nats,f_true_nats,alpha_y,alpha_mu,backtracks_y,backtracks_mu,elapsed_s\n";
  for (const auto& row : trace) {
    out << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{},{},", row.iter, row.f_sigma, row.f_true, row.alpha_y,
                       row.alpha_mu, row.backtracks_y, row.backtracks_mu);
    if (include_timing) out << fmt::format("{:.6f}", row.elapsed_s);
    out << '\n';
  }
}

void write_bisection_trace_csv(std::ostream& out, const std::vector<BisectionStep>& trace, bool include_timing) {
  out << "step,t_lo,t_hi,oracle_iters,oracle_status,t_tested,elapsed_s\n";
  for (const auto& row : trace) {
    out << fmt::format("{},{:.17g},{:.17g},{},{},{:.17g},", row.step, row.t_lo, row.t_hi, row.oracle_iters,
                       to_string(row.oracle_status), row.t_tested);
    if (include_timing) out << fmt::format("{:.6f}", row.elapsed_s);
    out << '\n';
  }
}

}  // namespace cfmm
