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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cfmm/apg.hpp"
#include "cfmm/bisection.hpp"
#include "cfmm/monte_carlo.hpp"
#include "cfmm/netgen.hpp"

namespace cfmm {

enum class ExperimentKind { kConvergence, kCdf, kScaling, kSingleSolve, kVerifyRate };
enum class EtaMode { kRandom, kEpa };

const char* to_string(ExperimentKind kind);
ExperimentKind parse_experiment(const std::string& name);

/// Everything needed to reproduce one experiment run.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kSingleSolve;
  Dimensions dims = Dimensions::uniform(100, 4, 10);
  PhysicalConfig physical;
  std::vector<std::string> solvers = {"apg"};  // "apg" and/or "bisection"
  double sigma = 100.0;
  ApgConfig apg;
  BisectionConfig bisection;
  int trials = 1;
  std::uint64_t seed = 1;
  std::string out_dir = "out";

  // verify-rate
  std::int64_t draws = 200000;
  EtaMode eta = EtaMode::kRandom;

  // scaling
  std::vector<int> scaling_aps = {100, 150, 200};
  int scaling_fixed_iters = 1000;

  /// Fill elapsed_s columns. Off by default so traces are reproducible byte for byte.
  bool record_timing = false;
  /// Multiply reported per-user rates by (1 - tau_p / tau_c).
  bool apply_prelog = false;
  /// Worker threads for trials and Monte-Carlo chunks (0 = hardware concurrency).
  int threads = 0;

  bool uses(const std::string& solver) const;
  void validate() const;
};

/// Defaults that reproduce the reference setup of each experiment.
ExperimentConfig default_config(ExperimentKind kind);

std::string config_to_json(const ExperimentConfig& cfg);
/// Overlays the fields present in `text` onto `base`.
ExperimentConfig config_from_json(const std::string& text, const ExperimentConfig& base);
ExperimentConfig load_config(const std::filesystem::path& path, const ExperimentConfig& base);

/// Independent per-trial seed derived from the master seed.
std::uint64_t trial_seed(std::uint64_t master, int trial);

/// Random feasible eta: per AP a random total power in (0, 1] split at random
/// across groups.
Vector random_feasible_eta(const Dimensions& dims, std::uint64_t seed);

struct CdfSummary {
  Vector sorted_rates;  // pooled per-user rates, ascending (nats)
  Vector cdf;           // (i + 1) / count
  double min = 0;
  double p5 = 0;
  double median = 0;
  double iqr = 0;
};

/// Empirical CDF of pooled rates; quantiles by linear interpolation.
CdfSummary summarize_cdf(std::vector<double> rates);
double quantile_sorted(const Vector& sorted, double q);

struct ConvergenceResult {
  NetworkInstance instance;
  std::optional<SolveReport> apg;
  std::optional<SolveReport> bisection;
  /// |min-rate(APG) - t*(bisection)| when both ran.
  std::optional<double> gap;
};

struct TrialOutcome {
  int trial = 0;
  std::uint64_t seed = 0;
  double min_rate_apg = 0;
  double min_rate_epa = 0;
  double f_sigma_apg = 0;
  bool apg_monotone = true;
  bool apg_feasible = true;
  Vector rates_apg;
  Vector rates_epa;
};

struct CdfResult {
  std::vector<TrialOutcome> trials;
  CdfSummary apg;
  CdfSummary epa;
};

struct ScalingRow {
  int num_aps = 0;
  std::string solver;
  int iterations = 0;
  double min_rate = 0;
  double wall_s = 0;
  double fixed_iter_wall_s = 0;  // APG only: best of 3 runs of scaling_fixed_iters iterations
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
};

struct VerifyRow {
  int instance = 0;
  int group = 0;
  int user = 0;
  double closed_form = 0;           // closed-form rate at eta
  double per_group_closed_form = 0; // interference written per group
  double epa_direct = 0;            // equal-power form (EtaMode::kEpa only)
  MonteCarloUserEstimate mc;
  double z_score = 0;
  bool pass = false;
  bool low_confidence = false;
};

struct VerifyResult {
  std::vector<VerifyRow> rows;
  bool all_pass = false;
};

/// Below this many draws the verification flags its intervals as low-confidence.
inline constexpr std::int64_t kRecommendedDraws = 10000;

ConvergenceResult run_convergence(const ExperimentConfig& cfg);
CdfResult run_cdf(const ExperimentConfig& cfg);
ScalingResult run_scaling(const ExperimentConfig& cfg);
ConvergenceResult run_single_solve(const ExperimentConfig& cfg);
VerifyResult run_verify_rate(const ExperimentConfig& cfg);

/// Runs the configured experiment and writes its CSVs plus
/// resolved_config.json into cfg.out_dir.
void run_experiment(const ExperimentConfig& cfg);

}  // namespace cfmm
