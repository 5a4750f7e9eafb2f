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

#include "cfmm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "cfmm/instance_io.hpp"
#include "cfmm/rates.hpp"
#include "config_json.hpp"

namespace cfmm {

namespace {

constexpr std::pair<ExperimentKind, const char*> kExperimentNames[] = {
    {ExperimentKind::kConvergence, "convergence"}, {ExperimentKind::kCdf, "cdf"},
    {ExperimentKind::kScaling, "scaling"},         {ExperimentKind::kSingleSolve, "single-solve"},
    {ExperimentKind::kVerifyRate, "verify-rate"},
};

constexpr int kTimingRepeats = 3;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count) on a small worker pool. Each index is
// handled exactly once; the first exception is rethrown after all workers join.
template <typename Body>
void parallel_for(int count, int threads, Body&& body) {
  const int workers = std::min(resolve_threads(threads), std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double prelog_factor(const ExperimentConfig& cfg) {
  if (!cfg.apply_prelog) return 1.0;
  return 1.0 - static_cast<double>(cfg.physical.pilot_len_symbols) / cfg.physical.coherence_len_symbols;
}

std::string g17(double v) { return fmt::format("{:.17g}", v); }

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

bool trace_is_monotone(const SolveReport& report) {
  for (std::size_t i = 1; i < report.apg_trace.size(); ++i) {
    if (report.apg_trace[i].f_sigma < report.apg_trace[i - 1].f_sigma) return false;
  }
  return true;
}

RateVector scaled(RateVector rates, double factor) {
  rates.rates *= factor;
  return rates;
}

void write_power_csv(std::ostream& out, const Vector& mu, int num_aps, int num_groups) {
  out << "ap,group,mu,eta\n";
  for (int m = 0; m < num_aps; ++m) {
    for (int n = 0; n < num_groups; ++n) {
      const double v = mu[n * num_aps + m];
      out << fmt::format("{},{},{},{}\n", m, n, g17(v), g17(v * v));
    }
  }
}

void write_cdf_csv(std::ostream& out, const CdfSummary& summary) {
  out << "rank,rate_nats,rate_bits,cdf\n";
  for (Eigen::Index i = 0; i < summary.sorted_rates.size(); ++i) {
    const double r = summary.sorted_rates[i];
    out << fmt::format("{},{},{},{}\n", i, g17(r), g17(nats_to_bits(r)), g17(summary.cdf[i]));
  }
}

SolveReport solve_with(const std::string& solver, const RateModel& model, const ExperimentConfig& cfg) {
  if (solver == "apg") return apg_solve(model, cfg.apg, cfg.sigma);
  return bisection_solve(model, cfg.bisection);
}

void write_solve_outputs(const ConvergenceResult& result, const ExperimentConfig& cfg,
                         const std::filesystem::path& dir) {
  save_instance(result.instance, dir / "instance.json");
  const double factor = prelog_factor(cfg);
  auto summary = open_output(dir / "summary.csv");
  summary << "solver,min_rate_nats,min_rate_bits,f_sigma_nats,iterations,termination,t_lower,t_upper,"
             "feasible,gap_nats,wall_s\n";
  const auto emit = [&](const SolveReport& report) {
    {
      auto trace = open_output(dir / fmt::format("trace_{}.csv", report.solver));
      if (report.solver == "apg") {
        write_apg_trace_csv(trace, report.apg_trace, cfg.record_timing);
      } else {
        write_bisection_trace_csv(trace, report.bisection_trace, cfg.record_timing);
      }
    }
    {
      auto rates = open_output(dir / fmt::format("rates_{}.csv", report.solver));
      write_rates_csv(rates, scaled(report.rates, factor));
    }
    {
      auto power = open_output(dir / fmt::format("power_{}.csv", report.solver));
      write_power_csv(power, report.mu, cfg.dims.num_aps, cfg.dims.num_groups());
    }
    const bool bisection = report.solver == "bisection";
    const double min_rate = report.f_true * factor;
    summary << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", report.solver, g17(min_rate),
                           g17(nats_to_bits(min_rate)), bisection ? std::string() : g17(report.f_sigma),
                           report.iterations, report.termination, bisection ? g17(report.t_lower) : std::string(),
                           bisection ? g17(report.t_upper) : std::string(),
                           is_feasible(report.mu, cfg.dims.num_aps, cfg.dims.num_groups()) ? 1 : 0,
                           result.gap ? g17(*result.gap) : std::string(),
                           cfg.record_timing ? fmt::format("{:.6f}", report.wall_seconds) : std::string());
  };
  if (result.apg) emit(*result.apg);
  if (result.bisection) emit(*result.bisection);
}

void write_cdf_outputs(const CdfResult& result, const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  {
    auto out = open_output(dir / "cdf_apg.csv");
    write_cdf_csv(out, result.apg);
  }
  {
    auto out = open_output(dir / "cdf_epa.csv");
    write_cdf_csv(out, result.epa);
  }
  const double factor = prelog_factor(cfg);
  {
    auto out = open_output(dir / "cdf_trials.csv");
    out << "trial,seed,min_rate_apg_nats,min_rate_apg_bits,min_rate_epa_nats,min_rate_epa_bits,apg_monotone,"
           "apg_feasible\n";
    for (const auto& t : result.trials) {
      const double apg = t.min_rate_apg * factor;
      const double epa = t.min_rate_epa * factor;
      out << fmt::format("{},{},{},{},{},{},{},{}\n", t.trial, t.seed, g17(apg), g17(nats_to_bits(apg)), g17(epa),
                         g17(nats_to_bits(epa)), t.apg_monotone ? 1 : 0, t.apg_feasible ? 1 : 0);
    }
  }
  {
    auto out = open_output(dir / "cdf_users.csv");
    out << "trial,scheme,group,user,rate_nats,rate_bits\n";
    const auto groups = cfg.dims.user_groups();
    for (const auto& t : result.trials) {
      for (const auto& [scheme, rates] : {std::pair{"apg", &t.rates_apg}, std::pair{"epa", &t.rates_epa}}) {
        for (int u = 0; u < static_cast<int>(groups.size()); ++u) {
          const int n = groups[static_cast<std::size_t>(u)];
          const double r = (*rates)[u] * factor;
          out << fmt::format("{},{},{},{},{},{}\n", t.trial, scheme, n, u - cfg.dims.group_offset(n), g17(r),
                             g17(nats_to_bits(r)));
        }
      }
    }
  }
  {
    auto out = open_output(dir / "cdf_summary.csv");
    out << "scheme,min_nats,p5_nats,median_nats,iqr_nats\n";
    for (const auto& [scheme, s] : {std::pair{"apg", &result.apg}, std::pair{"epa", &result.epa}}) {
      out << fmt::format("{},{},{},{},{}\n", scheme, g17(s->min), g17(s->p5), g17(s->median), g17(s->iqr));
    }
  }
}

void write_scaling_outputs(const ScalingResult& result, const ExperimentConfig& cfg,
                           const std::filesystem::path& dir) {
  auto out = open_output(dir / "scaling.csv");
  out << "num_aps,solver,iterations,min_rate_nats,min_rate_bits,wall_s,fixed_iter_wall_s\n";
  for (const auto& row : result.rows) {
    std::string wall;
    std::string fixed;
    if (cfg.record_timing) {
      wall = fmt::format("{:.6f}", row.wall_s);
      if (row.solver == "apg") fixed = fmt::format("{:.6f}", row.fixed_iter_wall_s);
    }
    out << fmt::format("{},{},{},{},{},{},{}\n", row.num_aps, row.solver, row.iterations, g17(row.min_rate),
                       g17(nats_to_bits(row.min_rate)), wall, fixed);
  }
}

void write_verify_outputs(const VerifyResult& result, const std::filesystem::path& dir) {
  auto out = open_output(dir / "verify_rate.csv");
  out << "instance,group,user,closed_form_nats,per_group_closed_form_nats,epa_direct_nats,mc_rate_nats,"
         "mc_std_error,z_score,pass,low_confidence\n";
  for (const auto& row : result.rows) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", row.instance, row.group, row.user, g17(row.closed_form),
                       g17(row.per_group_closed_form), std::isnan(row.epa_direct) ? std::string() : g17(row.epa_direct),
                       g17(row.mc.rate_nats), g17(row.mc.rate_std_error), g17(row.z_score), row.pass ? 1 : 0,
                       row.low_confidence ? 1 : 0);
  }
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kExperimentNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind parse_experiment(const std::string& name) {
  for (const auto& [k, n] : kExperimentNames) {
    if (name == n) return k;
  }
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

bool ExperimentConfig::uses(const std::string& solver) const {
  return std::find(solvers.begin(), solvers.end(), solver) != solvers.end();
}

void ExperimentConfig::validate() const {
  dims.validate();
  physical.validate(dims.num_groups());
  if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
  if (solvers.empty()) throw std::invalid_argument("ExperimentConfig: solver list is empty");
  std::set<std::string> seen;
  for (const auto& s : solvers) {
    if (s != "apg" && s != "bisection") throw std::invalid_argument("ExperimentConfig: unknown solver '" + s + "'");
    if (!seen.insert(s).second) throw std::invalid_argument("ExperimentConfig: duplicate solver '" + s + "'");
  }
  if (!(sigma > 0)) throw std::invalid_argument("ExperimentConfig: sigma must be > 0");
  if (uses("apg")) apg.validate();
  if (uses("bisection")) bisection.validate();
  if (draws < 1) throw std::invalid_argument("ExperimentConfig: draws must be >= 1");
  if (scaling_aps.empty()) throw std::invalid_argument("ExperimentConfig: scaling_aps is empty");
  for (int m : scaling_aps) {
    if (m < 1) throw std::invalid_argument("ExperimentConfig: scaling_aps entries must be >= 1");
  }
  if (scaling_fixed_iters < 1) throw std::invalid_argument("ExperimentConfig: scaling_fixed_iters must be >= 1");
  if (threads < 0) throw std::invalid_argument("ExperimentConfig: threads must be >= 0");
  if (out_dir.empty()) throw std::invalid_argument("ExperimentConfig: out_dir is empty");
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.experiment = kind;
  switch (kind) {
    case ExperimentKind::kConvergence:
      cfg.dims = Dimensions::uniform(100, 4, 10);
      cfg.solvers = {"apg", "bisection"};
      break;
    case ExperimentKind::kCdf:
      cfg.dims = Dimensions::uniform(50, 2, 10);
      cfg.trials = 200;
      break;
    case ExperimentKind::kScaling:
      cfg.dims = Dimensions::uniform(100, 2, 15);
      cfg.solvers = {"apg", "bisection"};
      cfg.record_timing = true;
      break;
    case ExperimentKind::kSingleSolve:
      cfg.dims = Dimensions::uniform(100, 4, 10);
      break;
    case ExperimentKind::kVerifyRate:
      cfg.dims = Dimensions::uniform(8, 2, 3);
      cfg.trials = 10;
      break;
  }
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = to_string(cfg.experiment);
  j["dims"] = cfg.dims;
  j["physical"] = cfg.physical;
  j["solvers"] = cfg.solvers;
  j["sigma"] = cfg.sigma;
  j["apg"] = cfg.apg;
  j["bisection"] = cfg.bisection;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["out_dir"] = cfg.out_dir;
  j["draws"] = cfg.draws;
  j["eta"] = cfg.eta == EtaMode::kEpa ? "epa" : "random";
  j["scaling_aps"] = cfg.scaling_aps;
  j["scaling_fixed_iters"] = cfg.scaling_fixed_iters;
  j["record_timing"] = cfg.record_timing;
  j["apply_prelog"] = cfg.apply_prelog;
  j["threads"] = cfg.threads;
  return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text, const ExperimentConfig& base) {
  const json j = json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("config: top-level value must be an object");
  static const std::set<std::string> known = {
      "experiment", "dims",        "physical",   "solvers",     "sigma",           "apg",
      "bisection",  "trials",      "seed",       "out_dir",     "draws",           "eta",
      "scaling_aps", "scaling_fixed_iters", "record_timing", "apply_prelog", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  ExperimentConfig cfg = base;
  if (auto it = j.find("experiment"); it != j.end()) cfg.experiment = parse_experiment(it->get<std::string>());
  read_if(j, "dims", cfg.dims);
  read_if(j, "physical", cfg.physical);
  read_if(j, "solvers", cfg.solvers);
  read_if(j, "sigma", cfg.sigma);
  read_if(j, "apg", cfg.apg);
  read_if(j, "bisection", cfg.bisection);
  read_if(j, "trials", cfg.trials);
  read_if(j, "seed", cfg.seed);
  read_if(j, "out_dir", cfg.out_dir);
  read_if(j, "draws", cfg.draws);
  if (auto it = j.find("eta"); it != j.end()) {
    const auto mode = it->get<std::string>();
    if (mode == "epa") {
      cfg.eta = EtaMode::kEpa;
    } else if (mode == "random") {
      cfg.eta = EtaMode::kRandom;
    } else {
      throw std::invalid_argument("config: eta must be 'random' or 'epa'");
    }
  }
  read_if(j, "scaling_aps", cfg.scaling_aps);
  read_if(j, "scaling_fixed_iters", cfg.scaling_fixed_iters);
  read_if(j, "record_timing", cfg.record_timing);
  read_if(j, "apply_prelog", cfg.apply_prelog);
  read_if(j, "threads", cfg.threads);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, const ExperimentConfig& base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str(), base);
}

std::uint64_t trial_seed(std::uint64_t master, int trial) {
  return derive_seed(master, Stream::kTrial, static_cast<std::uint64_t>(trial));
}

Vector random_feasible_eta(const Dimensions& dims, std::uint64_t seed) {
  Engine engine = make_engine(seed, Stream::kPowerDraw);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> split(1.0);
  const int num_aps = dims.num_aps;
  const int num_groups = dims.num_groups();
  Vector eta(dims.num_coefficients());
  std::vector<double> share(static_cast<std::size_t>(num_groups));
  for (int m = 0; m < num_aps; ++m) {
    const double total = 1.0 - unit(engine);  // (0, 1]
    double sum = 0;
    for (auto& s : share) sum += (s = split(engine));
    for (int n = 0; n < num_groups; ++n) eta[n * num_aps + m] = total * share[static_cast<std::size_t>(n)] / sum;
  }
  return eta;
}

double quantile_sorted(const Vector& sorted, double q) {
  if (sorted.size() == 0) throw std::invalid_argument("quantile_sorted: empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<Eigen::Index>(std::floor(pos));
  const auto hi = std::min<Eigen::Index>(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

CdfSummary summarize_cdf(std::vector<double> rates) {
  if (rates.empty()) throw std::invalid_argument("summarize_cdf: empty sample");
  std::sort(rates.begin(), rates.end());
  CdfSummary s;
  const auto count = static_cast<Eigen::Index>(rates.size());
  s.sorted_rates = Eigen::Map<const Vector>(rates.data(), count);
  s.cdf.resize(count);
  for (Eigen::Index i = 0; i < count; ++i) s.cdf[i] = static_cast<double>(i + 1) / static_cast<double>(count);
  s.min = s.sorted_rates[0];
  s.p5 = quantile_sorted(s.sorted_rates, 0.05);
  s.median = quantile_sorted(s.sorted_rates, 0.5);
  s.iqr = quantile_sorted(s.sorted_rates, 0.75) - quantile_sorted(s.sorted_rates, 0.25);
  return s;
}

ConvergenceResult run_single_solve(const ExperimentConfig& cfg) {
  cfg.validate();
  ConvergenceResult result{generate_instance(cfg.dims, cfg.physical, trial_seed(cfg.seed, 0)), {}, {}, {}};
  const RateModel model = build_rate_model(result.instance);
  if (cfg.uses("apg")) result.apg = solve_with("apg", model, cfg);
  if (cfg.uses("bisection")) result.bisection = solve_with("bisection", model, cfg);
  if (result.apg && result.bisection) result.gap = std::abs(result.apg->f_true - result.bisection->t_lower);
  return result;
}

ConvergenceResult run_convergence(const ExperimentConfig& cfg) {
  if (!cfg.uses("apg") || !cfg.uses("bisection")) {
    throw std::invalid_argument("convergence: both solvers must be enabled");
  }
  return run_single_solve(cfg);
}

CdfResult run_cdf(const ExperimentConfig& cfg) {
  cfg.validate();
  CdfResult result;
  result.trials.resize(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, cfg.threads, [&](int i) {
    TrialOutcome& t = result.trials[static_cast<std::size_t>(i)];
    t.trial = i;
    t.seed = trial_seed(cfg.seed, i);
    const NetworkInstance instance = generate_instance(cfg.dims, cfg.physical, t.seed);
    const RateModel model = build_rate_model(instance);
    const SolveReport apg = apg_solve(model, cfg.apg, cfg.sigma);
    const RateVector epa = epa_rates(model);
    t.min_rate_apg = apg.f_true;
    t.min_rate_epa = epa.min();
    t.f_sigma_apg = apg.f_sigma;
    t.apg_monotone = trace_is_monotone(apg);
    t.apg_feasible = is_feasible(apg.mu, cfg.dims.num_aps, cfg.dims.num_groups());
    t.rates_apg = apg.rates.rates;
    t.rates_epa = epa.rates;
  });

  const double factor = prelog_factor(cfg);
  std::vector<double> pooled_apg;
  std::vector<double> pooled_epa;
  for (const auto& t : result.trials) {
    for (Eigen::Index u = 0; u < t.rates_apg.size(); ++u) pooled_apg.push_back(t.rates_apg[u] * factor);
    for (Eigen::Index u = 0; u < t.rates_epa.size(); ++u) pooled_epa.push_back(t.rates_epa[u] * factor);
  }
  result.apg = summarize_cdf(std::move(pooled_apg));
  result.epa = summarize_cdf(std::move(pooled_epa));
  return result;
}

ScalingResult run_scaling(const ExperimentConfig& cfg) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  ScalingResult result;
  for (std::size_t idx = 0; idx < cfg.scaling_aps.size(); ++idx) {
    Dimensions dims = cfg.dims;
    dims.num_aps = cfg.scaling_aps[idx];
    const NetworkInstance instance = generate_instance(dims, cfg.physical, trial_seed(cfg.seed, static_cast<int>(idx)));
    const RateModel model = build_rate_model(instance);
    for (const auto& solver : cfg.solvers) {
      ScalingRow row;
      row.num_aps = dims.num_aps;
      row.solver = solver;
      const SolveReport report = solve_with(solver, model, cfg);
      row.iterations = report.iterations;
      row.min_rate = report.f_true;
      row.wall_s = report.wall_seconds;
      if (solver == "apg") {
        ApgConfig fixed = cfg.apg;
        fixed.max_iters = cfg.scaling_fixed_iters;
        fixed.stop_tol = 0.0;  // never met: run exactly max_iters iterations
        row.fixed_iter_wall_s = std::numeric_limits<double>::infinity();
        for (int repeat = 0; repeat < kTimingRepeats; ++repeat) {
          const auto start = Clock::now();
          apg_solve(model, fixed, cfg.sigma);
          row.fixed_iter_wall_s =
              std::min(row.fixed_iter_wall_s, std::chrono::duration<double>(Clock::now() - start).count());
        }
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

VerifyResult run_verify_rate(const ExperimentConfig& cfg) {
  cfg.validate();
  VerifyResult result;
  result.all_pass = true;
  const int num_groups = cfg.dims.num_groups();
  for (int i = 0; i < cfg.trials; ++i) {
    const std::uint64_t seed = trial_seed(cfg.seed, i);
    const NetworkInstance instance = generate_instance(cfg.dims, cfg.physical, seed);
    const Vector eta = cfg.eta == EtaMode::kEpa
                           ? Vector::Constant(cfg.dims.num_coefficients(), 1.0 / num_groups)
                           : random_feasible_eta(cfg.dims, seed);
    const MonteCarloReport mc =
        rate_oracle_monte_carlo(instance, eta, cfg.draws, derive_seed(seed, Stream::kSmallScale), cfg.threads);
    std::optional<RateVector> epa;
    if (cfg.eta == EtaMode::kEpa) epa = epa_rates_direct(instance);
    for (const auto& est : mc.users) {
      VerifyRow row;
      row.instance = i;
      row.group = est.group;
      row.user = est.user;
      row.closed_form = user_rate_eta(instance, eta, est.group, est.user);
      row.per_group_closed_form = user_rate_eta_per_group_interference(instance, eta, est.group, est.user);
      row.epa_direct = epa ? epa->at(est.group, est.user) : std::numeric_limits<double>::quiet_NaN();
      row.mc = est;
      row.z_score = (est.rate_nats - row.closed_form) / est.rate_std_error;
      row.pass = std::abs(row.z_score) <= 3.0;
      if (epa) row.pass = row.pass && std::abs((est.rate_nats - row.epa_direct) / est.rate_std_error) <= 3.0;
      row.low_confidence = cfg.draws < kRecommendedDraws;
      result.all_pass = result.all_pass && row.pass;
      result.rows.push_back(row);
    }
  }
  return result;
}

void run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  {
    auto out = open_output(dir / "resolved_config.json");
    out << config_to_json(cfg) << '\n';
  }
  switch (cfg.experiment) {
    case ExperimentKind::kConvergence:
      write_solve_outputs(run_convergence(cfg), cfg, dir);
      break;
    case ExperimentKind::kSingleSolve:
      write_solve_outputs(run_single_solve(cfg), cfg, dir);
      break;
    case ExperimentKind::kCdf:
      write_cdf_outputs(run_cdf(cfg), cfg, dir);
      break;
    case ExperimentKind::kScaling:
      write_scaling_outputs(run_scaling(cfg), cfg, dir);
      break;
    case ExperimentKind::kVerifyRate:
      write_verify_outputs(run_verify_rate(cfg), dir);
      break;
  }
}

}  // namespace cfmm
