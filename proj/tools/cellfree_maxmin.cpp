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

// Command-line front end for the experiment runners.
//
//   cellfree-maxmin <experiment> [--config path] [--seed u64] [--out dir]
//                   [--solver apg|bisection|both] [--trials n] [--threads n]
//                   [--emit-config]
//
// On failure a single JSON object is written to stderr, e.g.
//   {"status":"error","kind":"invalid_argument","message":"..."}

#include <cstdint>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfmm/harness.hpp"

namespace {

int fail(const char* kind, const std::string& message, int code) {
  std::cerr << nlohmann::json{{"status", "error"}, {"kind", kind}, {"message", message}}.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-min fair power control for multigroup multicast cell-free massive MIMO"};
  std::string experiment;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> solver;
  std::optional<int> trials;
  std::optional<int> threads;
  bool emit_config = false;

  app.add_option("experiment", experiment, "convergence | cdf | scaling | single-solve | verify-rate")->required();
  app.add_option("--config", config_path, "JSON config overlaid on the experiment defaults");
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--solver", solver, "apg | bisection | both")->check(CLI::IsMember({"apg", "bisection", "both"}));
  app.add_option("--trials", trials, "Number of trials");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_flag("--emit-config", emit_config, "Print the resolved config as JSON and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    const cfmm::ExperimentKind kind = cfmm::parse_experiment(experiment);
    cfmm::ExperimentConfig cfg = cfmm::default_config(kind);
    if (!config_path.empty()) {
      cfg = cfmm::load_config(config_path, cfg);
      if (cfg.experiment != kind) {
        throw std::invalid_argument(std::string("config is for experiment '") + cfmm::to_string(cfg.experiment) +
                                    "', command line asks for '" + experiment + "'");
      }
    }
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.out_dir = *out_dir;
    if (solver) {
      cfg.solvers = *solver == "both" ? std::vector<std::string>{"apg", "bisection"}
                                      : std::vector<std::string>{*solver};
    }
    if (trials) cfg.trials = *trials;
    if (threads) cfg.threads = *threads;
    cfg.validate();

    if (emit_config) {
      std::cout << cfmm::config_to_json(cfg) << '\n';
      return 0;
    }
    cfmm::run_experiment(cfg);
  } catch (const std::invalid_argument& e) {
    return fail("invalid_argument", e.what(), 2);
  } catch (const nlohmann::json::exception& e) {
    return fail("config", e.what(), 2);
  } catch (const std::exception& e) {
    return fail("runtime_error", e.what(), 1);
  }
  return 0;
}
