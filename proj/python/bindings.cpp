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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfmm/apg.hpp"
#include "cfmm/bisection.hpp"
#include "cfmm/harness.hpp"
#include "cfmm/instance_io.hpp"
#include "cfmm/monte_carlo.hpp"
#include "cfmm/projection.hpp"
#include "cfmm/rates.hpp"
#include "cfmm/smoothing.hpp"

namespace py = pybind11;
using namespace cfmm;

namespace {

py::dict report_to_dict(const SolveReport& r) {
  py::dict d;
  d["solver"] = r.solver;
  d["mu"] = r.mu;
  d["min_rate"] = r.f_true;
  d["f_sigma"] = r.f_sigma;
  d["rates"] = r.rates.rates;
  d["iterations"] = r.iterations;
  d["termination"] = r.termination;
  d["wall_seconds"] = r.wall_seconds;
  if (r.solver == "apg") {
    py::list f_sigma;
    py::list f_true;
    for (const auto& row : r.apg_trace) {
      f_sigma.append(row.f_sigma);
      f_true.append(row.f_true);
    }
    d["trace_f_sigma"] = f_sigma;
    d["trace_f_true"] = f_true;
  } else {
    d["t_lower"] = r.t_lower;
    d["t_upper"] = r.t_upper;
    d["undecided"] = r.undecided;
    d["approximate"] = r.approximate;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Max-min fair power control for multigroup multicast cell-free massive MIMO";

  py::class_<Dimensions>(m, "Dimensions")
      .def(py::init([](int num_aps, std::vector<int> group_sizes) {
             Dimensions d{num_aps, std::move(group_sizes)};
             d.validate();
             return d;
           }),
           py::arg("num_aps"), py::arg("group_sizes"))
      .def_static("uniform", &Dimensions::uniform, py::arg("num_aps"), py::arg("num_groups"), py::arg("group_size"))
      .def_readonly("num_aps", &Dimensions::num_aps)
      .def_readonly("group_sizes", &Dimensions::group_sizes)
      .def_property_readonly("num_groups", &Dimensions::num_groups)
      .def_property_readonly("total_users", &Dimensions::total_users)
      .def("__repr__", [](const Dimensions& d) {
        return "Dimensions(num_aps=" + std::to_string(d.num_aps) + ", num_groups=" + std::to_string(d.num_groups()) +
               ", total_users=" + std::to_string(d.total_users()) + ")";
      });

  py::class_<PhysicalConfig>(m, "PhysicalConfig")
      .def(py::init<>())
      .def_readwrite("bandwidth_hz", &PhysicalConfig::bandwidth_hz)
      .def_readwrite("carrier_freq_hz", &PhysicalConfig::carrier_freq_hz)
      .def_readwrite("noise_figure_db", &PhysicalConfig::noise_figure_db)
      .def_readwrite("temperature_k", &PhysicalConfig::temperature_k)
      .def_readwrite("pilot_power_w", &PhysicalConfig::pilot_power_w)
      .def_readwrite("data_power_w", &PhysicalConfig::data_power_w)
      .def_readwrite("pilot_len_symbols", &PhysicalConfig::pilot_len_symbols)
      .def_readwrite("coherence_len_symbols", &PhysicalConfig::coherence_len_symbols)
      .def_readwrite("shadow_std_db", &PhysicalConfig::shadow_std_db)
      .def_readwrite("area_side_m", &PhysicalConfig::area_side_m);

  py::class_<NetworkInstance>(m, "NetworkInstance")
      .def_readonly("dims", &NetworkInstance::dims)
      .def_readonly("config", &NetworkInstance::config)
      .def_readonly("seed", &NetworkInstance::seed)
      .def_readonly("zeta", &NetworkInstance::zeta)
      .def_readonly("gamma", &NetworkInstance::gamma)
      .def_readonly("noise_variance_w", &NetworkInstance::noise_variance_w);

  py::class_<RateModel>(m, "RateModel")
      .def_readonly("dims", &RateModel::dims)
      .def_readonly("rho_bar", &RateModel::rho_bar)
      .def_readonly("sqrt_gamma", &RateModel::sqrt_gamma)
      .def_readonly("interference", &RateModel::interference);

  m.def("noise_power", &noise_power, py::arg("config"));
  m.def("generate_instance", &generate_instance, py::arg("dims"), py::arg("config") = PhysicalConfig{},
        py::arg("seed") = 1);
  m.def("instance_to_json", &instance_to_json);
  m.def("instance_from_json", &instance_from_json);
  m.def("build_rate_model", py::overload_cast<const NetworkInstance&>(&build_rate_model), py::arg("instance"));

  m.def("user_rates", [](const RateModel& model, const Vector& mu) { return user_rates(model, mu).rates; },
        py::arg("model"), py::arg("mu"));
  m.def("min_rate", &min_rate, py::arg("model"), py::arg("mu"));
  m.def("epa_rates", [](const RateModel& model) { return epa_rates(model).rates; }, py::arg("model"));
  m.def("smooth_objective", &smooth_objective, py::arg("model"), py::arg("mu"), py::arg("sigma") = 100.0);
  m.def("smooth_gradient", &smooth_gradient, py::arg("model"), py::arg("mu"), py::arg("sigma") = 100.0);
  m.def(
      "project_feasible",
      [](const Vector& x, int num_aps, int num_groups) { return project_feasible(x, num_aps, num_groups).values(); },
      py::arg("x"), py::arg("num_aps"), py::arg("num_groups"));
  m.def(
      "is_feasible", [](const Vector& mu, int num_aps, int num_groups) { return is_feasible(mu, num_aps, num_groups); },
      py::arg("mu"), py::arg("num_aps"), py::arg("num_groups"));

  m.def(
      "apg_solve",
      [](const RateModel& model, double sigma, int max_iters) {
        ApgConfig cfg;
        cfg.max_iters = max_iters;
        SolveReport r;
        {
          py::gil_scoped_release release;
          r = apg_solve(model, cfg, sigma);
        }
        return report_to_dict(r);
      },
      py::arg("model"), py::arg("sigma") = 100.0, py::arg("max_iters") = 5000);

  m.def(
      "bisection_solve",
      [](const RateModel& model, double tol_t, double eps_soc) {
        BisectionConfig cfg;
        cfg.tol_t = tol_t;
        cfg.eps_soc = eps_soc;
        SolveReport r;
        {
          py::gil_scoped_release release;
          r = bisection_solve(model, cfg);
        }
        return report_to_dict(r);
      },
      py::arg("model"), py::arg("tol_t") = 1e-4, py::arg("eps_soc") = 1e-6);

  m.def(
      "monte_carlo_rates",
      [](const NetworkInstance& instance, const Vector& eta, std::int64_t draws, std::uint64_t seed, int threads) {
        MonteCarloReport report;
        {
          py::gil_scoped_release release;
          report = rate_oracle_monte_carlo(instance, eta, draws, seed, threads);
        }
        Vector rate(static_cast<Eigen::Index>(report.users.size()));
        Vector stderr_(rate.size());
        for (std::size_t u = 0; u < report.users.size(); ++u) {
          rate[static_cast<Eigen::Index>(u)] = report.users[u].rate_nats;
          stderr_[static_cast<Eigen::Index>(u)] = report.users[u].rate_std_error;
        }
        return py::make_tuple(rate, stderr_);
      },
      py::arg("instance"), py::arg("eta"), py::arg("draws"), py::arg("seed") = 1, py::arg("threads") = 0,
      "Monte-Carlo rate estimates and their standard errors, flat user order.");

  m.def(
      "default_config", [](const std::string& experiment) { return config_to_json(default_config(parse_experiment(experiment))); },
      py::arg("experiment"), "Default config of an experiment as a JSON string.");
  m.def(
      "run_experiment",
      [](const std::string& experiment, const std::string& config_json) {
        ExperimentConfig cfg = config_from_json(config_json, default_config(parse_experiment(experiment)));
        py::gil_scoped_release release;
        run_experiment(cfg);
      },
      py::arg("experiment"), py::arg("config_json") = "{}",
      "Runs an experiment with the given JSON overrides and writes its CSVs to out_dir.");
}
