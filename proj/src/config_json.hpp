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

#include <json.hpp>

#include "cfmm/apg.hpp"
#include "cfmm/bisection.hpp"
#include "cfmm/netgen.hpp"
#include "cfmm/types.hpp"

namespace cfmm {

using json = nlohmann::json;

// Readers overlay only the keys present in the document, so a partial config
// keeps the defaults of the object it is read into.
template <typename T>
void read_if(const json& j, const char* key, T& field) {
  if (auto it = j.find(key); it != j.end()) it->get_to(field);
}

inline void to_json(json& j, const Dimensions& d) {
  j = json{{"num_aps", d.num_aps}, {"group_sizes", d.group_sizes}};
}

inline void from_json(const json& j, Dimensions& d) {
  read_if(j, "num_aps", d.num_aps);
  read_if(j, "group_sizes", d.group_sizes);
}

inline void to_json(json& j, const PhysicalConfig& c) {
  j = json{{"bandwidth_hz", c.bandwidth_hz},
           {"carrier_freq_hz", c.carrier_freq_hz},
           {"noise_figure_db", c.noise_figure_db},
           {"temperature_k", c.temperature_k},
           {"pilot_power_w", c.pilot_power_w},
           {"data_power_w", c.data_power_w},
           {"pilot_len_symbols", c.pilot_len_symbols},
           {"coherence_len_symbols", c.coherence_len_symbols},
           {"shadow_std_db", c.shadow_std_db},
           {"area_side_m", c.area_side_m},
           {"pathloss_d0_m", c.pathloss_d0_m},
           {"pathloss_d1_m", c.pathloss_d1_m},
           {"ap_height_m", c.ap_height_m},
           {"user_height_m", c.user_height_m}};
}

inline void from_json(const json& j, PhysicalConfig& c) {
  read_if(j, "bandwidth_hz", c.bandwidth_hz);
  read_if(j, "carrier_freq_hz", c.carrier_freq_hz);
  read_if(j, "noise_figure_db", c.noise_figure_db);
  read_if(j, "temperature_k", c.temperature_k);
  read_if(j, "pilot_power_w", c.pilot_power_w);
  read_if(j, "data_power_w", c.data_power_w);
  read_if(j, "pilot_len_symbols", c.pilot_len_symbols);
  read_if(j, "coherence_len_symbols", c.coherence_len_symbols);
  read_if(j, "shadow_std_db", c.shadow_std_db);
  read_if(j, "area_side_m", c.area_side_m);
  read_if(j, "pathloss_d0_m", c.pathloss_d0_m);
  read_if(j, "pathloss_d1_m", c.pathloss_d1_m);
  read_if(j, "ap_height_m", c.ap_height_m);
  read_if(j, "user_height_m", c.user_height_m);
}

inline void to_json(json& j, const ApgConfig& c) {
  j = json{{"delta", c.delta},
           {"kappa", c.kappa},
           {"alpha_y0", c.alpha_y0},
           {"alpha_mu0", c.alpha_mu0},
           {"max_iters", c.max_iters},
           {"stop_tol", c.stop_tol},
           {"stop_window", c.stop_window},
           {"max_backtracks", c.max_backtracks},
           {"step_growth", c.step_growth},
           {"sigma_continuation", c.sigma_continuation},
           {"sigma_growth", c.sigma_growth},
           {"sigma_max", c.sigma_max}};
}

inline void from_json(const json& j, ApgConfig& c) {
  read_if(j, "delta", c.delta);
  read_if(j, "kappa", c.kappa);
  read_if(j, "alpha_y0", c.alpha_y0);
  read_if(j, "alpha_mu0", c.alpha_mu0);
  read_if(j, "max_iters", c.max_iters);
  read_if(j, "stop_tol", c.stop_tol);
  read_if(j, "stop_window", c.stop_window);
  read_if(j, "max_backtracks", c.max_backtracks);
  read_if(j, "step_growth", c.step_growth);
  read_if(j, "sigma_continuation", c.sigma_continuation);
  read_if(j, "sigma_growth", c.sigma_growth);
  read_if(j, "sigma_max", c.sigma_max);
}

inline void to_json(json& j, const BisectionConfig& c) {
  j = json{{"t_lower", c.t_lower},
           {"t_upper", c.t_upper ? json(*c.t_upper) : json(nullptr)},
           {"tol_t", c.tol_t},
           {"eps_soc", c.eps_soc},
           {"oracle_max_iters", c.oracle_max_iters},
           {"oracle_apg", c.oracle_apg}};
}

inline void from_json(const json& j, BisectionConfig& c) {
  read_if(j, "t_lower", c.t_lower);
  if (auto it = j.find("t_upper"); it != j.end()) {
    if (it->is_null()) {
      c.t_upper.reset();
    } else {
      c.t_upper = it->get<double>();
    }
  }
  read_if(j, "tol_t", c.tol_t);
  read_if(j, "eps_soc", c.eps_soc);
  read_if(j, "oracle_max_iters", c.oracle_max_iters);
  read_if(j, "oracle_apg", c.oracle_apg);
}

}  // namespace cfmm
