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

#include "cfmm/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "config_json.hpp"

namespace cfmm {

namespace {

json matrix_to_json(const Matrix& a) {
  json flat = json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) flat.push_back(a(r, c));
  }
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(flat)}};
}

Matrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw std::invalid_argument("instance json: matrix data length mismatch");
  }
  Matrix a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) a(r, c) = data[static_cast<std::size_t>(r * cols + c)].get<double>();
  }
  return a;
}

}  // namespace

std::string instance_to_json(const NetworkInstance& instance) {
  json doc;
  doc["format"] = "cellfree-maxmin/instance";
  doc["version"] = 1;
  doc["dims"] = instance.dims;
  doc["config"] = instance.config;
  doc["seed"] = json{{"seed", instance.seed}};
  doc["noise_variance_w"] = instance.noise_variance_w;
  doc["rho_d_w"] = instance.rho_d_w();
  doc["rho_p_w"] = instance.rho_p_w();
  doc["zeta"] = matrix_to_json(instance.zeta);
  doc["gamma"] = matrix_to_json(instance.gamma);
  return doc.dump(2);
}

NetworkInstance instance_from_json(const std::string& text) {
  const json doc = json::parse(text);
  NetworkInstance instance;
  instance.dims = doc.at("dims").get<Dimensions>();
  instance.config = doc.at("config").get<PhysicalConfig>();
  instance.seed = doc.at("seed").at("seed").get<std::uint64_t>();
  instance.noise_variance_w = doc.at("noise_variance_w").get<double>();
  instance.zeta = matrix_from_json(doc.at("zeta"));
  instance.gamma = matrix_from_json(doc.at("gamma"));
  instance.validate();
  return instance;
}

void save_instance(const NetworkInstance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << instance_to_json(instance) << '\n';
}

NetworkInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json(buffer.str());
}

}  // namespace cfmm
