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

#include <filesystem>
#include <string>

#include "cfmm/netgen.hpp"

namespace cfmm {

/// JSON document: dims, config echo, zeta and gamma as row-major arrays,
/// noise variance and the seed record. Doubles are written with 17
/// significant digits so a round trip is value-exact.
std::string instance_to_json(const NetworkInstance& instance);
NetworkInstance instance_from_json(const std::string& text);

void save_instance(const NetworkInstance& instance, const std::filesystem::path& path);
NetworkInstance load_instance(const std::filesystem::path& path);

}  // namespace cfmm
