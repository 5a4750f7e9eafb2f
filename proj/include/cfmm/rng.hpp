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
#include <random>

namespace cfmm {

using Engine = std::mt19937_64;

/// Named random streams. Each purpose draws from its own engine so that, for
/// example, adding Monte-Carlo draws never perturbs the generated geometry.
enum class Stream : std::uint64_t {
  kGeometry = 1,
  kShadowing = 2,
  kSmallScale = 3,
  kSolverInit = 4,
  kTrial = 5,
  kPowerDraw = 6,
};

struct RngSeed {
  std::uint64_t seed = 0;
  Stream stream = Stream::kGeometry;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based split: (seed, stream, index) -> independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

Engine make_engine(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

}  // namespace cfmm
