// SPDX-License-Identifier: Apache-2.0
//
// squid-ofdm: phase-quantized constant-envelope MU-MIMO-OFDM precoding
// Copyright (C) 2026 The squid-ofdm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#pragma once

#include <cstdint>
#include <random>

#include "squidofdm/types.hpp"

namespace squidofdm {

/// Independent random streams of one Monte Carlo trial. Each (seed, trial, stream)
/// triple seeds its own engine, so trials can run in any order or in parallel
/// without changing a single draw.
enum class Stream : std::uint64_t {
  channel = 1,
  symbols = 2,
  noise = 3,
  info_bits = 4,
  interleaver = 5,
  validation = 6,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t trial, Stream stream);

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
Complex draw_cn(std::mt19937_64& rng, double variance);

/// rows x cols matrix of i.i.d. CN(0, variance), filled row by row.
CGrid draw_cn_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double variance);

}  // namespace squidofdm
