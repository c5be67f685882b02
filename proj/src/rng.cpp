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
#include "squidofdm/rng.hpp"

#include <cmath>

namespace squidofdm {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t trial, Stream stream) {
  const std::uint64_t a = mix64(seed);
  const std::uint64_t b = mix64(a ^ mix64(trial + 0x5851f42d4c957f2dULL));
  const std::uint64_t c = mix64(b ^ static_cast<std::uint64_t>(stream));
  std::seed_seq seq{static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

Complex draw_cn(std::mt19937_64& rng, double variance) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
  const double re = gauss(rng);
  const double im = gauss(rng);
  return {re, im};
}

CGrid draw_cn_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double variance) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
  CGrid m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace squidofdm
