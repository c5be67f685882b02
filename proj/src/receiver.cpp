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
#include "squidofdm/receiver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace squidofdm {

bool UeEstimate::any_clamped() const { return std::any_of(clamped.begin(), clamped.end(), [](bool c) { return c; }); }

UeEstimate ue_scale(const FreqGrid& y, const OfdmGrid& grid, double n0) {
  if (y.cols() != grid.size()) throw ConfigError("ue_scale: received grid does not match the OFDM grid");
  const auto num_ue = y.rows();
  UeEstimate est;
  est.beta.resize(static_cast<std::size_t>(num_ue));
  est.clamped.resize(static_cast<std::size_t>(num_ue));
  est.s_tilde = FreqGrid(num_ue, y.cols());
  const double s = grid.occupied_count();

  for (Eigen::Index u = 0; u < num_ue; ++u) {
    double power = 0.0;
    for (int k : grid.occupied()) power += std::norm(y(u, k));
    double radicand = power / s - n0;
    const bool clamp = !(radicand > kBetaRadicandFloor);
    if (clamp) radicand = kBetaRadicandFloor;
    const double beta = 1.0 / std::sqrt(radicand);
    est.beta[static_cast<std::size_t>(u)] = beta;
    est.clamped[static_cast<std::size_t>(u)] = clamp;
    for (int k : grid.occupied()) est.s_tilde(u, k) = beta * y(u, k);
  }
  return est;
}

SymbolIndices detect_nearest(const UeEstimate& est, const OfdmGrid& grid, const Constellation& constellation) {
  const auto& occ = grid.occupied();
  SymbolIndices out(est.s_tilde.rows(), grid.occupied_count());
  for (Eigen::Index u = 0; u < out.rows(); ++u) {
    for (std::size_t j = 0; j < occ.size(); ++j) {
      out(u, static_cast<Eigen::Index>(j)) = constellation.nearest(est.s_tilde(u, occ[j]));
    }
  }
  return out;
}

long long count_bit_errors(const SymbolIndices& sent, const SymbolIndices& detected) {
  if (sent.rows() != detected.rows() || sent.cols() != detected.cols()) {
    throw ConfigError("count_bit_errors: shape mismatch");
  }
  long long errors = 0;
  for (Eigen::Index i = 0; i < sent.size(); ++i) {
    errors += std::popcount(static_cast<unsigned>(sent.data()[i] ^ detected.data()[i]));
  }
  return errors;
}

}  // namespace squidofdm
