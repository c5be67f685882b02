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

#include <vector>

#include "squidofdm/grid.hpp"
#include "squidofdm/types.hpp"

namespace squidofdm {

/// Radicand floor applied when (1/S) sum |y|^2 - N0 is not positive.
inline constexpr double kBetaRadicandFloor = 1e-12;

struct UeEstimate {
  std::vector<double> beta;   // per UE
  std::vector<bool> clamped;  // per UE, true when the radicand hit the floor
  FreqGrid s_tilde;           // U x N, beta_u y_{u,k} on occupied k, zero on guards

  bool any_clamped() const;
};

/// Blind per-UE scaling beta_u = 1 / sqrt((1/S) sum_{k in I} |y_{u,k}|^2 - N0),
/// computed from that UE's received samples and N0 only.
UeEstimate ue_scale(const FreqGrid& y, const OfdmGrid& grid, double n0);

/// Nearest-neighbour decisions, U x S (column j is subcarrier grid.occupied()[j]).
SymbolIndices detect_nearest(const UeEstimate& est, const OfdmGrid& grid, const Constellation& constellation);

/// Number of differing label bits between transmitted and detected indices (index == Gray label).
long long count_bit_errors(const SymbolIndices& sent, const SymbolIndices& detected);

}  // namespace squidofdm
