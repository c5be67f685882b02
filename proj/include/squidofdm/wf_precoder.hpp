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

#include "squidofdm/channel.hpp"
#include "squidofdm/grid.hpp"
#include "squidofdm/quantizer.hpp"
#include "squidofdm/types.hpp"

namespace squidofdm {

struct WfResult {
  TimeGrid quantized;    // P_p(Z F^H), B x N
  TimeGrid unquantized;  // Z F^H, B x N
  double beta = 1.0;     // beta^WF
};

/// Wiener-filter precoder. On k in the occupied set,
/// z_k = (1/beta) H_k^H (H_k H_k^H + U N0 I)^{-1} s_k, and z_k = 0 on guards.
/// beta is chosen analytically so that E_s ||Z F^H||_F^2 = S for unit-energy i.i.d. symbols:
/// beta^2 = (1/S) sum_k ||H_k^H (H_k H_k^H + U N0 I)^{-1}||_F^2.
/// Throws NumericalError if a regularized Gram matrix is not positive definite.
WfResult wf_precode(const FreqGrid& symbols, const ChannelRealization& ch, const OfdmGrid& grid,
                    const SystemConfig& cfg);

}  // namespace squidofdm
