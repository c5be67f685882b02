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

// Straightforward serial implementations of the hot kernels. They share no code
// with the FFT/Woodbury/sort-based fast paths and exist to cross-check them in
// tests and to give the benchmark a baseline.

#include <span>
#include <vector>

#include "squidofdm/channel.hpp"
#include "squidofdm/grid.hpp"
#include "squidofdm/prox.hpp"
#include "squidofdm/types.hpp"

namespace squidofdm::reference {

/// O(N^2) unitary DFT of every row; sign -1 forward, +1 inverse.
CGrid dft_rows(const CGrid& x, int sign);

/// Direct sum H_k = sum_l H_l e^{-j 2 pi k l / N}.
std::vector<CMatrix> channel_response(const std::vector<CMatrix>& taps, int n);

/// Clip level by bisection on the stationarity condition 2 lambda t = sum_i (m_i - t)_+.
double clip_level_bisection(std::span<const double> magnitudes, double lambda);

/// Unquantized WF output Z F^H using explicit U x U inverses and the O(N^2) DFT.
TimeGrid wf_unquantized(const FreqGrid& symbols, const ChannelRealization& ch, const OfdmGrid& grid,
                        const SystemConfig& cfg);

/// T Douglas-Rachford iterations in the un-reduced form
/// a_k = (H_k^H H_k + I/2)^{-1} (H_k^H s_k + b_k - c_k / 2) with a B x B solve per
/// subcarrier, the O(N^2) DFT, and the bisection prox. Returns B^(T) F^H.
TimeGrid squid_unquantized(const FreqGrid& symbols, const ChannelRealization& ch, const OfdmGrid& grid,
                           double gamma, SquidVariant variant, int iterations);

}  // namespace squidofdm::reference
