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

#include <filesystem>
#include <random>
#include <vector>

#include "squidofdm/grid.hpp"
#include "squidofdm/types.hpp"

namespace squidofdm {

/// Frequency-selective channel of one OFDM symbol.
struct ChannelRealization {
  std::vector<CMatrix> taps;  // L matrices, U x B
  std::vector<CMatrix> freq;  // N matrices, U x B

  int num_ue() const { return taps.empty() ? 0 : static_cast<int>(taps.front().rows()); }
  int num_antennas() const { return taps.empty() ? 0 : static_cast<int>(taps.front().cols()); }
  int num_taps() const { return static_cast<int>(taps.size()); }
  int dft_size() const { return static_cast<int>(freq.size()); }
};

/// H_k = sum_l H_l e^{-j 2 pi k l / N} for all k, via per-entry FFTs of the zero-padded taps.
std::vector<CMatrix> channel_response(const std::vector<CMatrix>& taps, int n);

ChannelRealization make_channel(std::vector<CMatrix> taps, int n);

/// Taps i.i.d. CN(0, 1/L) (uniform power-delay profile).
ChannelRealization draw_channel(const SystemConfig& cfg, std::mt19937_64& rng);

/// Column k of the result is H_k x_k (no noise), for all N subcarriers.
FreqGrid apply_channel_freq(const ChannelRealization& ch, const FreqGrid& x);

/// H_k x_k + w_k with w_k ~ CN(0, N0 I).
FreqGrid apply_downlink_freq(const ChannelRealization& ch, const FreqGrid& x, double n0, std::mt19937_64& rng);

/// Time-domain path: prepend a cyclic prefix of length L-1, run the tap-delay line
/// y_n = sum_l H_l x_{n-l}, and strip the prefix. Noiseless.
TimeGrid apply_channel_time(const ChannelRealization& ch, const TimeGrid& x);

/// apply_channel_time plus w_n ~ CN(0, N0 I) in the time domain.
TimeGrid apply_downlink_time(const ChannelRealization& ch, const TimeGrid& x, double n0, std::mt19937_64& rng);

/// Binary dump: magic "SQCH", then uint32 B, U, N, L, then the taps as
/// little-endian complex64 (float re, float im) in (l, u, b) order.
void save_channel(const ChannelRealization& ch, const std::filesystem::path& path);
ChannelRealization load_channel(const std::filesystem::path& path);

}  // namespace squidofdm
