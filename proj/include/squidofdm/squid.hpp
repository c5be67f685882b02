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

#include <optional>
#include <vector>

#include "squidofdm/channel.hpp"
#include "squidofdm/grid.hpp"
#include "squidofdm/prox.hpp"
#include "squidofdm/types.hpp"

namespace squidofdm {

/// Per-occupied-subcarrier quantities for the prox_f step, indexed like grid.occupied().
///   Q_k = H_k^H (H_k H_k^H + I/2)^{-1}     (B x U)
///   d_k = 2 (H_k^H s_k - Q_k H_k H_k^H s_k) (B), which simplifies to Q_k s_k.
/// R_k = I_B - Q_k H_k is never stored; it is applied as v - Q_k (H_k v).
struct SquidPreproc {
  std::vector<CMatrix> q;
  std::vector<CVector> d;

  /// Materializes R_k for occupied column j (tests and diagnostics only).
  CMatrix r(std::size_t j, const ChannelRealization& ch, const OfdmGrid& grid) const;
};

/// Throws NumericalError if an H_k H_k^H + I/2 factorization fails.
SquidPreproc squid_preprocess(const FreqGrid& symbols, const ChannelRealization& ch, const OfdmGrid& grid);

/// Douglas-Rachford iterates, B x N frequency grids.
struct SquidState {
  FreqGrid a;
  FreqGrid b;
  FreqGrid c;
  TimeGrid b_time;  // prox_g output of the last iteration, equal to B F^H

  static SquidState zeros(int num_antennas, int n);
};

struct IterationInfo {
  double objective = 0.0;    // relaxation objective at the new B
  double max_modulus = 0.0;  // max |entry| of the new B in the time domain
  double clip_level = 0.0;
};

/// One DR iteration:
///   A = prox_f(2B - C)            (R_k (2b_k - c_k) + d_k on occupied, 2b_k - c_k on guards)
///   C = C + A - B                 (B of the previous iteration)
///   B = to_freq(prox_g(to_time(C)))
/// The objective and max modulus in the returned info are only filled when `with_objective`.
IterationInfo squid_iterate(SquidState& state, const SquidPreproc& pre, const FreqGrid& symbols,
                            const ChannelRealization& ch, const OfdmGrid& grid, double gamma,
                            SquidVariant variant, bool with_objective = false);

struct SquidOptions {
  int iterations = 20;
  bool trace = false;
  std::optional<SquidVariant> variant;  // default: select_variant(cfg.p)
};

struct SquidResult {
  TimeGrid quantized;    // P_p(B^(T) F^H)
  TimeGrid unquantized;  // B^(T) F^H
  FreqGrid b;            // B^(T)
  SquidVariant variant = SquidVariant::LInfSq;
  std::vector<IterationInfo> trace;  // one entry per iteration when options.trace
};

/// SQUID-OFDM: T Douglas-Rachford iterations from zero, then the phase quantizer.
/// Uses gamma = B U N N0 from cfg and the quantizer of cfg.p.
SquidResult squid_precode(const FreqGrid& symbols, const ChannelRealization& ch, const OfdmGrid& grid,
                          const SystemConfig& cfg, const SquidOptions& options);

/// sum_{k in I} ||s_k - H_k b_k||^2.
double data_fidelity(const FreqGrid& b, const FreqGrid& symbols, const ChannelRealization& ch, const OfdmGrid& grid);

/// Relaxation objective data_fidelity(b) + g(to_time(b)).
double relaxation_objective(const FreqGrid& b, const FreqGrid& symbols, const ChannelRealization& ch,
                            const OfdmGrid& grid, double gamma, SquidVariant variant);

}  // namespace squidofdm
