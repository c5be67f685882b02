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

/// Entry-wise constant-envelope phase quantizer onto the alphabet
/// sqrt(P_ant) e^{j (pi + 2 pi m) / 2^p}, m = 0..2^p-1, or onto the full circle for p = inf.
///
/// Conventions for the measure-zero cases:
///  - arg(z) is taken in [0, 2 pi); an angle exactly on a bin edge 2 pi m / 2^p
///    belongs to bin m (the floor of the bin formula, half-open bins [lo, hi)).
///  - z = 0 maps to m = 0 (finite p) or to sqrt(P_ant) (p = inf).
class PhaseQuantizer {
 public:
  PhaseQuantizer(PhaseBits p, double p_ant);

  PhaseBits phase_bits() const { return p_; }
  double p_ant() const { return p_ant_; }
  /// Alphabet points indexed by m; empty for p = inf.
  const std::vector<Complex>& alphabet() const { return alphabet_; }

  /// Bin index m of z (finite p only).
  int bin(Complex z) const;
  Complex operator()(Complex z) const;
  TimeGrid operator()(const TimeGrid& x) const;

 private:
  PhaseBits p_;
  double p_ant_;
  double amplitude_;
  std::vector<Complex> alphabet_;
};

/// The 2-phase-bit quantizer written as a pair of 1-bit DACs:
/// sqrt(P_ant/2) (sign(Re z) + j sign(Im z)). Zero components are resolved with
/// the same edge convention as PhaseQuantizer, so both agree bit-exactly everywhere.
Complex quantize_two_bit_sign(Complex z, double p_ant);

}  // namespace squidofdm
