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

#include <span>

#include "squidofdm/grid.hpp"
#include "squidofdm/types.hpp"

namespace squidofdm {

/// Which relaxation SQUID-OFDM solves, chosen from the number of phase bits.
enum class SquidVariant {
  LInfSq,       // squared max-modulus penalty (p >= 3 and p = inf)
  LInfTildeSq,  // squared max over real and imaginary parts (p = 2)
  ImagOnly,     // max-modulus penalty with the real part forced to zero (p = 1)
};

SquidVariant select_variant(PhaseBits p);
const char* to_string(SquidVariant v);

/// Clip level t of the prox of lambda * max_i(m_i)^2 over magnitudes m_i >= 0:
/// t minimizes lambda t^2 + 1/2 sum_i (m_i - t)_+^2. With the magnitudes sorted
/// descending, t = (m_1 + ... + m_k) / (2 lambda + k) for the first k with m_{k+1} <= t.
double max_norm_clip_level(std::span<const double> magnitudes, double lambda);

/// Exact prox of x -> lambda ||x||_inf^2 (max modulus) at v, in place. Entries with
/// |v_i| > t are shrunk radially to modulus t; phases are never altered. Returns t.
double prox_sq_maxnorm(std::span<Complex> v, double lambda);

/// Real-valued analogue (clips absolute values). Returns t.
double prox_sq_maxnorm(std::span<double> v, double lambda);

/// prox of the time-domain penalty g, in place on a B x N time grid. Returns the clip level.
///  - LInfSq: prox_sq_maxnorm over all B*N entries, lambda = gamma.
///  - LInfTildeSq: the 2BN real and imaginary parts pooled, lambda = 2 gamma.
///  - ImagOnly: real parts zeroed, then the real prox on the imaginary parts, lambda = gamma.
double prox_g_variant(TimeGrid& v, double gamma, SquidVariant variant);

/// The penalty g itself evaluated at a time grid.
double penalty_g(const TimeGrid& x, double gamma, SquidVariant variant);

}  // namespace squidofdm
