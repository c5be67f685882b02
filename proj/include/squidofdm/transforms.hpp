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

#include "squidofdm/types.hpp"

namespace squidofdm {

/// Unitary DFT along each row: X_k = N^{-1/2} sum_n x_n e^{-j 2 pi k n / N}.
/// This is the transform under which circular convolution with the taps H_l
/// becomes multiplication by H_k = sum_l H_l e^{-j 2 pi k l / N}.
FreqGrid to_freq(const TimeGrid& x);

/// Inverse of to_freq (unitary IDFT along each row).
TimeGrid to_time(const FreqGrid& x);

/// In-place unitary transform of every row; sign -1 is the forward DFT, +1 the inverse.
/// Rows are processed in parallel.
void unitary_dft_rows(CGrid& rows, int sign);

}  // namespace squidofdm
