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

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "squidofdm/grid.hpp"
#include "squidofdm/types.hpp"

namespace squidofdm::fec {

using Bits = std::vector<std::uint8_t>;

/// Feed-forward rate-1/2 convolutional mother code with periodic puncturing and
/// zero-tail termination. The default is the K=7 (133, 171) octal code punctured
/// to rate 5/6 with the keep pattern [11; 10; 01; 10; 01].
struct CodeConfig {
  int constraint_length = 7;
  std::array<unsigned, 2> generators{0133, 0171};
  /// keep[t % period][output]
  std::vector<std::array<bool, 2>> puncture{{true, true}, {true, false}, {false, true}, {true, false}, {false, true}};

  int memory() const { return constraint_length - 1; }
  int num_states() const { return 1 << memory(); }
  int period() const { return static_cast<int>(puncture.size()); }
  int kept_per_period() const;

  /// Information bits carried by a frame of `coded_length` punctured bits. The
  /// zero tail (memory() bits) is encoded and punctured like the payload, so
  ///   info = coded_length / kept_per_period() * period() - memory().
  /// Throws ConfigError when coded_length is not a whole number of puncture periods.
  int info_length(int coded_length) const;
};

/// Mother codeword with the zero tail: 2 (K + m) bits laid out as [c0_0, c1_0, c0_1, c1_1, ...].
Bits encode_mother(std::span<const std::uint8_t> info, const CodeConfig& code);

Bits puncture(std::span<const std::uint8_t> mother, const CodeConfig& code);

/// Re-inserts punctured positions with LLR 0.
std::vector<double> depuncture(std::span<const double> llrs, int mother_length, const CodeConfig& code);

/// encode_mother followed by puncture.
Bits conv_encode(std::span<const std::uint8_t> info, const CodeConfig& code);

/// Bijective permutation; interleave(x)[i] = x[perm[i]].
class Interleaver {
 public:
  explicit Interleaver(std::vector<int> permutation);
  static Interleaver random(int length, std::mt19937_64& rng);

  int size() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& permutation() const { return perm_; }

  template <typename T>
  std::vector<T> interleave(std::span<const T> in) const {
    check(in.size());
    std::vector<T> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[static_cast<std::size_t>(perm_[i])];
    return out;
  }

  template <typename T>
  std::vector<T> interleave(const std::vector<T>& in) const {
    return interleave(std::span<const T>(in));
  }

  template <typename T>
  std::vector<T> deinterleave(std::span<const T> in) const {
    check(in.size());
    std::vector<T> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[static_cast<std::size_t>(perm_[i])] = in[i];
    return out;
  }

  template <typename T>
  std::vector<T> deinterleave(const std::vector<T>& in) const {
    return deinterleave(std::span<const T>(in));
  }

 private:
  void check(std::size_t n) const;
  std::vector<int> perm_;
};

/// Max-log bit LLRs, positive favours bit 0:
/// LLR_b = (min_{s: b=1} |s~ - s|^2 - min_{s: b=0} |s~ - s|^2) / N0_eff.
/// Output has bits_per_symbol() entries per input symbol, MSB first.
std::vector<double> llr_maxlog(std::span<const Complex> estimates, double n0_eff, const Constellation& constellation);

/// Max-log BCJR over the mother-code trellis (2 (K + m) LLRs, erased positions 0)
/// with zero-tail boundary conditions. Returns K hard information bits; exact ties
/// resolve to 0.
Bits bcjr_maxlog(std::span<const double> mother_llrs, const CodeConfig& code, int info_length);

/// Deinterleave, depuncture and decode one frame of channel-order LLRs.
Bits decode_frame(std::span<const double> channel_llrs, const CodeConfig& code, const Interleaver& interleaver);

}  // namespace squidofdm::fec
