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

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "squidofdm/types.hpp"

namespace squidofdm {

/// Number of phase bits of the DAC transcoder, or the infinite-resolution case.
class PhaseBits {
 public:
  constexpr PhaseBits() = default;
  static PhaseBits finite(int bits);
  static constexpr PhaseBits infinite() { return PhaseBits(kInfinite); }
  /// Accepts a positive integer or "inf".
  static PhaseBits parse(const std::string& text);

  constexpr bool is_infinite() const { return bits_ == kInfinite; }
  /// Only meaningful when !is_infinite().
  constexpr int bits() const { return bits_; }
  std::string to_string() const;

  friend constexpr bool operator==(PhaseBits, PhaseBits) = default;

 private:
  static constexpr int kInfinite = -1;
  constexpr explicit PhaseBits(int b) : bits_(b) {}
  int bits_ = 2;
};

struct SystemConfig {
  int B = 32;   // BS antennas
  int U = 4;    // single-antenna UEs
  int N = 512;  // DFT size
  int S = 300;  // occupied subcarriers
  int L = 4;    // channel taps
  PhaseBits p = PhaseBits::finite(2);
  double N0 = 0.1;
  int T = 20;  // SQUID iterations
  std::uint64_t seed = 1;

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;

  /// Per-antenna transmit power S/(BN).
  double p_ant() const { return static_cast<double>(S) / (static_cast<double>(B) * N); }
  /// Relaxation weight B*U*N*N0.
  double gamma() const { return static_cast<double>(B) * U * N * N0; }
  double snr() const { return 1.0 / N0; }

  static SystemConfig desk_profile();
  static SystemConfig paper_profile();
};

double snr_db_to_n0(double snr_db);

/// Occupied/guard partition of the N subcarriers.
class OfdmGrid {
 public:
  /// Builds a grid from an explicit occupied set; the guard set is the complement.
  OfdmGrid(int n, std::vector<int> occupied);

  int size() const { return n_; }
  int occupied_count() const { return static_cast<int>(occupied_.size()); }
  const std::vector<int>& occupied() const { return occupied_; }
  const std::vector<int>& guard() const { return guard_; }
  bool is_occupied(int k) const { return mask_[static_cast<std::size_t>(k)]; }

 private:
  int n_;
  std::vector<int> occupied_;
  std::vector<int> guard_;
  std::vector<bool> mask_;
};

/// LTE-style layout {1..S/2} and {N-S/2..N-1}; DC is always a guard.
OfdmGrid build_lte_grid(int n, int s);

/// Square Gray-labeled QAM with unit average energy.
/// Point index == bit label, in-phase bits first (MSB first).
class Constellation {
 public:
  static Constellation qam(int order);

  int order() const { return static_cast<int>(points_.size()); }
  int bits_per_symbol() const { return bits_per_symbol_; }
  const std::vector<Complex>& points() const { return points_; }
  Complex point(int index) const { return points_[static_cast<std::size_t>(index)]; }
  /// Bit b (0 = MSB) of the label of point `index`.
  int bit(int index, int b) const { return (index >> (bits_per_symbol_ - 1 - b)) & 1; }
  /// Nearest point by Euclidean distance; ties go to the lowest index.
  int nearest(Complex z) const;
  int index_from_bits(std::span<const std::uint8_t> bits) const;

 private:
  std::vector<Complex> points_;
  int bits_per_symbol_ = 0;
};

/// Symbol indices (U x S, column j is occupied subcarrier grid.occupied()[j]).
using SymbolIndices = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

SymbolIndices draw_symbol_indices(const OfdmGrid& grid, const Constellation& constellation, int num_ue,
                                  std::mt19937_64& rng);

/// U x N frequency grid with constellation points on occupied columns and exact zeros on guards.
FreqGrid symbols_to_grid(const SymbolIndices& indices, const OfdmGrid& grid,
                         const Constellation& constellation);

FreqGrid draw_symbols(const OfdmGrid& grid, const Constellation& constellation, int num_ue,
                      std::mt19937_64& rng);

}  // namespace squidofdm
