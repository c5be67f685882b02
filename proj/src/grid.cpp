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
#include "squidofdm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace squidofdm {

PhaseBits PhaseBits::finite(int bits) {
  if (bits < 1 || bits > 30) {
    throw ConfigError("phase bits must be in [1, 30] or infinite, got " + std::to_string(bits));
  }
  return PhaseBits(bits);
}

PhaseBits PhaseBits::parse(const std::string& text) {
  if (text == "inf" || text == "infinite" || text == "Inf") return infinite();
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse phase bits '" + text + "'");
  }
  if (pos != text.size()) throw ConfigError("cannot parse phase bits '" + text + "'");
  return finite(value);
}

std::string PhaseBits::to_string() const { return is_infinite() ? "inf" : std::to_string(bits_); }

void SystemConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid SystemConfig: " + what);
  };
  require(B >= 1, "B must be positive");
  require(U >= 1, "U must be positive");
  require(N >= 1, "N must be positive");
  require(S >= 1, "S must be positive");
  require(L >= 1, "L must be positive");
  require(T >= 1, "T must be positive");
  require(U <= B, "U must not exceed B");
  require(S <= N, "S must not exceed N");
  require(L <= N, "L must not exceed N");
  require(std::isfinite(N0) && N0 >= 0.0, "N0 must be a nonnegative finite number");
}

SystemConfig SystemConfig::desk_profile() { return SystemConfig{}; }

SystemConfig SystemConfig::paper_profile() {
  SystemConfig cfg;
  cfg.B = 128;
  cfg.U = 16;
  cfg.N = 4096;
  cfg.S = 1200;
  cfg.L = 4;
  return cfg;
}

double snr_db_to_n0(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

OfdmGrid::OfdmGrid(int n, std::vector<int> occupied) : n_(n), occupied_(std::move(occupied)) {
  if (n < 1) throw ConfigError("OFDM grid size must be positive");
  std::sort(occupied_.begin(), occupied_.end());
  if (std::adjacent_find(occupied_.begin(), occupied_.end()) != occupied_.end()) {
    throw ConfigError("occupied subcarrier set contains duplicates");
  }
  if (occupied_.empty()) throw ConfigError("occupied subcarrier set is empty");
  if (occupied_.front() < 0 || occupied_.back() >= n) {
    throw ConfigError("occupied subcarrier index outside [0, N)");
  }
  mask_.assign(static_cast<std::size_t>(n), false);
  for (int k : occupied_) mask_[static_cast<std::size_t>(k)] = true;
  guard_.reserve(static_cast<std::size_t>(n) - occupied_.size());
  for (int k = 0; k < n; ++k) {
    if (!mask_[static_cast<std::size_t>(k)]) guard_.push_back(k);
  }
}

OfdmGrid build_lte_grid(int n, int s) {
  if (s <= 0 || s % 2 != 0) throw ConfigError("LTE grid needs a positive even S");
  if (s >= n) throw ConfigError("LTE grid needs S < N");
  std::vector<int> occupied;
  occupied.reserve(static_cast<std::size_t>(s));
  for (int k = 1; k <= s / 2; ++k) occupied.push_back(k);
  for (int k = n - s / 2; k < n; ++k) occupied.push_back(k);
  return OfdmGrid(n, std::move(occupied));
}

Constellation Constellation::qam(int order) {
  int bits = 0;
  while ((1 << bits) < order) ++bits;
  if (order < 4 || (1 << bits) != order || bits % 2 != 0) {
    throw ConfigError("QAM order must be a power of 4 (4, 16, 64, ...), got " + std::to_string(order));
  }
  const int per_axis_bits = bits / 2;
  const int side = 1 << per_axis_bits;
  // Gray label -> PAM level index, per axis.
  std::vector<int> level_of_label(static_cast<std::size_t>(side));
  for (int level = 0; level < side; ++level) level_of_label[static_cast<std::size_t>(level ^ (level >> 1))] = level;

  const double scale = std::sqrt(2.0 * (order - 1) / 3.0);
  Constellation c;
  c.bits_per_symbol_ = bits;
  c.points_.resize(static_cast<std::size_t>(order));
  for (int label = 0; label < order; ++label) {
    const int i_label = label >> per_axis_bits;
    const int q_label = label & (side - 1);
    const double re = 2.0 * level_of_label[static_cast<std::size_t>(i_label)] - (side - 1);
    const double im = 2.0 * level_of_label[static_cast<std::size_t>(q_label)] - (side - 1);
    c.points_[static_cast<std::size_t>(label)] = Complex(re / scale, im / scale);
  }
  return c;
}

int Constellation::nearest(Complex z) const {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < order(); ++i) {
    const double d = std::norm(z - points_[static_cast<std::size_t>(i)]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

int Constellation::index_from_bits(std::span<const std::uint8_t> bits) const {
  if (static_cast<int>(bits.size()) != bits_per_symbol_) throw ConfigError("wrong number of bits for symbol");
  int index = 0;
  for (auto b : bits) index = (index << 1) | (b & 1);
  return index;
}

SymbolIndices draw_symbol_indices(const OfdmGrid& grid, const Constellation& constellation, int num_ue,
                                  std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, constellation.order() - 1);
  SymbolIndices idx(num_ue, grid.occupied_count());
  // Column-major fill: subcarrier outer, UE inner.
  for (Eigen::Index j = 0; j < idx.cols(); ++j) {
    for (Eigen::Index u = 0; u < idx.rows(); ++u) idx(u, j) = pick(rng);
  }
  return idx;
}

FreqGrid symbols_to_grid(const SymbolIndices& indices, const OfdmGrid& grid,
                         const Constellation& constellation) {
  if (indices.cols() != grid.occupied_count()) throw ConfigError("symbol index matrix does not match grid");
  FreqGrid s(indices.rows(), grid.size());
  const auto& occ = grid.occupied();
  for (Eigen::Index u = 0; u < indices.rows(); ++u) {
    for (std::size_t j = 0; j < occ.size(); ++j) {
      s(u, occ[j]) = constellation.point(indices(u, static_cast<Eigen::Index>(j)));
    }
  }
  return s;
}

FreqGrid draw_symbols(const OfdmGrid& grid, const Constellation& constellation, int num_ue,
                      std::mt19937_64& rng) {
  return symbols_to_grid(draw_symbol_indices(grid, constellation, num_ue, rng), grid, constellation);
}

}  // namespace squidofdm
