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
#include "squidofdm/channel.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "squidofdm/rng.hpp"
#include "squidofdm/transforms.hpp"

namespace squidofdm {

std::vector<CMatrix> channel_response(const std::vector<CMatrix>& taps, int n) {
  if (taps.empty()) throw ConfigError("channel needs at least one tap");
  const auto num_taps = static_cast<int>(taps.size());
  if (num_taps > n) throw ConfigError("more channel taps than DFT points");
  const Eigen::Index u_count = taps.front().rows();
  const Eigen::Index b_count = taps.front().cols();

  // One row per (u, b) entry, zero-padded taps along the row.
  CGrid padded = CGrid::Zero(u_count * b_count, n);
  for (int l = 0; l < num_taps; ++l) {
    if (taps[static_cast<std::size_t>(l)].rows() != u_count || taps[static_cast<std::size_t>(l)].cols() != b_count) {
      throw ConfigError("channel taps have inconsistent shapes");
    }
    for (Eigen::Index u = 0; u < u_count; ++u) {
      for (Eigen::Index b = 0; b < b_count; ++b) padded(u * b_count + b, l) = taps[static_cast<std::size_t>(l)](u, b);
    }
  }
  unitary_dft_rows(padded, -1);
  padded *= std::sqrt(static_cast<double>(n));  // undo the unitary scaling

  std::vector<CMatrix> freq(static_cast<std::size_t>(n), CMatrix(u_count, b_count));
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    auto& hk = freq[static_cast<std::size_t>(k)];
    for (Eigen::Index u = 0; u < u_count; ++u) {
      for (Eigen::Index b = 0; b < b_count; ++b) hk(u, b) = padded(u * b_count + b, k);
    }
  }
  return freq;
}

ChannelRealization make_channel(std::vector<CMatrix> taps, int n) {
  ChannelRealization ch;
  ch.freq = channel_response(taps, n);
  ch.taps = std::move(taps);
  return ch;
}

ChannelRealization draw_channel(const SystemConfig& cfg, std::mt19937_64& rng) {
  cfg.validate();
  std::vector<CMatrix> taps;
  taps.reserve(static_cast<std::size_t>(cfg.L));
  for (int l = 0; l < cfg.L; ++l) taps.emplace_back(draw_cn_matrix(rng, cfg.U, cfg.B, 1.0 / cfg.L));
  return make_channel(std::move(taps), cfg.N);
}

FreqGrid apply_channel_freq(const ChannelRealization& ch, const FreqGrid& x) {
  if (x.rows() != ch.num_antennas() || x.cols() != ch.dft_size()) {
    throw ConfigError("apply_channel_freq: transmit grid must be B x N");
  }
  const int n = ch.dft_size();
  FreqGrid y(ch.num_ue(), n);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    y.values.col(k) = ch.freq[static_cast<std::size_t>(k)] * x.values.col(k);
  }
  return y;
}

FreqGrid apply_downlink_freq(const ChannelRealization& ch, const FreqGrid& x, double n0, std::mt19937_64& rng) {
  FreqGrid y = apply_channel_freq(ch, x);
  if (n0 > 0.0) y.values += draw_cn_matrix(rng, y.rows(), y.cols(), n0);
  return y;
}

TimeGrid apply_channel_time(const ChannelRealization& ch, const TimeGrid& x) {
  const int n = ch.dft_size();
  const int num_taps = ch.num_taps();
  if (x.rows() != ch.num_antennas() || x.cols() != n) {
    throw ConfigError("apply_channel_time: transmit grid must be B x N");
  }
  const int cp = num_taps - 1;
  // Transmitted block with the prefix: samples N-cp..N-1, then 0..N-1.
  CGrid tx(x.rows(), n + cp);
  tx.rightCols(n) = x.values;
  if (cp > 0) tx.leftCols(cp) = x.values.rightCols(cp);

  TimeGrid y(ch.num_ue(), n);
  for (int m = cp; m < n + cp; ++m) {
    CVector acc = CVector::Zero(ch.num_ue());
    for (int l = 0; l < num_taps; ++l) {
      acc += ch.taps[static_cast<std::size_t>(l)] * tx.col(m - l);
    }
    y.values.col(m - cp) = acc;
  }
  return y;
}

TimeGrid apply_downlink_time(const ChannelRealization& ch, const TimeGrid& x, double n0, std::mt19937_64& rng) {
  TimeGrid y = apply_channel_time(ch, x);
  if (n0 > 0.0) y.values += draw_cn_matrix(rng, y.rows(), y.cols(), n0);
  return y;
}

namespace {

constexpr std::array<char, 4> kMagic{'S', 'Q', 'C', 'H'};

template <typename T>
void write_le(std::ostream& os, T value) {
  static_assert(std::endian::native == std::endian::little, "big-endian hosts are not supported");
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) throw ConfigError("truncated channel file");
  return value;
}

}  // namespace

void save_channel(const ChannelRealization& ch, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
  os.write(kMagic.data(), kMagic.size());
  write_le<std::uint32_t>(os, static_cast<std::uint32_t>(ch.num_antennas()));
  write_le<std::uint32_t>(os, static_cast<std::uint32_t>(ch.num_ue()));
  write_le<std::uint32_t>(os, static_cast<std::uint32_t>(ch.dft_size()));
  write_le<std::uint32_t>(os, static_cast<std::uint32_t>(ch.num_taps()));
  for (const auto& tap : ch.taps) {
    for (Eigen::Index u = 0; u < tap.rows(); ++u) {
      for (Eigen::Index b = 0; b < tap.cols(); ++b) {
        write_le<float>(os, static_cast<float>(tap(u, b).real()));
        write_le<float>(os, static_cast<float>(tap(u, b).imag()));
      }
    }
  }
}

ChannelRealization load_channel(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open " + path.string());
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw ConfigError(path.string() + " is not a channel dump");
  const auto b_count = read_le<std::uint32_t>(is);
  const auto u_count = read_le<std::uint32_t>(is);
  const auto n = read_le<std::uint32_t>(is);
  const auto num_taps = read_le<std::uint32_t>(is);
  if (b_count == 0 || u_count == 0 || n == 0 || num_taps == 0 || num_taps > n) {
    throw ConfigError("channel dump header is inconsistent");
  }
  std::vector<CMatrix> taps(num_taps, CMatrix(u_count, b_count));
  for (auto& tap : taps) {
    for (Eigen::Index u = 0; u < tap.rows(); ++u) {
      for (Eigen::Index b = 0; b < tap.cols(); ++b) {
        const float re = read_le<float>(is);
        const float im = read_le<float>(is);
        tap(u, b) = Complex(re, im);
      }
    }
  }
  return make_channel(std::move(taps), static_cast<int>(n));
}

}  // namespace squidofdm
