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
#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "oracles.hpp"
#include "squidofdm/channel.hpp"
#include "squidofdm/rng.hpp"
#include "squidofdm/transforms.hpp"

using namespace squidofdm;

namespace {

SystemConfig small_cfg(int b, int u, int n, int l) {
  SystemConfig c;
  c.B = b;
  c.U = u;
  c.N = n;
  c.S = n / 2;
  c.L = l;
  return c;
}

}  // namespace

TEST_CASE("single-tap channel is flat") {
  auto rng = make_stream(1, 0, Stream::channel);
  const ChannelRealization ch = draw_channel(small_cfg(4, 2, 16, 1), rng);
  for (const CMatrix& hk : ch.freq) CHECK((hk - ch.taps[0]).norm() < 1e-14);
}

TEST_CASE("two-tap scalar channel") {
  std::vector<CMatrix> taps(2, CMatrix::Ones(1, 1));
  const ChannelRealization ch = make_channel(taps, 4);
  CHECK(std::abs(ch.freq[1](0, 0) - Complex(1.0, -1.0)) < 1e-14);
  CHECK(std::abs(ch.freq[0](0, 0) - 2.0) < 1e-14);
  CHECK(std::abs(ch.freq[2](0, 0)) < 1e-14);
}

TEST_CASE("frequency response matches the defining sum") {
  auto rng = make_stream(2, 0, Stream::channel);
  const SystemConfig c = small_cfg(8, 3, 64, 5);
  const ChannelRealization ch = draw_channel(c, rng);
  for (int k = 0; k < c.N; ++k) {
    CMatrix hk = CMatrix::Zero(3, 8);
    for (int l = 0; l < c.L; ++l) hk += ch.taps[static_cast<std::size_t>(l)] * std::polar(1.0, -2.0 * M_PI * k * l / c.N);
    CHECK((hk - ch.freq[static_cast<std::size_t>(k)]).norm() < 1e-10);
  }
}

TEST_CASE("tap variance 1/L gives unit subcarrier gain") {
  const SystemConfig c = small_cfg(16, 8, 8, 4);
  double acc = 0.0;
  long count = 0;
  for (int t = 0; t < 400; ++t) {
    auto rng = make_stream(3, static_cast<std::uint64_t>(t), Stream::channel);
    const ChannelRealization ch = draw_channel(c, rng);
    for (const auto& hk : ch.freq) {
      acc += hk.squaredNorm();
      count += hk.size();
    }
    for (const auto& tap : ch.taps) CHECK(tap.rows() == 8);
  }
  CHECK(std::abs(acc / count - 1.0) < 0.02);
}

TEST_CASE("identity channel passes input through") {
  std::vector<CMatrix> taps{CMatrix::Identity(3, 3)};
  const ChannelRealization ch = make_channel(taps, 8);
  auto rng = make_stream(4, 0, Stream::validation);
  const FreqGrid x(draw_cn_matrix(rng, 3, 8, 1.0));
  const FreqGrid y = apply_downlink_freq(ch, x, 0.0, rng);
  CHECK((y.values - x.values).norm() < 1e-14);
  const TimeGrid xt(x.values);
  CHECK((apply_downlink_time(ch, xt, 0.0, rng).values - xt.values).norm() < 1e-14);
}

TEST_CASE("pure noise has variance N0") {
  auto rng = make_stream(5, 0, Stream::channel);
  const ChannelRealization ch = draw_channel(small_cfg(4, 4, 256, 2), rng);
  auto noise = make_stream(5, 0, Stream::noise);
  const FreqGrid y = apply_downlink_freq(ch, FreqGrid(4, 256), 1.0, noise);
  double acc = 0.0;
  long count = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const FreqGrid w = apply_downlink_freq(ch, FreqGrid(4, 256), 1.0, noise);
    acc += w.values.squaredNorm();
    count += w.values.size();
  }
  CHECK(y.rows() == 4);
  CHECK(std::abs(acc / count - 1.0) < 0.02);
}

TEST_CASE("zero input gives zero output in the time path") {
  auto rng = make_stream(6, 0, Stream::channel);
  const ChannelRealization ch = draw_channel(small_cfg(4, 2, 16, 3), rng);
  CHECK(apply_channel_time(ch, TimeGrid(4, 16)).values.isZero(0.0));
}

TEST_CASE("time path equals the circular convolution oracle and the frequency path") {
  for (int trial = 0; trial < 20; ++trial) {
    auto rng = make_stream(7, static_cast<std::uint64_t>(trial), Stream::channel);
    const SystemConfig c = small_cfg(6, 3, 32, 1 + trial % 6);
    const ChannelRealization ch = draw_channel(c, rng);
    const TimeGrid x(draw_cn_matrix(rng, c.B, c.N, 1.0));
    const TimeGrid y = apply_channel_time(ch, x);
    const CGrid oracle_y = oracle::circular_downlink(ch.taps, x.values);
    CHECK((y.values - oracle_y).norm() < 1e-9 * oracle_y.norm());
    const FreqGrid yf = apply_channel_freq(ch, to_freq(x));
    CHECK((to_freq(y).values - yf.values).norm() < 1e-9 * yf.values.norm());
  }
}

TEST_CASE("noisy paths share statistics with the same noise draw") {
  auto rng = make_stream(8, 0, Stream::channel);
  const SystemConfig c = small_cfg(4, 2, 16, 2);
  const ChannelRealization ch = draw_channel(c, rng);
  const TimeGrid x(draw_cn_matrix(rng, c.B, c.N, 1.0));
  auto n1 = make_stream(8, 0, Stream::noise);
  auto n2 = make_stream(8, 0, Stream::noise);
  const TimeGrid yt = apply_downlink_time(ch, x, 0.3, n1);
  const CGrid w = draw_cn_matrix(n2, c.U, c.N, 0.3);
  CHECK((yt.values - apply_channel_time(ch, x).values - w).norm() < 1e-12);
}

TEST_CASE("dimension mismatches are rejected") {
  auto rng = make_stream(9, 0, Stream::channel);
  const ChannelRealization ch = draw_channel(small_cfg(4, 2, 16, 2), rng);
  CHECK_THROWS_AS(apply_channel_freq(ch, FreqGrid(3, 16)), ConfigError);
  CHECK_THROWS_AS(apply_channel_freq(ch, FreqGrid(4, 8)), ConfigError);
  CHECK_THROWS_AS(apply_channel_time(ch, TimeGrid(5, 16)), ConfigError);
}

TEST_CASE("channel dump round trip") {
  auto rng = make_stream(10, 0, Stream::channel);
  const ChannelRealization ch = draw_channel(small_cfg(4, 2, 16, 3), rng);
  const auto path = std::filesystem::temp_directory_path() / "squidofdm_channel_test.bin";
  save_channel(ch, path);
  CHECK(std::filesystem::file_size(path) == 4 + 16 + 3 * 2 * 4 * 8);
  const ChannelRealization back = load_channel(path);
  CHECK(back.num_antennas() == 4);
  CHECK(back.num_ue() == 2);
  CHECK(back.dft_size() == 16);
  for (std::size_t l = 0; l < 3; ++l) {
    // complex64 storage
    CHECK((back.taps[l] - ch.taps[l]).cwiseAbs().maxCoeff() < 1e-6);
  }
  // the reload is bit-exact against itself
  save_channel(back, path);
  const ChannelRealization again = load_channel(path);
  for (std::size_t l = 0; l < 3; ++l) CHECK((again.taps[l] - back.taps[l]).norm() == 0.0);
  std::filesystem::remove(path);
  CHECK_THROWS(load_channel(path));
}
