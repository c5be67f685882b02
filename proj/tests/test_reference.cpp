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
#include "doctest.h"
#include "squidofdm/channel.hpp"
#include "squidofdm/reference.hpp"
#include "squidofdm/rng.hpp"
#include "squidofdm/squid.hpp"
#include "squidofdm/transforms.hpp"
#include "squidofdm/wf_precoder.hpp"

using namespace squidofdm;

namespace {

SystemConfig cfg_of(int b, int u, int n, int s, int l, double n0) {
  SystemConfig c;
  c.B = b;
  c.U = u;
  c.N = n;
  c.S = s;
  c.L = l;
  c.N0 = n0;
  return c;
}

}  // namespace

TEST_CASE("fast DFT equals the direct sum") {
  auto rng = make_stream(81, 0, Stream::validation);
  for (int n : {1, 7, 64, 100}) {
    const CGrid x = draw_cn_matrix(rng, 3, n, 1.0);
    const FreqGrid f = to_freq(TimeGrid(x));
    CHECK((f.values - reference::dft_rows(x, -1)).norm() < 1e-12 * (1.0 + x.norm()));
    const TimeGrid t = to_time(FreqGrid(x));
    CHECK((t.values - reference::dft_rows(x, +1)).norm() < 1e-12 * (1.0 + x.norm()));
  }
}

TEST_CASE("fast channel response equals the direct sum") {
  const SystemConfig c = cfg_of(5, 3, 48, 20, 4, 0.1);
  auto rng = make_stream(82, 0, Stream::channel);
  const ChannelRealization ch = draw_channel(c, rng);
  const auto ref = reference::channel_response(ch.taps, c.N);
  for (int k = 0; k < c.N; ++k) CHECK((ch.freq[static_cast<std::size_t>(k)] - ref[static_cast<std::size_t>(k)]).norm() < 1e-12);
}

TEST_CASE("WF fast path equals the reference") {
  const SystemConfig c = cfg_of(8, 3, 64, 40, 3, 0.2);
  const OfdmGrid g = build_lte_grid(c.N, c.S);
  auto rng = make_stream(83, 0, Stream::channel);
  const ChannelRealization ch = draw_channel(c, rng);
  const FreqGrid s = draw_symbols(g, Constellation::qam(16), c.U, rng);
  const TimeGrid ref = reference::wf_unquantized(s, ch, g, c);
  const WfResult fast = wf_precode(s, ch, g, c);
  CHECK((fast.unquantized.values - ref.values).norm() < 1e-10 * ref.values.norm());
}

TEST_CASE("SQUID fast path equals the reference") {
  const SystemConfig base = cfg_of(8, 3, 32, 20, 3, 0.1);
  const OfdmGrid g = build_lte_grid(base.N, base.S);
  auto rng = make_stream(84, 0, Stream::channel);
  const ChannelRealization ch = draw_channel(base, rng);
  const FreqGrid s = draw_symbols(g, Constellation::qam(4), base.U, rng);
  for (PhaseBits p : {PhaseBits::finite(1), PhaseBits::finite(2), PhaseBits::infinite()}) {
    SystemConfig c = base;
    c.p = p;
    SquidOptions opt;
    opt.iterations = 12;
    const SquidResult fast = squid_precode(s, ch, g, c, opt);
    const TimeGrid ref = reference::squid_unquantized(s, ch, g, c.gamma(), select_variant(p), 12);
    CHECK((fast.unquantized.values - ref.values).norm() < 1e-9 * (1.0 + ref.values.norm()));
  }
}
