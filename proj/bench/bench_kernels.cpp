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
// Fast kernels (FFTW, Woodbury, sort-based prox, OpenMP) against the serial references.

#include <benchmark/benchmark.h>

#include <vector>

#include "squidofdm/channel.hpp"
#include "squidofdm/prox.hpp"
#include "squidofdm/reference.hpp"
#include "squidofdm/rng.hpp"
#include "squidofdm/squid.hpp"
#include "squidofdm/transforms.hpp"
#include "squidofdm/wf_precoder.hpp"

using namespace squidofdm;

namespace {

struct Setup {
  SystemConfig cfg;
  OfdmGrid grid;
  ChannelRealization ch;
  FreqGrid s;
};

Setup make_setup(int n) {
  SystemConfig cfg;
  cfg.B = 16;
  cfg.U = 4;
  cfg.N = n;
  cfg.S = n * 300 / 512;
  cfg.S -= cfg.S % 2;
  OfdmGrid grid = build_lte_grid(cfg.N, cfg.S);
  auto rng = make_stream(1, 0, Stream::channel);
  ChannelRealization ch = draw_channel(cfg, rng);
  FreqGrid s = draw_symbols(grid, Constellation::qam(16), cfg.U, rng);
  return {cfg, std::move(grid), std::move(ch), std::move(s)};
}

void BM_dft_fast(benchmark::State& st) {
  auto rng = make_stream(2, 0, Stream::validation);
  const TimeGrid x(draw_cn_matrix(rng, 16, st.range(0), 1.0));
  for (auto _ : st) benchmark::DoNotOptimize(to_freq(x));
}

void BM_dft_reference(benchmark::State& st) {
  auto rng = make_stream(2, 0, Stream::validation);
  const CGrid x = draw_cn_matrix(rng, 16, st.range(0), 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(reference::dft_rows(x, -1));
}

void BM_channel_fast(benchmark::State& st) {
  const Setup su = make_setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(channel_response(su.ch.taps, su.cfg.N));
}

void BM_channel_reference(benchmark::State& st) {
  const Setup su = make_setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::channel_response(su.ch.taps, su.cfg.N));
}

void BM_wf_fast(benchmark::State& st) {
  const Setup su = make_setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(wf_precode(su.s, su.ch, su.grid, su.cfg));
}

void BM_wf_reference(benchmark::State& st) {
  const Setup su = make_setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::wf_unquantized(su.s, su.ch, su.grid, su.cfg));
}

void BM_squid_fast(benchmark::State& st) {
  const Setup su = make_setup(static_cast<int>(st.range(0)));
  SquidOptions opt;
  opt.iterations = 10;
  for (auto _ : st) benchmark::DoNotOptimize(squid_precode(su.s, su.ch, su.grid, su.cfg, opt));
}

void BM_squid_reference(benchmark::State& st) {
  const Setup su = make_setup(static_cast<int>(st.range(0)));
  const SquidVariant v = select_variant(su.cfg.p);
  for (auto _ : st) {
    benchmark::DoNotOptimize(reference::squid_unquantized(su.s, su.ch, su.grid, su.cfg.gamma(), v, 10));
  }
}

std::vector<double> magnitudes(std::int64_t n) {
  auto rng = make_stream(3, 0, Stream::validation);
  std::vector<double> m(static_cast<std::size_t>(n));
  for (auto& v : m) v = std::abs(draw_cn(rng, 1.0));
  return m;
}

void BM_clip_sorted(benchmark::State& st) {
  const auto m = magnitudes(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(max_norm_clip_level(m, 0.5));
}

void BM_clip_bisection(benchmark::State& st) {
  const auto m = magnitudes(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(reference::clip_level_bisection(m, 0.5));
}

}  // namespace

BENCHMARK(BM_dft_fast)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_dft_reference)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_channel_fast)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_channel_reference)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_wf_fast)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_wf_reference)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_squid_fast)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_squid_reference)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_clip_sorted)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_clip_bisection)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
