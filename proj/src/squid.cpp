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
#include "squidofdm/squid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "squidofdm/quantizer.hpp"
#include "squidofdm/transforms.hpp"

namespace squidofdm {

CMatrix SquidPreproc::r(std::size_t j, const ChannelRealization& ch, const OfdmGrid& grid) const {
  const CMatrix& h = ch.freq[static_cast<std::size_t>(grid.occupied()[j])];
  return CMatrix::Identity(h.cols(), h.cols()) - q[j] * h;
}

SquidPreproc squid_preprocess(const FreqGrid& symbols, const ChannelRealization& ch, const OfdmGrid& grid) {
  if (symbols.rows() != ch.num_ue() || symbols.cols() != ch.dft_size() || grid.size() != ch.dft_size()) {
    throw ConfigError("squid_preprocess: dimension mismatch");
  }
  const auto& occ = grid.occupied();
  SquidPreproc pre;
  pre.q.resize(occ.size());
  pre.d.resize(occ.size());
  std::atomic<bool> failed{false};
  const auto count = static_cast<std::ptrdiff_t>(occ.size());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    const CMatrix& h = ch.freq[static_cast<std::size_t>(occ[idx])];
    CMatrix gram = h * h.adjoint();
    gram.diagonal().array() += 0.5;
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success) {
      failed = true;
      continue;
    }
    pre.q[idx] = llt.solve(h).adjoint();
    pre.d[idx] = pre.q[idx] * symbols.values.col(occ[idx]);
  }
  if (failed) throw NumericalError("squid_preprocess: H H^H + I/2 factorization failed");
  return pre;
}

SquidState SquidState::zeros(int num_antennas, int n) {
  return SquidState{FreqGrid(num_antennas, n), FreqGrid(num_antennas, n), FreqGrid(num_antennas, n),
                    TimeGrid(num_antennas, n)};
}

double data_fidelity(const FreqGrid& b, const FreqGrid& symbols, const ChannelRealization& ch, const OfdmGrid& grid) {
  double total = 0.0;
  for (int k : grid.occupied()) {
    total += (symbols.values.col(k) - ch.freq[static_cast<std::size_t>(k)] * b.values.col(k)).squaredNorm();
  }
  return total;
}

double relaxation_objective(const FreqGrid& b, const FreqGrid& symbols, const ChannelRealization& ch,
                            const OfdmGrid& grid, double gamma, SquidVariant variant) {
  return data_fidelity(b, symbols, ch, grid) + penalty_g(to_time(b), gamma, variant);
}

IterationInfo squid_iterate(SquidState& state, const SquidPreproc& pre, const FreqGrid& symbols,
                            const ChannelRealization& ch, const OfdmGrid& grid, double gamma,
                            SquidVariant variant, bool with_objective) {
  // A = prox_f(2B - C); guards pass through, occupied columns use the Woodbury form.
  state.a.values = 2.0 * state.b.values - state.c.values;
  const auto& occ = grid.occupied();
  const auto count = static_cast<std::ptrdiff_t>(occ.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    const int k = occ[idx];
    const CVector v = state.a.values.col(k);
    const CVector hv = ch.freq[static_cast<std::size_t>(k)] * v;
    state.a.values.col(k) = v - pre.q[idx] * hv + pre.d[idx];
  }

  // C = C + A - B with the previous B, then B = prox_g(C) in the time domain.
  state.c.values += state.a.values - state.b.values;
  TimeGrid m = to_time(state.c);
  IterationInfo info;
  info.clip_level = prox_g_variant(m, gamma, variant);
  if (with_objective) {
    info.max_modulus = m.values.cwiseAbs().maxCoeff();
  }
  state.b = to_freq(m);

  if (with_objective) {
    info.objective = data_fidelity(state.b, symbols, ch, grid) + penalty_g(m, gamma, variant);
  }
  state.b_time = std::move(m);
  return info;
}

SquidResult squid_precode(const FreqGrid& symbols, const ChannelRealization& ch, const OfdmGrid& grid,
                          const SystemConfig& cfg, const SquidOptions& options) {
  cfg.validate();
  if (options.iterations < 1) throw ConfigError("squid_precode: at least one iteration is required");
  if (symbols.rows() != cfg.U || symbols.cols() != cfg.N) throw ConfigError("squid_precode: symbols must be U x N");
  if (ch.num_ue() != cfg.U || ch.num_antennas() != cfg.B || ch.dft_size() != cfg.N) {
    throw ConfigError("squid_precode: channel does not match the configuration");
  }

  const SquidVariant variant = options.variant.value_or(select_variant(cfg.p));
  const SquidPreproc pre = squid_preprocess(symbols, ch, grid);
  SquidState state = SquidState::zeros(cfg.B, cfg.N);
  const double gamma = cfg.gamma();

  SquidResult out;
  out.variant = variant;
  if (options.trace) out.trace.reserve(static_cast<std::size_t>(options.iterations));
  for (int t = 0; t < options.iterations; ++t) {
    IterationInfo info = squid_iterate(state, pre, symbols, ch, grid, gamma, variant, options.trace);
    if (options.trace) out.trace.push_back(info);
  }
  out.b = state.b;
  out.unquantized = state.b_time;
  out.quantized = PhaseQuantizer(cfg.p, cfg.p_ant())(out.unquantized);
  return out;
}

}  // namespace squidofdm
