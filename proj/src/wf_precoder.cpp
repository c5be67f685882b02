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
#include "squidofdm/wf_precoder.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "squidofdm/transforms.hpp"

namespace squidofdm {

WfResult wf_precode(const FreqGrid& symbols, const ChannelRealization& ch, const OfdmGrid& grid,
                    const SystemConfig& cfg) {
  if (symbols.rows() != cfg.U || symbols.cols() != cfg.N) throw ConfigError("wf_precode: symbols must be U x N");
  if (ch.num_ue() != cfg.U || ch.num_antennas() != cfg.B || ch.dft_size() != cfg.N) {
    throw ConfigError("wf_precode: channel does not match the configuration");
  }
  if (grid.size() != cfg.N || grid.occupied_count() != cfg.S) throw ConfigError("wf_precode: grid mismatch");

  const auto& occ = grid.occupied();
  const auto count = static_cast<Eigen::Index>(occ.size());
  const double reg = cfg.U * cfg.N0;

  FreqGrid z(cfg.B, cfg.N);
  std::vector<double> fro(occ.size(), 0.0);
  std::atomic<bool> failed{false};

#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < count; ++j) {
    const int k = occ[static_cast<std::size_t>(j)];
    const CMatrix& h = ch.freq[static_cast<std::size_t>(k)];
    CMatrix gram = h * h.adjoint();
    gram.diagonal().array() += reg;
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success) {
      failed = true;
      continue;
    }
    // P_k = H^H G^{-1} = (G^{-1} H)^H since G is Hermitian.
    const CMatrix pk = llt.solve(h).adjoint();
    fro[static_cast<std::size_t>(j)] = pk.squaredNorm();
    z.values.col(k) = pk * symbols.values.col(k);
  }
  if (failed) throw NumericalError("wf_precode: regularized Gram matrix is not positive definite");

  double total = 0.0;
  for (double f : fro) total += f;  // fixed order for reproducibility
  const double beta = std::sqrt(total / cfg.S);
  if (!(beta > 0.0) || !std::isfinite(beta)) throw NumericalError("wf_precode: degenerate normalization");
  z.values /= beta;

  WfResult out;
  out.beta = beta;
  out.unquantized = to_time(z);
  out.quantized = PhaseQuantizer(cfg.p, cfg.p_ant())(out.unquantized);
  return out;
}

}  // namespace squidofdm
