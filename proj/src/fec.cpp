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
#include "squidofdm/fec.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

namespace squidofdm::fec {
namespace {

struct Branch {
  int next = 0;
  std::uint8_t c0 = 0;
  std::uint8_t c1 = 0;
};

// State holds the previous m inputs, most recent in the top bit. The register seen by
// the generators is (u << m) | state, so the generator MSB taps the current input.
Branch branch(const CodeConfig& code, int state, int input) {
  const int m = code.memory();
  const unsigned reg = (static_cast<unsigned>(input) << m) | static_cast<unsigned>(state);
  Branch b;
  b.next = static_cast<int>(reg >> 1);
  b.c0 = static_cast<std::uint8_t>(std::popcount(reg & code.generators[0]) & 1);
  b.c1 = static_cast<std::uint8_t>(std::popcount(reg & code.generators[1]) & 1);
  return b;
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

int CodeConfig::kept_per_period() const {
  int kept = 0;
  for (const auto& p : puncture) kept += static_cast<int>(p[0]) + static_cast<int>(p[1]);
  return kept;
}

int CodeConfig::info_length(int coded_length) const {
  const int kept = kept_per_period();
  if (coded_length <= 0 || kept == 0 || coded_length % kept != 0) {
    throw ConfigError("coded frame of " + std::to_string(coded_length) + " bits is not a whole number of " +
                      std::to_string(kept) + "-bit puncture periods");
  }
  const int info = coded_length / kept * period() - memory();
  if (info <= 0) throw ConfigError("coded frame too short for the zero tail");
  return info;
}

Bits encode_mother(std::span<const std::uint8_t> info, const CodeConfig& code) {
  const int m = code.memory();
  Bits out;
  out.reserve(2 * (info.size() + static_cast<std::size_t>(m)));
  int state = 0;
  auto step = [&](int u) {
    const Branch b = branch(code, state, u);
    out.push_back(b.c0);
    out.push_back(b.c1);
    state = b.next;
  };
  for (auto bit : info) step(bit & 1);
  for (int i = 0; i < m; ++i) step(0);
  return out;
}

Bits puncture(std::span<const std::uint8_t> mother, const CodeConfig& code) {
  if (mother.size() % 2 != 0) throw ConfigError("mother codeword must have an even length");
  Bits out;
  const std::size_t steps = mother.size() / 2;
  for (std::size_t t = 0; t < steps; ++t) {
    const auto& keep = code.puncture[t % code.puncture.size()];
    if (keep[0]) out.push_back(mother[2 * t]);
    if (keep[1]) out.push_back(mother[2 * t + 1]);
  }
  return out;
}

std::vector<double> depuncture(std::span<const double> llrs, int mother_length, const CodeConfig& code) {
  if (mother_length % 2 != 0) throw ConfigError("mother codeword must have an even length");
  std::vector<double> out(static_cast<std::size_t>(mother_length), 0.0);
  std::size_t pos = 0;
  const auto steps = static_cast<std::size_t>(mother_length / 2);
  for (std::size_t t = 0; t < steps; ++t) {
    const auto& keep = code.puncture[t % code.puncture.size()];
    for (std::size_t j = 0; j < 2; ++j) {
      if (!keep[j]) continue;
      if (pos >= llrs.size()) throw ConfigError("depuncture: too few LLRs for the mother length");
      out[2 * t + j] = llrs[pos++];
    }
  }
  if (pos != llrs.size()) throw ConfigError("depuncture: too many LLRs for the mother length");
  return out;
}

Bits conv_encode(std::span<const std::uint8_t> info, const CodeConfig& code) {
  const Bits mother = encode_mother(info, code);
  return puncture(mother, code);
}

Interleaver::Interleaver(std::vector<int> permutation) : perm_(std::move(permutation)) {
  std::vector<bool> seen(perm_.size(), false);
  for (int p : perm_) {
    if (p < 0 || static_cast<std::size_t>(p) >= perm_.size() || seen[static_cast<std::size_t>(p)]) {
      throw ConfigError("interleaver permutation is not a bijection");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
}

Interleaver Interleaver::random(int length, std::mt19937_64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(length));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return Interleaver(std::move(perm));
}

void Interleaver::check(std::size_t n) const {
  if (n != perm_.size()) throw ConfigError("interleaver length mismatch");
}

std::vector<double> llr_maxlog(std::span<const Complex> estimates, double n0_eff, const Constellation& constellation) {
  if (!(n0_eff > 0.0)) throw ConfigError("llr_maxlog needs a positive noise variance");
  const int q = constellation.bits_per_symbol();
  const int order = constellation.order();
  std::vector<double> out(estimates.size() * static_cast<std::size_t>(q));
  std::vector<double> dist(static_cast<std::size_t>(order));
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    for (int s = 0; s < order; ++s) dist[static_cast<std::size_t>(s)] = std::norm(estimates[i] - constellation.point(s));
    for (int b = 0; b < q; ++b) {
      double d0 = std::numeric_limits<double>::infinity();
      double d1 = d0;
      for (int s = 0; s < order; ++s) {
        if (constellation.bit(s, b) == 0) {
          d0 = std::min(d0, dist[static_cast<std::size_t>(s)]);
        } else {
          d1 = std::min(d1, dist[static_cast<std::size_t>(s)]);
        }
      }
      out[i * static_cast<std::size_t>(q) + static_cast<std::size_t>(b)] = (d1 - d0) / n0_eff;
    }
  }
  return out;
}

Bits bcjr_maxlog(std::span<const double> mother_llrs, const CodeConfig& code, int info_length) {
  const int m = code.memory();
  const int steps = info_length + m;
  if (static_cast<int>(mother_llrs.size()) != 2 * steps) throw ConfigError("bcjr_maxlog: LLR count mismatch");
  const int num_states = code.num_states();

  std::vector<std::array<Branch, 2>> trellis(static_cast<std::size_t>(num_states));
  for (int s = 0; s < num_states; ++s) {
    trellis[static_cast<std::size_t>(s)] = {branch(code, s, 0), branch(code, s, 1)};
  }
  auto metric = [&](int t, const Branch& b) {
    const double l0 = mother_llrs[2 * static_cast<std::size_t>(t)];
    const double l1 = mother_llrs[2 * static_cast<std::size_t>(t) + 1];
    return 0.5 * ((b.c0 ? -l0 : l0) + (b.c1 ? -l1 : l1));
  };
  const auto ns = static_cast<std::size_t>(num_states);
  auto inputs_at = [&](int t) { return t < info_length ? 2 : 1; };  // tail steps carry u = 0

  std::vector<double> alpha((static_cast<std::size_t>(steps) + 1) * ns, kNegInf);
  alpha[0] = 0.0;
  for (int t = 0; t < steps; ++t) {
    const double* a = &alpha[static_cast<std::size_t>(t) * ns];
    double* a_next = &alpha[(static_cast<std::size_t>(t) + 1) * ns];
    for (int s = 0; s < num_states; ++s) {
      if (a[s] == kNegInf) continue;
      for (int u = 0; u < inputs_at(t); ++u) {
        const Branch& b = trellis[static_cast<std::size_t>(s)][static_cast<std::size_t>(u)];
        a_next[b.next] = std::max(a_next[b.next], a[s] + metric(t, b));
      }
    }
  }

  std::vector<double> beta(ns, kNegInf);
  std::vector<double> beta_prev(ns);
  beta[0] = 0.0;
  Bits decoded(static_cast<std::size_t>(info_length), 0);
  for (int t = steps - 1; t >= 0; --t) {
    const double* a = &alpha[static_cast<std::size_t>(t) * ns];
    double best0 = kNegInf;
    double best1 = kNegInf;
    std::fill(beta_prev.begin(), beta_prev.end(), kNegInf);
    for (int s = 0; s < num_states; ++s) {
      for (int u = 0; u < inputs_at(t); ++u) {
        const Branch& b = trellis[static_cast<std::size_t>(s)][static_cast<std::size_t>(u)];
        if (beta[static_cast<std::size_t>(b.next)] == kNegInf) continue;
        const double g = metric(t, b) + beta[static_cast<std::size_t>(b.next)];
        beta_prev[static_cast<std::size_t>(s)] = std::max(beta_prev[static_cast<std::size_t>(s)], g);
        if (a[s] == kNegInf) continue;
        double& best = u == 0 ? best0 : best1;
        best = std::max(best, a[s] + g);
      }
    }
    if (t < info_length) decoded[static_cast<std::size_t>(t)] = best1 > best0 ? 1 : 0;
    beta.swap(beta_prev);
  }
  return decoded;
}

Bits decode_frame(std::span<const double> channel_llrs, const CodeConfig& code, const Interleaver& interleaver) {
  const int coded_length = static_cast<int>(channel_llrs.size());
  const int info = code.info_length(coded_length);
  const std::vector<double> punctured = interleaver.deinterleave(channel_llrs);
  const std::vector<double> mother = depuncture(punctured, 2 * (info + code.memory()), code);
  return bcjr_maxlog(mother, code, info);
}

}  // namespace squidofdm::fec
