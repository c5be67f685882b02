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
#include "squidofdm/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace squidofdm::reference {

CGrid dft_rows(const CGrid& x, int sign) {
  const Eigen::Index n = x.cols();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CGrid out(x.rows(), n);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index k = 0; k < n; ++k) {
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < n; ++t) {
        // Reduce k*t mod N first so the twiddle argument stays small.
        const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>((k * t) % n) / static_cast<double>(n);
        acc += x(r, t) * std::polar(1.0, angle);
      }
      out(r, k) = acc * scale;
    }
  }
  return out;
}

std::vector<CMatrix> channel_response(const std::vector<CMatrix>& taps, int n) {
  std::vector<CMatrix> freq;
  freq.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    CMatrix hk = CMatrix::Zero(taps.front().rows(), taps.front().cols());
    for (std::size_t l = 0; l < taps.size(); ++l) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * static_cast<long long>(l)) % n) / n;
      hk += taps[l] * std::polar(1.0, angle);
    }
    freq.push_back(std::move(hk));
  }
  return freq;
}

double clip_level_bisection(std::span<const double> magnitudes, double lambda) {
  if (magnitudes.empty()) return 0.0;
  const double top = *std::max_element(magnitudes.begin(), magnitudes.end());
  if (lambda == 0.0 || top == 0.0) return top;
  // excess(t) = sum (m_i - t)_+ - 2 lambda t is strictly decreasing on [0, top].
  auto excess = [&](double t) {
    double s = 0.0;
    for (double m : magnitudes) s += std::max(m - t, 0.0);
    return s - 2.0 * lambda * t;
  };
  double lo = 0.0;
  double hi = top;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

void clip_complex(CGrid& v, double t) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v.data()[i]);
    if (a > t) v.data()[i] *= t / a;
  }
}

void prox_time(CGrid& v, double gamma, SquidVariant variant) {
  std::vector<double> mags;
  switch (variant) {
    case SquidVariant::LInfSq: {
      for (Eigen::Index i = 0; i < v.size(); ++i) mags.push_back(std::abs(v.data()[i]));
      clip_complex(v, clip_level_bisection(mags, gamma));
      break;
    }
    case SquidVariant::LInfTildeSq: {
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        mags.push_back(std::abs(v.data()[i].real()));
        mags.push_back(std::abs(v.data()[i].imag()));
      }
      const double t = clip_level_bisection(mags, 2.0 * gamma);
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        const Complex z = v.data()[i];
        v.data()[i] = Complex(std::clamp(z.real(), -t, t), std::clamp(z.imag(), -t, t));
      }
      break;
    }
    case SquidVariant::ImagOnly: {
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        v.data()[i] = Complex(0.0, v.data()[i].imag());
        mags.push_back(std::abs(v.data()[i].imag()));
      }
      const double t = clip_level_bisection(mags, gamma);
      for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = Complex(0.0, std::clamp(v.data()[i].imag(), -t, t));
      break;
    }
  }
}

}  // namespace

TimeGrid wf_unquantized(const FreqGrid& symbols, const ChannelRealization& ch, const OfdmGrid& grid,
                        const SystemConfig& cfg) {
  CGrid z = CGrid::Zero(cfg.B, cfg.N);
  double total = 0.0;
  for (int k : grid.occupied()) {
    const CMatrix& h = ch.freq[static_cast<std::size_t>(k)];
    const CMatrix inv = (h * h.adjoint() + cfg.U * cfg.N0 * CMatrix::Identity(cfg.U, cfg.U)).inverse();
    const CMatrix pk = h.adjoint() * inv;
    total += pk.squaredNorm();
    z.col(k) = pk * symbols.values.col(k);
  }
  z /= std::sqrt(total / cfg.S);
  return TimeGrid(dft_rows(z, +1));
}

TimeGrid squid_unquantized(const FreqGrid& symbols, const ChannelRealization& ch, const OfdmGrid& grid,
                           double gamma, SquidVariant variant, int iterations) {
  const Eigen::Index b_count = ch.num_antennas();
  const Eigen::Index n = ch.dft_size();
  std::vector<Eigen::PartialPivLU<CMatrix>> solvers(static_cast<std::size_t>(n));
  for (int k : grid.occupied()) {
    const CMatrix& h = ch.freq[static_cast<std::size_t>(k)];
    solvers[static_cast<std::size_t>(k)].compute(h.adjoint() * h + 0.5 * CMatrix::Identity(b_count, b_count));
  }
  CGrid b = CGrid::Zero(b_count, n);
  CGrid c = CGrid::Zero(b_count, n);
  CGrid a(b_count, n);
  CGrid b_time = CGrid::Zero(b_count, n);
  for (int t = 0; t < iterations; ++t) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (grid.is_occupied(static_cast<int>(k))) {
        const CMatrix& h = ch.freq[static_cast<std::size_t>(k)];
        const CVector rhs = h.adjoint() * symbols.values.col(k) + b.col(k) - 0.5 * c.col(k);
        a.col(k) = solvers[static_cast<std::size_t>(k)].solve(rhs);
      } else {
        a.col(k) = 2.0 * b.col(k) - c.col(k);
      }
    }
    c += a - b;
    b_time = dft_rows(c, +1);
    prox_time(b_time, gamma, variant);
    b = dft_rows(b_time, -1);
  }
  return TimeGrid(b_time);
}

}  // namespace squidofdm::reference
