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
#include "squidofdm/quantizer.hpp"

#include <cmath>
#include <numbers>

namespace squidofdm {
namespace {

// arg(z) / (2 pi) in [0, 1). Working in turns keeps the bin edges that are
// exactly representable (multiples of pi/2, pi/4, ...) exact after scaling by 2^p.
double turns(Complex z) {
  double a = std::atan2(z.imag(), z.real()) / (2.0 * std::numbers::pi);
  if (a < 0.0) a += 1.0;
  return a;
}

}  // namespace

PhaseQuantizer::PhaseQuantizer(PhaseBits p, double p_ant) : p_(p), p_ant_(p_ant), amplitude_(std::sqrt(p_ant)) {
  if (!(p_ant > 0.0) || !std::isfinite(p_ant)) throw ConfigError("quantizer needs a positive P_ant");
  if (p.is_infinite()) return;
  const int count = 1 << p.bits();
  alphabet_.resize(static_cast<std::size_t>(count));
  if (p.bits() == 1) {
    alphabet_[0] = Complex(0.0, amplitude_);
    alphabet_[1] = Complex(0.0, -amplitude_);
  } else if (p.bits() == 2) {
    const double s = std::sqrt(p_ant / 2.0);
    alphabet_[0] = Complex(s, s);
    alphabet_[1] = Complex(-s, s);
    alphabet_[2] = Complex(-s, -s);
    alphabet_[3] = Complex(s, -s);
  } else {
    for (int m = 0; m < count; ++m) {
      const double phase = (std::numbers::pi + 2.0 * std::numbers::pi * m) / count;
      alphabet_[static_cast<std::size_t>(m)] = std::polar(amplitude_, phase);
    }
  }
}

int PhaseQuantizer::bin(Complex z) const {
  if (p_.is_infinite()) throw ConfigError("bin() is undefined for infinite phase resolution");
  if (z == Complex(0.0, 0.0)) return 0;
  const int count = 1 << p_.bits();
  const int m = static_cast<int>(std::floor(turns(z) * count));
  return m >= count ? count - 1 : m;
}

Complex PhaseQuantizer::operator()(Complex z) const {
  if (p_.is_infinite()) {
    const double mag = std::abs(z);
    if (mag == 0.0) return Complex(amplitude_, 0.0);
    return z * (amplitude_ / mag);
  }
  return alphabet_[static_cast<std::size_t>(bin(z))];
}

TimeGrid PhaseQuantizer::operator()(const TimeGrid& x) const {
  TimeGrid out(x.rows(), x.cols());
  const Eigen::Index total = x.values.size();
  const Complex* in = x.values.data();
  Complex* dst = out.values.data();
#pragma omp parallel for schedule(static) if (total >= 65536)
  for (Eigen::Index i = 0; i < total; ++i) dst[i] = (*this)(in[i]);
  return out;
}

Complex quantize_two_bit_sign(Complex z, double p_ant) {
  const double s = std::sqrt(p_ant / 2.0);
  const double re = z.real();
  const double im = z.imag();
  double sr = re > 0.0 ? 1.0 : -1.0;
  double si = im > 0.0 ? 1.0 : -1.0;
  // Points on the axes: angle 0 -> (+,+), pi/2 -> (-,+), pi -> (-,-), 3pi/2 -> (+,-); origin -> (+,+).
  if (im == 0.0) {
    if (re >= 0.0) {
      sr = 1.0;
      si = 1.0;
    } else {
      sr = -1.0;
      si = -1.0;
    }
  } else if (re == 0.0) {
    sr = im > 0.0 ? -1.0 : 1.0;
  }
  return {s * sr, s * si};
}

}  // namespace squidofdm
