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
#include "squidofdm/prox.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace squidofdm {

SquidVariant select_variant(PhaseBits p) {
  if (p.is_infinite()) return SquidVariant::LInfSq;
  if (p.bits() == 1) return SquidVariant::ImagOnly;
  if (p.bits() == 2) return SquidVariant::LInfTildeSq;
  return SquidVariant::LInfSq;
}

const char* to_string(SquidVariant v) {
  switch (v) {
    case SquidVariant::LInfSq:
      return "linf-sq";
    case SquidVariant::LInfTildeSq:
      return "linf-tilde-sq";
    case SquidVariant::ImagOnly:
      return "imag-only";
  }
  return "unknown";
}

double max_norm_clip_level(std::span<const double> magnitudes, double lambda) {
  if (lambda < 0.0) throw ConfigError("prox weight must be nonnegative");
  if (magnitudes.empty()) return 0.0;
  std::vector<double> m(magnitudes.begin(), magnitudes.end());
  std::sort(m.begin(), m.end(), std::greater<>());
  if (lambda == 0.0) return m.front();

  double partial = 0.0;
  const std::size_t count = m.size();
  for (std::size_t k = 1; k <= count; ++k) {
    partial += m[k - 1];
    const double t = partial / (2.0 * lambda + static_cast<double>(k));
    const double next = k < count ? m[k] : 0.0;
    if (next <= t) return t;
  }
  return partial / (2.0 * lambda + static_cast<double>(count));  // unreachable: k = count always stops
}

double prox_sq_maxnorm(std::span<Complex> v, double lambda) {
  const auto count = static_cast<std::ptrdiff_t>(v.size());
  std::vector<double> mag(v.size());
#pragma omp parallel for schedule(static) if (count >= 65536)
  for (std::ptrdiff_t i = 0; i < count; ++i) mag[static_cast<std::size_t>(i)] = std::abs(v[static_cast<std::size_t>(i)]);
  const double t = max_norm_clip_level(mag, lambda);
#pragma omp parallel for schedule(static) if (count >= 65536)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (mag[idx] > t) v[idx] *= t / mag[idx];
  }
  return t;
}

double prox_sq_maxnorm(std::span<double> v, double lambda) {
  const auto count = static_cast<std::ptrdiff_t>(v.size());
  std::vector<double> mag(v.size());
#pragma omp parallel for schedule(static) if (count >= 65536)
  for (std::ptrdiff_t i = 0; i < count; ++i) mag[static_cast<std::size_t>(i)] = std::abs(v[static_cast<std::size_t>(i)]);
  const double t = max_norm_clip_level(mag, lambda);
#pragma omp parallel for schedule(static) if (count >= 65536)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto& x = v[static_cast<std::size_t>(i)];
    if (std::abs(x) > t) x = std::copysign(t, x);
  }
  return t;
}

double prox_g_variant(TimeGrid& v, double gamma, SquidVariant variant) {
  if (gamma < 0.0) throw ConfigError("prox_g_variant: gamma must be nonnegative");
  const auto total = static_cast<std::size_t>(v.values.size());
  Complex* data = v.values.data();
  switch (variant) {
    case SquidVariant::LInfSq:
      return prox_sq_maxnorm(std::span<Complex>(data, total), gamma);
    case SquidVariant::LInfTildeSq: {
      // std::complex<double> is layout-compatible with double[2].
      return prox_sq_maxnorm(std::span<double>(reinterpret_cast<double*>(data), 2 * total), 2.0 * gamma);
    }
    case SquidVariant::ImagOnly: {
      std::vector<double> im(total);
      for (std::size_t i = 0; i < total; ++i) im[i] = data[i].imag();
      const double t = prox_sq_maxnorm(std::span<double>(im), gamma);
      for (std::size_t i = 0; i < total; ++i) data[i] = Complex(0.0, im[i]);
      return t;
    }
  }
  return 0.0;
}

double penalty_g(const TimeGrid& x, double gamma, SquidVariant variant) {
  double peak = 0.0;
  const Eigen::Index total = x.values.size();
  const Complex* data = x.values.data();
  for (Eigen::Index i = 0; i < total; ++i) {
    const Complex z = data[i];
    switch (variant) {
      case SquidVariant::LInfSq:
      case SquidVariant::ImagOnly:
        peak = std::max(peak, std::norm(z));
        break;
      case SquidVariant::LInfTildeSq: {
        const double a = std::max(std::abs(z.real()), std::abs(z.imag()));
        peak = std::max(peak, a * a);
        break;
      }
    }
  }
  return (variant == SquidVariant::LInfTildeSq ? 2.0 * gamma : gamma) * peak;
}

}  // namespace squidofdm
