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
#include "squidofdm/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace squidofdm::metrics {

std::vector<double> evm(const FreqGrid& symbols, const FreqGrid& noiseless_rx, std::span<const double> beta,
                        const OfdmGrid& grid) {
  if (symbols.rows() != noiseless_rx.rows() || symbols.cols() != noiseless_rx.cols() ||
      static_cast<Eigen::Index>(beta.size()) != symbols.rows() || symbols.cols() != grid.size()) {
    throw ConfigError("evm: dimension mismatch");
  }
  std::vector<double> out(beta.size());
  for (Eigen::Index u = 0; u < symbols.rows(); ++u) {
    double err = 0.0;
    double energy = 0.0;
    const double bu = beta[static_cast<std::size_t>(u)];
    for (int k : grid.occupied()) {
      err += std::norm(symbols(u, k) - bu * noiseless_rx(u, k));
      energy += std::norm(symbols(u, k));
    }
    if (!(energy > 0.0)) throw ConfigError("evm: zero symbol energy");
    out[static_cast<std::size_t>(u)] = std::sqrt(err / energy);
  }
  return out;
}

std::vector<CcdfPoint> ccdf(std::span<const double> samples) {
  if (samples.empty()) throw ConfigError("ccdf of an empty sample set");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<CcdfPoint> out;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    out.push_back({sorted[i], static_cast<double>(sorted.size() - j) / n});
    i = j;
  }
  return out;
}

double ccdf_at(std::span<const double> samples, double x) {
  if (samples.empty()) throw ConfigError("ccdf of an empty sample set");
  const auto above = std::count_if(samples.begin(), samples.end(), [x](double v) { return v > x; });
  return static_cast<double>(above) / static_cast<double>(samples.size());
}

double median(std::vector<double> samples) {
  if (samples.empty()) throw ConfigError("median of an empty sample set");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  return n % 2 == 1 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

double par_db(std::span<const Complex> row) {
  if (row.empty()) throw ConfigError("par_db of an empty signal");
  double peak = 0.0;
  double sum = 0.0;
  for (const Complex& z : row) {
    const double p = std::norm(z);
    peak = std::max(peak, p);
    sum += p;
  }
  if (!(sum > 0.0)) throw ConfigError("par_db of an all-zero signal");
  const double mean = sum / static_cast<double>(row.size());
  // A constant-envelope row gives peak/mean == 1 up to rounding; report exactly 0 dB then.
  const double ratio = peak / mean;
  if (std::abs(ratio - 1.0) <= 1e-12) return 0.0;
  return 10.0 * std::log10(ratio);
}

std::vector<double> par_db_rows(const TimeGrid& x) {
  std::vector<double> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    out[static_cast<std::size_t>(r)] =
        par_db(std::span<const Complex>(x.values.row(r).data(), static_cast<std::size_t>(x.cols())));
  }
  return out;
}

namespace {

std::int64_t exact_log2(std::int64_t n) {
  if (n < 1 || (n & (n - 1)) != 0) throw ConfigError("multiplication counts need a power-of-two N");
  std::int64_t l = 0;
  while ((std::int64_t{1} << l) < n) ++l;
  return l;
}

}  // namespace

std::int64_t mult_count_wf(std::int64_t b, std::int64_t u, std::int64_t s, std::int64_t n) {
  const std::int64_t log_n = exact_log2(n);
  // 2S (U^3/3 + B U^2 + 2 U^2 - U/3); U^3 - U = (U-1) U (U+1) is divisible by 3.
  const std::int64_t per_subcarrier = (u * u * u - u) / 3 + b * u * u + 2 * u * u;
  const std::int64_t fft = 4 * b * (n * log_n - 3 * n + 4);
  return 2 * s * per_subcarrier + fft;
}

std::int64_t mult_count_squid(std::int64_t b, std::int64_t u, std::int64_t s, std::int64_t n, std::int64_t t) {
  const std::int64_t log_n = exact_log2(n);
  // 2S (5/3 U^3 + 3 B U^2 + (6B - 2/3) U); 5U^3 - 2U is divisible by 3 for every integer U.
  const std::int64_t preprocessing = 2 * s * ((5 * u * u * u - 2 * u) / 3 + 3 * b * u * u + 6 * b * u);
  const std::int64_t per_iteration = 4 * b * (2 * s * u + 2 * n * log_n - 5 * n + 8);
  return preprocessing + t * per_iteration;
}

double dac_rate_bits_per_s(double bits_per_sample, int antennas, double sample_rate) {
  return bits_per_sample * antennas * sample_rate;
}

}  // namespace squidofdm::metrics
