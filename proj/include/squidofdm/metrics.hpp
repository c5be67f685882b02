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
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "squidofdm/grid.hpp"
#include "squidofdm/types.hpp"

namespace squidofdm::metrics {

/// Per-UE error vector magnitude over the occupied subcarriers:
/// EVM_u = sqrt(sum_k |s_{u,k} - beta_u (H_k x_k)_u|^2 / sum_k |s_{u,k}|^2),
/// where `noiseless_rx` holds H_k x_k (distortion only, no noise).
std::vector<double> evm(const FreqGrid& symbols, const FreqGrid& noiseless_rx, std::span<const double> beta,
                        const OfdmGrid& grid);

struct CcdfPoint {
  double value;
  double probability;  // P[X > value]
};

/// Empirical CCDF at every distinct sample value, ascending.
std::vector<CcdfPoint> ccdf(std::span<const double> samples);

/// Empirical P[X > x].
double ccdf_at(std::span<const double> samples, double x);

double median(std::vector<double> samples);

/// Peak-to-average power ratio of one row, 10 log10(max |x|^2 / mean |x|^2).
double par_db(std::span<const Complex> row);

/// par_db of every row (antenna) of a time grid.
std::vector<double> par_db_rows(const TimeGrid& x);

/// Real-valued multiplication counts of WF precoding and of T SQUID-OFDM iterations
/// with split-radix (I)DFTs. N must be a power of two. Pure integer arithmetic.
std::int64_t mult_count_wf(std::int64_t b, std::int64_t u, std::int64_t s, std::int64_t n);
std::int64_t mult_count_squid(std::int64_t b, std::int64_t u, std::int64_t s, std::int64_t n, std::int64_t t);

/// Raw DAC input rate p * B * fs in bit/s.
double dac_rate_bits_per_s(double bits_per_sample, int antennas, double sample_rate);

/// Bit-error tally; merging adds counts (errors summed over bits summed).
struct BitErrorCounter {
  long long bits = 0;
  long long errors = 0;

  void add(long long errs, long long total) {
    errors += errs;
    bits += total;
  }
  void merge(const BitErrorCounter& other) { add(other.errors, other.bits); }
  double ber() const { return bits > 0 ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0; }
};

/// Outcome of one (trial, SNR, precoder, p) simulation.
struct TrialRecord {
  double snr_db = 0.0;
  std::string precoder;
  std::string p;
  int trial = 0;
  std::vector<double> evm;  // per UE
  BitErrorCounter uncoded;
  BitErrorCounter coded;
  std::vector<double> par_db;  // per antenna
  bool clamped = false;        // some beta_u hit the radicand floor
  bool failed = false;         // numerical failure; the record carries no metrics
};

}  // namespace squidofdm::metrics
