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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "squidofdm/grid.hpp"
#include "squidofdm/metrics.hpp"
#include "squidofdm/squid.hpp"

namespace squidofdm::harness {

enum class ExperimentKind { evm_ccdf, ber_uncoded, ber_coded, prox_validate, complexity, par };

ExperimentKind parse_kind(const std::string& name);
std::string to_string(ExperimentKind kind);

/// "wf" (phase-quantized WF), "wf-ideal" (unquantized WF, ignores p),
/// "squid" (T from the system config) or "squid@T".
struct PrecoderSpec {
  enum class Kind { wf, wf_ideal, squid };
  Kind kind = Kind::squid;
  int iterations = 0;  // squid only; 0 means SystemConfig::T

  static PrecoderSpec parse(const std::string& text);
  std::string name() const;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::ber_uncoded;
  std::string profile = "desk";
  SystemConfig system;
  std::vector<double> snr_db;
  std::vector<PrecoderSpec> precoders;
  std::vector<PhaseBits> phase_bits;
  int trials = 1;
  int qam_order = 4;

  /// Defaults of each experiment kind on the "desk" or "paper" profile.
  static ExperimentSpec defaults(ExperimentKind kind, const std::string& profile);
  /// Throws ConfigError before any computation starts.
  void validate() const;
};

/// Overrides spec fields from a JSON config file. Recognized keys: B, U, N, S, L, p,
/// N0, T, seed (SystemConfig), and snr_db, precoders, phase_bits, trials, qam.
void apply_config_file(ExperimentSpec& spec, const std::filesystem::path& path);

struct ComplexityRow {
  int b, u, s, n, t;
  std::int64_t wf_mults;
  std::int64_t squid_mults;
  double ratio;
};

struct ProxCheckRow {
  int instance;
  int length;
  double lambda;
  double clip_sorted;
  double clip_grid;
  double objective_sorted;
  double objective_grid;
};

struct ExperimentResult {
  ExperimentSpec spec;
  /// Ordered by (trial, snr, precoder, p); independent of execution order.
  std::vector<metrics::TrialRecord> records;
  int failed_records = 0;
  std::vector<ComplexityRow> complexity;
  std::vector<ProxCheckRow> prox_checks;
  std::vector<IterationInfo> trace;
};

/// Runs the whole experiment. Trials run in parallel; each trial draws only from
/// its own (seed, trial, stream) generators.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Simulates every (SNR, precoder, p) configuration of a single trial.
std::vector<metrics::TrialRecord> simulate_trial(const ExperimentSpec& spec, int trial);

struct BerRow {
  double snr_db;
  std::string precoder;
  std::string p;
  long long bits;
  long long bit_errors;
  double ber;
  int trials;
  int clamped_trials;
};

/// Errors summed over bits summed, per (snr, precoder, p), in first-seen order.
std::vector<BerRow> aggregate_ber(const std::vector<metrics::TrialRecord>& records, bool coded);

/// Writes the CSV files of the experiment kind and manifest.json into `dir`.
/// Returns the written file names.
std::vector<std::string> write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

void write_ber_csv(std::ostream& os, const std::vector<BerRow>& rows);
void write_evm_csv(std::ostream& os, const std::vector<metrics::TrialRecord>& records);
void write_ccdf_csv(std::ostream& os, const std::vector<metrics::TrialRecord>& records);
void write_par_csv(std::ostream& os, const std::vector<metrics::TrialRecord>& records);
void write_trace_csv(std::ostream& os, const std::vector<IterationInfo>& trace);

/// Human-readable summary for standard output.
std::string summary(const ExperimentResult& result);

}  // namespace squidofdm::harness
