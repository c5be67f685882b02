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
#include "squidofdm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <tuple>
#include <sstream>

#include <omp.h>

#include "json.hpp"
#include "squidofdm/channel.hpp"
#include "squidofdm/fec.hpp"
#include "squidofdm/quantizer.hpp"
#include "squidofdm/receiver.hpp"
#include "squidofdm/rng.hpp"
#include "squidofdm/transforms.hpp"
#include "squidofdm/wf_precoder.hpp"

namespace squidofdm::harness {

using nlohmann::json;

ExperimentKind parse_kind(const std::string& name) {
  if (name == "evm-ccdf") return ExperimentKind::evm_ccdf;
  if (name == "ber-uncoded") return ExperimentKind::ber_uncoded;
  if (name == "ber-coded") return ExperimentKind::ber_coded;
  if (name == "prox-validate") return ExperimentKind::prox_validate;
  if (name == "complexity") return ExperimentKind::complexity;
  if (name == "par") return ExperimentKind::par;
  throw ConfigError("unknown experiment kind '" + name + "'");
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::evm_ccdf: return "evm-ccdf";
    case ExperimentKind::ber_uncoded: return "ber-uncoded";
    case ExperimentKind::ber_coded: return "ber-coded";
    case ExperimentKind::prox_validate: return "prox-validate";
    case ExperimentKind::complexity: return "complexity";
    case ExperimentKind::par: return "par";
  }
  return "?";
}

PrecoderSpec PrecoderSpec::parse(const std::string& text) {
  PrecoderSpec spec;
  if (text == "wf") {
    spec.kind = Kind::wf;
  } else if (text == "wf-ideal") {
    spec.kind = Kind::wf_ideal;
  } else if (text == "squid") {
    spec.kind = Kind::squid;
  } else if (text.rfind("squid@", 0) == 0) {
    spec.kind = Kind::squid;
    const std::string digits = text.substr(6);
    std::size_t used = 0;
    int t = 0;
    try {
      t = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (digits.empty() || used != digits.size() || t < 1) {
      throw ConfigError("bad iteration count in precoder '" + text + "'");
    }
    spec.iterations = t;
  } else {
    throw ConfigError("unknown precoder '" + text + "' (wf, wf-ideal, squid, squid@T)");
  }
  return spec;
}

std::string PrecoderSpec::name() const {
  switch (kind) {
    case Kind::wf: return "wf";
    case Kind::wf_ideal: return "wf-ideal";
    case Kind::squid: return iterations > 0 ? "squid@" + std::to_string(iterations) : "squid";
  }
  return "?";
}

ExperimentSpec ExperimentSpec::defaults(ExperimentKind kind, const std::string& profile) {
  ExperimentSpec spec;
  spec.kind = kind;
  spec.profile = profile;
  if (profile == "desk") {
    spec.system = SystemConfig::desk_profile();
  } else if (profile == "paper") {
    spec.system = SystemConfig::paper_profile();
  } else {
    throw ConfigError("unknown profile '" + profile + "' (desk, paper)");
  }
  const auto p = [](int b) { return PhaseBits::finite(b); };
  switch (kind) {
    case ExperimentKind::ber_uncoded:
      spec.snr_db = {-10, -5, 0, 5, 10, 15};
      spec.precoders = {PrecoderSpec::parse("wf"), PrecoderSpec::parse("squid")};
      spec.phase_bits = {p(1), p(2), p(3), PhaseBits::infinite()};
      spec.trials = 200;
      spec.qam_order = 4;
      break;
    case ExperimentKind::ber_coded:
      spec.snr_db = {-5, 0, 5, 10, 15};
      spec.precoders = {PrecoderSpec::parse("wf"), PrecoderSpec::parse("squid")};
      spec.phase_bits = {p(1), p(2), p(3), PhaseBits::infinite()};
      spec.trials = 100;
      spec.qam_order = 16;
      break;
    case ExperimentKind::evm_ccdf:
      spec.snr_db = {10};
      spec.precoders = {PrecoderSpec::parse("wf"), PrecoderSpec::parse("squid@1"), PrecoderSpec::parse("squid@20"),
                        PrecoderSpec::parse("squid@100")};
      spec.phase_bits = {p(2)};
      spec.trials = 200;
      spec.qam_order = 16;
      break;
    case ExperimentKind::par:
      spec.snr_db = {10};
      spec.precoders = {PrecoderSpec::parse("wf-ideal"), PrecoderSpec::parse("wf"), PrecoderSpec::parse("squid")};
      spec.phase_bits = {p(2), PhaseBits::infinite()};
      spec.trials = 100;
      spec.qam_order = 16;
      break;
    case ExperimentKind::prox_validate:
      spec.snr_db = {10};
      spec.precoders = {PrecoderSpec::parse("squid")};
      spec.phase_bits = {p(2)};
      spec.trials = 1000;
      spec.qam_order = 16;
      break;
    case ExperimentKind::complexity:
      spec.precoders = {PrecoderSpec::parse("squid@1"), PrecoderSpec::parse("squid@20")};
      spec.phase_bits = {p(2)};
      spec.trials = 1;
      break;
  }
  return spec;
}

void ExperimentSpec::validate() const {
  system.validate();
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const bool needs_snr = kind != ExperimentKind::complexity;
  if (needs_snr && snr_db.empty()) throw ConfigError("SNR list must not be empty");
  for (double s : snr_db) {
    if (!std::isfinite(s)) throw ConfigError("SNR values must be finite");
  }
  if (precoders.empty()) throw ConfigError("precoder list must not be empty");
  if (phase_bits.empty()) throw ConfigError("phase-bit list must not be empty");
  if (qam_order != 4 && qam_order != 16 && qam_order != 64 && qam_order != 256) {
    throw ConfigError("QAM order must be 4, 16, 64 or 256");
  }
  if (kind == ExperimentKind::ber_coded) {
    const int coded = system.S * Constellation::qam(qam_order).bits_per_symbol();
    (void)fec::CodeConfig{}.info_length(coded);
  }
  if (kind == ExperimentKind::complexity) {
    for (const auto& pc : precoders) {
      if (pc.kind != PrecoderSpec::Kind::squid) throw ConfigError("complexity runs take squid@T precoders only");
    }
  }
}

namespace {

PhaseBits phase_bits_from_json(const json& v) {
  if (v.is_number_integer()) return PhaseBits::finite(v.get<int>());
  if (v.is_string()) return PhaseBits::parse(v.get<std::string>());
  throw ConfigError("phase bits must be an integer or \"inf\"");
}

}  // namespace

void apply_config_file(ExperimentSpec& spec, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  static const std::vector<std::string> known = {"B",      "U",        "N",          "S",      "L",   "p",
                                                 "N0",     "T",        "seed",       "snr_db", "precoders",
                                                 "phase_bits", "trials", "qam"};
  try {
    for (const auto& [key, value] : j.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
    SystemConfig& c = spec.system;
    if (j.contains("B")) c.B = j["B"].get<int>();
    if (j.contains("U")) c.U = j["U"].get<int>();
    if (j.contains("N")) c.N = j["N"].get<int>();
    if (j.contains("S")) c.S = j["S"].get<int>();
    if (j.contains("L")) c.L = j["L"].get<int>();
    if (j.contains("p")) c.p = phase_bits_from_json(j["p"]);
    if (j.contains("N0")) c.N0 = j["N0"].get<double>();
    if (j.contains("T")) c.T = j["T"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("snr_db")) spec.snr_db = j["snr_db"].get<std::vector<double>>();
    if (j.contains("precoders")) {
      spec.precoders.clear();
      for (const auto& name : j["precoders"]) spec.precoders.push_back(PrecoderSpec::parse(name.get<std::string>()));
    }
    if (j.contains("phase_bits")) {
      spec.phase_bits.clear();
      for (const auto& v : j["phase_bits"]) spec.phase_bits.push_back(phase_bits_from_json(v));
    }
    if (j.contains("trials")) spec.trials = j["trials"].get<int>();
    if (j.contains("qam")) spec.qam_order = j["qam"].get<int>();
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
}

namespace {

struct TrialInputs {
  ChannelRealization channel;
  SymbolIndices sent;
  FreqGrid symbols;
  CGrid unit_noise;                  // U x N, CN(0,1)
  std::vector<fec::Bits> info_bits;  // per UE, coded runs only
};

struct Shared {
  OfdmGrid grid;
  Constellation constellation;
  fec::CodeConfig code;
  std::optional<fec::Interleaver> interleaver;
};

Shared make_shared(const ExperimentSpec& spec) {
  Shared sh{build_lte_grid(spec.system.N, spec.system.S), Constellation::qam(spec.qam_order), {}, std::nullopt};
  if (spec.kind == ExperimentKind::ber_coded) {
    auto rng = make_stream(spec.system.seed, 0, Stream::interleaver);
    sh.interleaver = fec::Interleaver::random(spec.system.S * sh.constellation.bits_per_symbol(), rng);
  }
  return sh;
}

TrialInputs draw_inputs(const ExperimentSpec& spec, const Shared& sh, int trial) {
  const SystemConfig& cfg = spec.system;
  TrialInputs in;
  auto ch_rng = make_stream(cfg.seed, static_cast<std::uint64_t>(trial), Stream::channel);
  in.channel = draw_channel(cfg, ch_rng);
  if (spec.kind == ExperimentKind::ber_coded) {
    const int q = sh.constellation.bits_per_symbol();
    const int info_len = sh.code.info_length(cfg.S * q);
    auto bit_rng = make_stream(cfg.seed, static_cast<std::uint64_t>(trial), Stream::info_bits);
    std::bernoulli_distribution coin(0.5);
    in.sent.resize(cfg.U, cfg.S);
    for (int u = 0; u < cfg.U; ++u) {
      fec::Bits info(static_cast<std::size_t>(info_len));
      for (auto& b : info) b = coin(bit_rng) ? 1 : 0;
      const fec::Bits coded = sh.interleaver->interleave(fec::conv_encode(info, sh.code));
      for (int j = 0; j < cfg.S; ++j) {
        in.sent(u, j) = sh.constellation.index_from_bits(
            std::span<const std::uint8_t>(coded.data() + static_cast<std::size_t>(j) * q, static_cast<std::size_t>(q)));
      }
      in.info_bits.push_back(std::move(info));
    }
  } else {
    auto sym_rng = make_stream(cfg.seed, static_cast<std::uint64_t>(trial), Stream::symbols);
    in.sent = draw_symbol_indices(sh.grid, sh.constellation, cfg.U, sym_rng);
  }
  in.symbols = symbols_to_grid(in.sent, sh.grid, sh.constellation);
  auto noise_rng = make_stream(cfg.seed, static_cast<std::uint64_t>(trial), Stream::noise);
  in.unit_noise = draw_cn_matrix(noise_rng, cfg.U, cfg.N, 1.0);
  return in;
}

void evaluate(metrics::TrialRecord& rec, const TimeGrid& x, const TrialInputs& in, const Shared& sh,
              const ExperimentSpec& spec, double n0) {
  const FreqGrid x_freq = to_freq(x);
  const FreqGrid y0 = apply_channel_freq(in.channel, x_freq);
  const FreqGrid y(y0.values + std::sqrt(n0) * in.unit_noise);
  const UeEstimate est = ue_scale(y, sh.grid, n0);
  rec.clamped = est.any_clamped();
  rec.evm = metrics::evm(in.symbols, y0, est.beta, sh.grid);

  const SymbolIndices detected = detect_nearest(est, sh.grid, sh.constellation);
  const long long raw_bits = static_cast<long long>(spec.system.U) * spec.system.S * sh.constellation.bits_per_symbol();
  rec.uncoded.add(count_bit_errors(in.sent, detected), raw_bits);

  if (spec.kind == ExperimentKind::ber_coded) {
    std::vector<Complex> row(static_cast<std::size_t>(spec.system.S));
    for (int u = 0; u < spec.system.U; ++u) {
      for (int j = 0; j < spec.system.S; ++j) row[static_cast<std::size_t>(j)] = est.s_tilde(u, sh.grid.occupied()[j]);
      const double bu = est.beta[static_cast<std::size_t>(u)];
      const double n0_eff = std::max(bu * bu * n0, 1e-12);
      const auto llrs = fec::llr_maxlog(row, n0_eff, sh.constellation);
      const fec::Bits decoded = fec::decode_frame(llrs, sh.code, *sh.interleaver);
      const fec::Bits& info = in.info_bits[static_cast<std::size_t>(u)];
      long long errs = 0;
      for (std::size_t i = 0; i < info.size(); ++i) errs += decoded[i] != info[i];
      rec.coded.add(errs, static_cast<long long>(info.size()));
    }
  }
  if (spec.kind == ExperimentKind::par) rec.par_db = metrics::par_db_rows(x);
}

std::vector<metrics::TrialRecord> run_trial(const ExperimentSpec& spec, const Shared& sh, int trial) {
  const TrialInputs in = draw_inputs(spec, sh, trial);
  std::vector<metrics::TrialRecord> out;
  for (double snr : spec.snr_db) {
    SystemConfig cfg = spec.system;
    cfg.N0 = snr_db_to_n0(snr);
    std::optional<WfResult> wf;  // the unquantized WF output is shared by every p
    bool wf_failed = false;
    auto get_wf = [&]() -> const WfResult* {
      if (!wf && !wf_failed) {
        try {
          wf = wf_precode(in.symbols, in.channel, sh.grid, cfg);
        } catch (const NumericalError&) {
          wf_failed = true;
        }
      }
      return wf ? &*wf : nullptr;
    };
    for (const PrecoderSpec& pc : spec.precoders) {
      const std::vector<PhaseBits> ps =
          pc.kind == PrecoderSpec::Kind::wf_ideal ? std::vector<PhaseBits>{PhaseBits::infinite()} : spec.phase_bits;
      for (PhaseBits p : ps) {
        metrics::TrialRecord rec;
        rec.snr_db = snr;
        rec.precoder = pc.name();
        rec.p = pc.kind == PrecoderSpec::Kind::wf_ideal ? "none" : p.to_string();
        rec.trial = trial;
        cfg.p = p;
        try {
          if (pc.kind == PrecoderSpec::Kind::squid) {
            SquidOptions opt;
            opt.iterations = pc.iterations > 0 ? pc.iterations : cfg.T;
            const SquidResult r = squid_precode(in.symbols, in.channel, sh.grid, cfg, opt);
            evaluate(rec, r.quantized, in, sh, spec, cfg.N0);
          } else {
            const WfResult* w = get_wf();
            if (w == nullptr) throw NumericalError("WF factorization failed");
            if (pc.kind == PrecoderSpec::Kind::wf_ideal) {
              evaluate(rec, w->unquantized, in, sh, spec, cfg.N0);
            } else {
              evaluate(rec, PhaseQuantizer(p, cfg.p_ant())(w->unquantized), in, sh, spec, cfg.N0);
            }
          }
        } catch (const NumericalError& e) {
          rec = metrics::TrialRecord{};
          rec.snr_db = snr;
          rec.precoder = pc.name();
          rec.p = pc.kind == PrecoderSpec::Kind::wf_ideal ? "none" : p.to_string();
          rec.trial = trial;
          rec.failed = true;
        }
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

// phi(t) = lambda t^2 + 1/2 sum (m_i - t)_+^2, convex in t.
double clip_objective(const std::vector<double>& m, double lambda, double t) {
  double s = 0.0;
  for (double v : m) s += v > t ? (v - t) * (v - t) : 0.0;
  return lambda * t * t + 0.5 * s;
}

double clip_by_grid(const std::vector<double>& m, double lambda) {
  const double top = *std::max_element(m.begin(), m.end());
  if (top == 0.0) return 0.0;
  const int steps = 4000;
  double best_t = 0.0;
  double best = clip_objective(m, lambda, 0.0);
  for (int i = 1; i <= steps; ++i) {
    const double t = top * i / steps;
    const double f = clip_objective(m, lambda, t);
    if (f < best) {
      best = f;
      best_t = t;
    }
  }
  double lo = std::max(0.0, best_t - top / steps);
  double hi = std::min(top, best_t + top / steps);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * top; ++it) {
    const double x1 = hi - g * (hi - lo);
    const double x2 = lo + g * (hi - lo);
    if (clip_objective(m, lambda, x1) <= clip_objective(m, lambda, x2)) {
      hi = x2;
    } else {
      lo = x1;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<ProxCheckRow> run_prox_validation(const ExperimentSpec& spec) {
  std::vector<ProxCheckRow> rows(static_cast<std::size_t>(spec.trials));
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < spec.trials; ++i) {
    auto rng = make_stream(spec.system.seed, static_cast<std::uint64_t>(i), Stream::validation);
    std::uniform_int_distribution<int> len(1, 64);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int k = len(rng);
    const double scale = std::pow(10.0, -2.0 + 4.0 * unit(rng));
    const double lambda = std::pow(10.0, -3.0 + 5.0 * unit(rng));
    std::vector<double> m(static_cast<std::size_t>(k));
    for (auto& v : m) v = std::abs(draw_cn(rng, scale * scale));
    ProxCheckRow row{i, k, lambda, 0, 0, 0, 0};
    row.clip_sorted = max_norm_clip_level(m, lambda);
    row.clip_grid = clip_by_grid(m, lambda);
    row.objective_sorted = clip_objective(m, lambda, row.clip_sorted);
    row.objective_grid = clip_objective(m, lambda, row.clip_grid);
    rows[static_cast<std::size_t>(i)] = row;
  }
  return rows;
}

std::vector<IterationInfo> run_trace(const ExperimentSpec& spec) {
  const Shared sh = make_shared(spec);
  const TrialInputs in = draw_inputs(spec, sh, 0);
  SystemConfig cfg = spec.system;
  cfg.N0 = snr_db_to_n0(spec.snr_db.front());
  cfg.p = spec.phase_bits.front();
  SquidOptions opt;
  const PrecoderSpec& pc = spec.precoders.front();
  opt.iterations = pc.iterations > 0 ? pc.iterations : cfg.T;
  opt.trace = true;
  return squid_precode(in.symbols, in.channel, sh.grid, cfg, opt).trace;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<metrics::TrialRecord> simulate_trial(const ExperimentSpec& spec, int trial) {
  spec.validate();
  return run_trial(spec, make_shared(spec), trial);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult result;
  result.spec = spec;
  switch (spec.kind) {
    case ExperimentKind::complexity: {
      const SystemConfig& c = spec.system;
      for (const PrecoderSpec& pc : spec.precoders) {
        const int t = pc.iterations > 0 ? pc.iterations : c.T;
        ComplexityRow row{c.B, c.U, c.S, c.N, t, metrics::mult_count_wf(c.B, c.U, c.S, c.N),
                          metrics::mult_count_squid(c.B, c.U, c.S, c.N, t), 0.0};
        row.ratio = static_cast<double>(row.squid_mults) / static_cast<double>(row.wf_mults);
        result.complexity.push_back(row);
      }
      return result;
    }
    case ExperimentKind::prox_validate:
      result.prox_checks = run_prox_validation(spec);
      result.trace = run_trace(spec);
      return result;
    default:
      break;
  }

  const Shared sh = make_shared(spec);
  std::vector<std::vector<metrics::TrialRecord>> per_trial(static_cast<std::size_t>(spec.trials));
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (int t = 0; t < spec.trials; ++t) {
    try {
      per_trial[static_cast<std::size_t>(t)] = run_trial(spec, sh, t);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  for (auto& recs : per_trial) {
    for (auto& r : recs) {
      if (r.failed) ++result.failed_records;
      result.records.push_back(std::move(r));
    }
  }
  return result;
}

std::vector<BerRow> aggregate_ber(const std::vector<metrics::TrialRecord>& records, bool coded) {
  std::vector<BerRow> rows;
  std::map<std::tuple<double, std::string, std::string>, std::size_t> index;
  for (const auto& r : records) {
    if (r.failed) continue;
    const auto key = std::make_tuple(r.snr_db, r.precoder, r.p);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rows.size()).first;
      rows.push_back({r.snr_db, r.precoder, r.p, 0, 0, 0.0, 0, 0});
    }
    BerRow& row = rows[it->second];
    const metrics::BitErrorCounter& c = coded ? r.coded : r.uncoded;
    row.bits += c.bits;
    row.bit_errors += c.errors;
    row.trials += 1;
    row.clamped_trials += r.clamped ? 1 : 0;
  }
  for (auto& row : rows) row.ber = row.bits > 0 ? static_cast<double>(row.bit_errors) / row.bits : 0.0;
  return rows;
}

void write_ber_csv(std::ostream& os, const std::vector<BerRow>& rows) {
  os << "snr_db,precoder,p,bits,bit_errors,ber,trials,clamped_trials\n";
  for (const auto& r : rows) {
    os << num(r.snr_db) << ',' << r.precoder << ',' << r.p << ',' << r.bits << ',' << r.bit_errors << ','
       << num(r.ber) << ',' << r.trials << ',' << r.clamped_trials << '\n';
  }
}

void write_evm_csv(std::ostream& os, const std::vector<metrics::TrialRecord>& records) {
  os << "snr_db,precoder,p,trial,ue,evm\n";
  for (const auto& r : records) {
    if (r.failed) continue;
    for (std::size_t u = 0; u < r.evm.size(); ++u) {
      os << num(r.snr_db) << ',' << r.precoder << ',' << r.p << ',' << r.trial << ',' << u << ',' << num(r.evm[u])
         << '\n';
    }
  }
}

namespace {

template <typename Field>
std::vector<std::pair<std::tuple<double, std::string, std::string>, std::vector<double>>> group_samples(
    const std::vector<metrics::TrialRecord>& records, Field field) {
  std::vector<std::pair<std::tuple<double, std::string, std::string>, std::vector<double>>> groups;
  for (const auto& r : records) {
    if (r.failed) continue;
    const auto key = std::make_tuple(r.snr_db, r.precoder, r.p);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) {
      groups.push_back({key, {}});
      it = groups.end() - 1;
    }
    const std::vector<double>& v = field(r);
    it->second.insert(it->second.end(), v.begin(), v.end());
  }
  return groups;
}

}  // namespace

void write_ccdf_csv(std::ostream& os, const std::vector<metrics::TrialRecord>& records) {
  os << "snr_db,precoder,p,evm,ccdf\n";
  for (const auto& [key, samples] : group_samples(records, [](const auto& r) -> const auto& { return r.evm; })) {
    if (samples.empty()) continue;
    for (const auto& pt : metrics::ccdf(samples)) {
      os << num(std::get<0>(key)) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ',' << num(pt.value)
         << ',' << num(pt.probability) << '\n';
    }
  }
}

void write_par_csv(std::ostream& os, const std::vector<metrics::TrialRecord>& records) {
  os << "snr_db,precoder,p,trial,antenna,par_db\n";
  for (const auto& r : records) {
    if (r.failed) continue;
    for (std::size_t b = 0; b < r.par_db.size(); ++b) {
      os << num(r.snr_db) << ',' << r.precoder << ',' << r.p << ',' << r.trial << ',' << b << ','
         << num(r.par_db[b]) << '\n';
    }
  }
}

void write_trace_csv(std::ostream& os, const std::vector<IterationInfo>& trace) {
  os << "iteration,objective,max_modulus\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << i + 1 << ',' << num(trace[i].objective) << ',' << num(trace[i].max_modulus) << '\n';
  }
}

namespace {

json manifest(const ExperimentResult& result, const std::vector<std::string>& files) {
  const ExperimentSpec& s = result.spec;
  json j;
  j["version"] = SQUIDOFDM_VERSION;
  j["kind"] = to_string(s.kind);
  j["profile"] = s.profile;
  j["system"] = {{"B", s.system.B}, {"U", s.system.U},   {"N", s.system.N},
                 {"S", s.system.S}, {"L", s.system.L},   {"p", s.system.p.to_string()},
                 {"N0", s.system.N0}, {"T", s.system.T}, {"seed", s.system.seed}};
  j["snr_db"] = s.snr_db;
  std::vector<std::string> pcs;
  for (const auto& p : s.precoders) pcs.push_back(p.name());
  j["precoders"] = pcs;
  std::vector<std::string> ps;
  for (const auto& p : s.phase_bits) ps.push_back(p.to_string());
  j["phase_bits"] = ps;
  j["trials"] = s.trials;
  j["qam"] = s.qam_order;
  j["failed_records"] = result.failed_records;
  j["outputs"] = files;
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

}  // namespace

std::vector<std::string> write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::pair<std::string, std::string>> files;
  auto add = [&](const std::string& name, auto&& writer) {
    std::ostringstream os;
    writer(os);
    files.emplace_back(name, os.str());
  };
  const auto& recs = result.records;
  switch (result.spec.kind) {
    case ExperimentKind::ber_uncoded:
      add("ber.csv", [&](std::ostream& os) { write_ber_csv(os, aggregate_ber(recs, false)); });
      break;
    case ExperimentKind::ber_coded:
      add("ber.csv", [&](std::ostream& os) { write_ber_csv(os, aggregate_ber(recs, true)); });
      add("ber_uncoded.csv", [&](std::ostream& os) { write_ber_csv(os, aggregate_ber(recs, false)); });
      break;
    case ExperimentKind::evm_ccdf:
      add("evm.csv", [&](std::ostream& os) { write_evm_csv(os, recs); });
      add("ccdf.csv", [&](std::ostream& os) { write_ccdf_csv(os, recs); });
      break;
    case ExperimentKind::par:
      add("par.csv", [&](std::ostream& os) { write_par_csv(os, recs); });
      break;
    case ExperimentKind::complexity:
      add("complexity.csv", [&](std::ostream& os) {
        os << "B,U,S,N,T,wf_mults,squid_mults,ratio\n";
        for (const auto& r : result.complexity) {
          os << r.b << ',' << r.u << ',' << r.s << ',' << r.n << ',' << r.t << ',' << r.wf_mults << ','
             << r.squid_mults << ',' << num(r.ratio) << '\n';
        }
      });
      break;
    case ExperimentKind::prox_validate:
      add("prox_validate.csv", [&](std::ostream& os) {
        os << "instance,length,lambda,clip_sorted,clip_grid,objective_sorted,objective_grid\n";
        for (const auto& r : result.prox_checks) {
          os << r.instance << ',' << r.length << ',' << num(r.lambda) << ',' << num(r.clip_sorted) << ','
             << num(r.clip_grid) << ',' << num(r.objective_sorted) << ',' << num(r.objective_grid) << '\n';
        }
      });
      add("squid_trace.csv", [&](std::ostream& os) { write_trace_csv(os, result.trace); });
      break;
  }
  std::vector<std::string> names;
  for (const auto& [name, text] : files) {
    write_file(dir / name, text);
    names.push_back(name);
  }
  names.push_back("manifest.json");
  write_file(dir / "manifest.json", manifest(result, names).dump(2) + "\n");
  return names;
}

std::string summary(const ExperimentResult& result) {
  std::ostringstream os;
  const ExperimentSpec& s = result.spec;
  os << to_string(s.kind) << " (" << s.profile << "): B=" << s.system.B << " U=" << s.system.U
     << " N=" << s.system.N << " S=" << s.system.S << " L=" << s.system.L << " trials=" << s.trials
     << " seed=" << s.system.seed << '\n';
  switch (s.kind) {
    case ExperimentKind::ber_uncoded:
    case ExperimentKind::ber_coded:
      for (const auto& r : aggregate_ber(result.records, s.kind == ExperimentKind::ber_coded)) {
        os << "  snr=" << num(r.snr_db) << " " << r.precoder << " p=" << r.p << " ber=" << num(r.ber) << " ("
           << r.bit_errors << "/" << r.bits << ")\n";
      }
      break;
    case ExperimentKind::evm_ccdf:
      for (const auto& [key, samples] :
           group_samples(result.records, [](const auto& r) -> const auto& { return r.evm; })) {
        os << "  snr=" << num(std::get<0>(key)) << " " << std::get<1>(key) << " p=" << std::get<2>(key)
           << " median_evm=" << num(metrics::median(samples)) << '\n';
      }
      break;
    case ExperimentKind::par:
      for (const auto& [key, samples] :
           group_samples(result.records, [](const auto& r) -> const auto& { return r.par_db; })) {
        os << "  " << std::get<1>(key) << " p=" << std::get<2>(key) << " median_par_db=" << num(metrics::median(samples))
           << '\n';
      }
      break;
    case ExperimentKind::complexity:
      for (const auto& r : result.complexity) {
        os << "  T=" << r.t << " wf=" << r.wf_mults << " squid=" << r.squid_mults << " ratio=" << num(r.ratio) << '\n';
      }
      break;
    case ExperimentKind::prox_validate: {
      double worst_t = 0.0;
      double worst_f = 0.0;
      for (const auto& r : result.prox_checks) {
        worst_t = std::max(worst_t, std::abs(r.clip_sorted - r.clip_grid));
        worst_f = std::max(worst_f, r.objective_sorted - r.objective_grid);
      }
      os << "  instances=" << result.prox_checks.size() << " max|dt|=" << num(worst_t)
         << " max(f_sorted-f_grid)=" << num(worst_f) << '\n';
      break;
    }
  }
  if (result.failed_records > 0) os << "  failed records skipped: " << result.failed_records << '\n';
  return os.str();
}

}  // namespace squidofdm::harness
