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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "squidofdm/harness.hpp"

using namespace squidofdm;
using namespace squidofdm::harness;

namespace {

ExperimentSpec small(ExperimentKind kind) {
  ExperimentSpec s = ExperimentSpec::defaults(kind, "desk");
  s.system.B = 8;
  s.system.U = 2;
  s.system.N = 64;
  s.system.S = 60;
  s.system.L = 3;
  s.system.T = 4;
  s.system.seed = 9;
  s.trials = 3;
  return s;
}

void same_records(const std::vector<metrics::TrialRecord>& a, const std::vector<metrics::TrialRecord>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].snr_db == b[i].snr_db);
    CHECK(a[i].precoder == b[i].precoder);
    CHECK(a[i].p == b[i].p);
    CHECK(a[i].trial == b[i].trial);
    CHECK(a[i].evm == b[i].evm);
    CHECK(a[i].uncoded.errors == b[i].uncoded.errors);
    CHECK(a[i].uncoded.bits == b[i].uncoded.bits);
    CHECK(a[i].coded.errors == b[i].coded.errors);
    CHECK(a[i].coded.bits == b[i].coded.bits);
    CHECK(a[i].par_db == b[i].par_db);
    CHECK(a[i].failed == b[i].failed);
  }
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("precoder names") {
  CHECK(PrecoderSpec::parse("wf").kind == PrecoderSpec::Kind::wf);
  CHECK(PrecoderSpec::parse("wf-ideal").name() == "wf-ideal");
  CHECK(PrecoderSpec::parse("squid").iterations == 0);
  CHECK(PrecoderSpec::parse("squid@20").iterations == 20);
  CHECK(PrecoderSpec::parse("squid@20").name() == "squid@20");
  for (const char* bad : {"squid@", "squid@0", "squid@x", "squid@3x", "zf", ""}) {
    CHECK_THROWS_AS(PrecoderSpec::parse(bad), ConfigError);
  }
  for (auto k : {ExperimentKind::evm_ccdf, ExperimentKind::ber_uncoded, ExperimentKind::ber_coded,
                 ExperimentKind::prox_validate, ExperimentKind::complexity, ExperimentKind::par}) {
    CHECK(parse_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_kind("ber"), ConfigError);
}

TEST_CASE("defaults validate and bad specs are rejected") {
  for (auto k : {ExperimentKind::evm_ccdf, ExperimentKind::ber_uncoded, ExperimentKind::ber_coded,
                 ExperimentKind::prox_validate, ExperimentKind::complexity, ExperimentKind::par}) {
    CHECK_NOTHROW(ExperimentSpec::defaults(k, "desk").validate());
    CHECK_NOTHROW(ExperimentSpec::defaults(k, "paper").validate());
  }
  CHECK_THROWS_AS(ExperimentSpec::defaults(ExperimentKind::par, "laptop"), ConfigError);
  auto s = small(ExperimentKind::ber_uncoded);
  SUBCASE("trials") { s.trials = 0; }
  SUBCASE("snr") { s.snr_db.clear(); }
  SUBCASE("precoders") { s.precoders.clear(); }
  SUBCASE("phase bits") { s.phase_bits.clear(); }
  SUBCASE("qam") { s.qam_order = 8; }
  SUBCASE("system") { s.system.U = 9; }
  SUBCASE("frame") {
    s.kind = ExperimentKind::ber_coded;
    s.system.S = 62;
  }
  SUBCASE("complexity precoder") {
    s.kind = ExperimentKind::complexity;
    s.precoders = {PrecoderSpec::parse("wf")};
  }
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("config files") {
  auto s = small(ExperimentKind::ber_uncoded);
  const auto good = temp_file("squid_cfg_good.json",
                              R"({"B": 16, "U": 3, "N0": 0.5, "T": 7, "seed": 5, "snr_db": [1, 2.5],
                                  "precoders": ["wf", "squid@3"], "phase_bits": [1, "inf"], "trials": 4, "qam": 16})");
  apply_config_file(s, good);
  CHECK(s.system.B == 16);
  CHECK(s.system.U == 3);
  CHECK(s.system.N0 == 0.5);
  CHECK(s.system.T == 7);
  CHECK(s.system.seed == 5);
  CHECK(s.snr_db == std::vector<double>{1.0, 2.5});
  REQUIRE(s.precoders.size() == 2);
  CHECK(s.precoders[1].iterations == 3);
  REQUIRE(s.phase_bits.size() == 2);
  CHECK(s.phase_bits[1].is_infinite());
  CHECK(s.trials == 4);
  CHECK(s.qam_order == 16);
  CHECK_THROWS_AS(apply_config_file(s, temp_file("squid_cfg_unknown.json", R"({"Bee": 3})")), ConfigError);
  CHECK_THROWS_AS(apply_config_file(s, temp_file("squid_cfg_type.json", R"({"B": "many"})")), ConfigError);
  CHECK_THROWS_AS(apply_config_file(s, temp_file("squid_cfg_syntax.json", "{B: 1")), ConfigError);
  CHECK_THROWS_AS(apply_config_file(s, "/nonexistent/squid.json"), ConfigError);
}

TEST_CASE("a trial is reproducible and independent of scheduling") {
  auto s = small(ExperimentKind::ber_uncoded);
  s.snr_db = {0.0, 10.0};
  s.phase_bits = {PhaseBits::finite(1), PhaseBits::finite(3)};
  same_records(simulate_trial(s, 1), simulate_trial(s, 1));
  const ExperimentResult r = run_experiment(s);
  std::vector<metrics::TrialRecord> serial;
  for (int t = 0; t < s.trials; ++t) {
    auto part = simulate_trial(s, t);
    serial.insert(serial.end(), part.begin(), part.end());
  }
  same_records(r.records, serial);
  CHECK(r.records.size() == 3u * 2u * 2u * 2u);
  CHECK(r.failed_records == 0);
  // different trials see different channels
  CHECK(simulate_trial(s, 0)[0].evm != simulate_trial(s, 1)[0].evm);
}

TEST_CASE("coded runs count frame bits") {
  auto s = small(ExperimentKind::ber_coded);
  s.snr_db = {20.0};
  s.phase_bits = {PhaseBits::infinite()};
  s.trials = 1;
  const auto rec = simulate_trial(s, 0);
  REQUIRE(!rec.empty());
  for (const auto& r : rec) CHECK(r.coded.bits == 2 * 194);
}

TEST_CASE("wf-ideal ignores p") {
  auto s = small(ExperimentKind::par);
  s.trials = 1;
  s.precoders = {PrecoderSpec::parse("wf-ideal"), PrecoderSpec::parse("wf")};
  s.phase_bits = {PhaseBits::finite(2), PhaseBits::infinite()};
  const auto rec = simulate_trial(s, 0);
  REQUIRE(rec.size() == 3);
  CHECK(rec[0].p == "none");
  CHECK(rec[0].par_db.size() == 8);
  for (std::size_t i = 1; i < rec.size(); ++i) {
    for (double v : rec[i].par_db) CHECK(v == 0.0);
  }
}

TEST_CASE("csv schemas") {
  auto s = small(ExperimentKind::evm_ccdf);
  s.trials = 2;
  s.precoders = {PrecoderSpec::parse("wf"), PrecoderSpec::parse("squid@2")};
  const ExperimentResult r = run_experiment(s);
  auto first_line = [](const std::string& text) { return text.substr(0, text.find('\n')); };
  std::ostringstream evm;
  write_evm_csv(evm, r.records);
  CHECK(first_line(evm.str()) == "snr_db,precoder,p,trial,ue,evm");
  std::ostringstream cc;
  write_ccdf_csv(cc, r.records);
  CHECK(first_line(cc.str()) == "snr_db,precoder,p,evm,ccdf");
  std::ostringstream ber;
  write_ber_csv(ber, aggregate_ber(r.records, false));
  CHECK(first_line(ber.str()) == "snr_db,precoder,p,bits,bit_errors,ber,trials,clamped_trials");
  std::ostringstream par;
  write_par_csv(par, r.records);
  CHECK(first_line(par.str()) == "snr_db,precoder,p,trial,antenna,par_db");
  std::ostringstream tr;
  write_trace_csv(tr, {IterationInfo{1.0, 2.0, 3.0}});
  CHECK(first_line(tr.str()) == "iteration,objective,max_modulus");

  const auto dir = std::filesystem::temp_directory_path() / "squid_harness_out";
  std::filesystem::remove_all(dir);
  const auto files = write_outputs(r, dir);
  CHECK(std::find(files.begin(), files.end(), "manifest.json") != files.end());
  for (const auto& f : files) CHECK(std::filesystem::exists(dir / f));
}

TEST_CASE("ber aggregation sums counts") {
  std::vector<metrics::TrialRecord> recs(3);
  for (int i = 0; i < 3; ++i) {
    recs[static_cast<std::size_t>(i)].precoder = "wf";
    recs[static_cast<std::size_t>(i)].p = "2";
    recs[static_cast<std::size_t>(i)].trial = i;
    recs[static_cast<std::size_t>(i)].uncoded.add(i, 100);
  }
  recs[2].clamped = true;
  const auto rows = aggregate_ber(recs, false);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].bits == 300);
  CHECK(rows[0].bit_errors == 3);
  CHECK(rows[0].ber == doctest::Approx(0.01));
  CHECK(rows[0].trials == 3);
  CHECK(rows[0].clamped_trials == 1);
}

TEST_CASE("complexity experiment") {
  auto s = ExperimentSpec::defaults(ExperimentKind::complexity, "paper");
  const ExperimentResult r = run_experiment(s);
  REQUIRE(r.complexity.size() == 2);
  CHECK(r.complexity[0].wf_mults == 102012416);
  CHECK(r.complexity[0].ratio == doctest::Approx(static_cast<double>(r.complexity[0].squid_mults) / 102012416.0));
}
