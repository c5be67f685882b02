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
// squid_sim: Monte Carlo driver for the precoding experiments.
//
//   squid_sim ber-uncoded --profile desk --trials 200 --out runs/ber
//   squid_sim evm-ccdf --precoder wf,squid@1,squid@20 --snr-list 10
//   squid_sim complexity --profile paper

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "squidofdm/harness.hpp"

namespace {

struct Flags {
  std::string config;
  std::string profile = "desk";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> qam;
  std::optional<int> iterations;
  std::vector<double> snr;
  std::vector<std::string> precoders;
  std::vector<std::string> phase_bits;
  std::string out;
};

int run(const std::string& kind_name, const Flags& f) {
  using namespace squidofdm;
  using namespace squidofdm::harness;
  ExperimentSpec spec = ExperimentSpec::defaults(parse_kind(kind_name), f.profile);
  if (!f.config.empty()) apply_config_file(spec, f.config);
  if (f.seed) spec.system.seed = *f.seed;
  if (f.trials) spec.trials = *f.trials;
  if (f.qam) spec.qam_order = *f.qam;
  if (f.iterations) spec.system.T = *f.iterations;
  if (!f.snr.empty()) spec.snr_db = f.snr;
  if (!f.precoders.empty()) {
    spec.precoders.clear();
    for (const auto& p : f.precoders) spec.precoders.push_back(PrecoderSpec::parse(p));
  }
  if (!f.phase_bits.empty()) {
    spec.phase_bits.clear();
    for (const auto& p : f.phase_bits) spec.phase_bits.push_back(PhaseBits::parse(p));
  }
  spec.validate();
  if (f.profile == "paper" && kind_name != "complexity") {
    std::cerr << "note: paper-scale runs take a long time\n";
  }

  const ExperimentResult result = run_experiment(spec);
  std::cout << summary(result);
  if (!f.out.empty()) {
    const auto files = write_outputs(result, f.out);
    std::cout << "wrote";
    for (const auto& name : files) std::cout << ' ' << f.out << '/' << name;
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Massive MIMO-OFDM downlink precoding with low-resolution phase DACs"};
  app.set_version_flag("--version", SQUIDOFDM_VERSION);
  app.require_subcommand(1);

  Flags flags;
  std::string chosen;
  for (const char* kind : {"evm-ccdf", "ber-uncoded", "ber-coded", "prox-validate", "complexity", "par"}) {
    CLI::App* sub = app.add_subcommand(kind, std::string("run the ") + kind + " experiment");
    sub->add_option("--config", flags.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--profile", flags.profile, "desk or paper")->check(CLI::IsMember({"desk", "paper"}));
    sub->add_option("--seed", flags.seed, "master seed");
    sub->add_option("--trials", flags.trials, "Monte Carlo trials (prox-validate: instances)");
    sub->add_option("--snr-list", flags.snr, "SNR values in dB")->delimiter(',');
    sub->add_option("--precoder", flags.precoders, "wf, wf-ideal, squid, squid@T")->delimiter(',');
    sub->add_option("--phase-bits", flags.phase_bits, "phase bits, integers or inf")->delimiter(',');
    sub->add_option("--qam", flags.qam, "QAM order (4, 16, 64, 256)");
    sub->add_option("-T,--iterations", flags.iterations, "SQUID iterations for plain 'squid'");
    sub->add_option("--out", flags.out, "output directory for CSV files and manifest.json");
    sub->callback([&chosen, sub] { chosen = sub->get_name(); });
  }

  CLI11_PARSE(app, argc, argv);
  try {
    return run(chosen, flags);
  } catch (const squidofdm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
