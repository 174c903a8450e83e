// Copyright 2026 The qfav developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Subcommands:
//
//   avg SPEC                closed-form average fidelity
//   mc SPEC [--samples N] [--seed S]
//                           Monte-Carlo estimate with standard error
//   protocol SPEC --out P   synthesize a measurement protocol for the target
//   check SPEC              run validity checks, reporting deviations
//
// All output is JSON on stdout. Exit codes: 0 success (and all checks
// passing), 2 for parse/validation problems, 1 for internal consistency
// failures.

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "qfav/qfav.hpp"

namespace {

using qfav::io::json;

struct NamedCheck {
  std::string name;
  double max_deviation;
};

int run_avg(const std::string& spec_path, double tol) {
  const qfav::io::ChannelSpec spec = qfav::io::load_channel_spec_file(spec_path, tol);
  const qfav::FidelityReport report =
      qfav::average_fidelity(spec.target_unitary, spec.channel,
                             /*max_n=*/qfav::max_dense_qubits, tol);
  std::cout << qfav::io::report_to_json(report).dump(2) << "\n";
  return 0;
}

int run_mc(const std::string& spec_path, double tol, long samples,
           std::optional<std::uint64_t> seed) {
  const qfav::io::ChannelSpec spec = qfav::io::load_channel_spec_file(spec_path, tol);
  if (!seed) {
    // No seed given: draw one and let the report record it.
    std::random_device device;
    seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
  }
  const qfav::FidelityReport report =
      qfav::mc_average_fidelity(spec.target_unitary, spec.channel, samples, *seed, tol);
  std::cout << qfav::io::report_to_json(report).dump(2) << "\n";
  return 0;
}

int run_protocol(const std::string& spec_path, double tol, const std::string& out_path) {
  const qfav::io::ChannelSpec spec = qfav::io::load_channel_spec_file(spec_path, tol);
  const qfav::ProtocolSpec protocol =
      qfav::build_protocol(spec.target_unitary, spec.n, tol);
  qfav::io::save_json_file(out_path, qfav::io::protocol_to_json(protocol));
  const json summary{
      {"format_version", qfav::io::format_version},
      {"n", protocol.n},
      {"preparations", protocol.preparations.size()},
      {"projectors", protocol.projectors.size()},
      {"out", out_path},
      {"value", qfav::evaluate_protocol(protocol, spec.channel)},
  };
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int run_check(const std::string& spec_path, double tol) {
  // Shape checks only on load, so defective channels get measured and
  // reported instead of rejected.
  const qfav::io::ChannelSpec spec =
      qfav::io::load_channel_spec_file(spec_path, tol, /*validate=*/false);

  std::vector<NamedCheck> checks;
  checks.push_back({"target_unitary_unitarity",
                    qfav::unitarity_deviation(spec.target_unitary)});
  checks.push_back({"channel_trace_preservation",
                    qfav::check_trace_preserving(spec.channel, tol).max_deviation});

  // Behavioral probe: a channel must carry states to states. Feed it the
  // maximally mixed state and measure how far the output is from a
  // density matrix.
  const long dim = spec.channel.dim();
  const qfav::ComplexMatrix mixed =
      qfav::ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  const qfav::DensityDeviation out_dev =
      qfav::measure_density_deviation(qfav::apply_to_operator(spec.channel, mixed));
  const double density_dev = std::max({out_dev.hermiticity, out_dev.trace,
                                       std::max(0.0, -out_dev.min_eigenvalue)});
  checks.push_back({"channel_output_density", density_dev});

  bool all_ok = true;
  json check_list = json::array();
  for (const auto& c : checks) {
    const bool ok = c.max_deviation <= tol;
    all_ok = all_ok && ok;
    check_list.push_back(json{{"name", c.name},
                              {"max_deviation", c.max_deviation},
                              {"tolerance", tol},
                              {"ok", ok}});
  }
  const json doc{
      {"format_version", qfav::io::format_version},
      {"n", spec.n},
      {"kind", spec.kind},
      {"ok", all_ok},
      {"checks", std::move(check_list)},
  };
  std::cout << doc.dump(2) << "\n";
  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"average fidelity of n-qubit channels"};
  app.require_subcommand(1);

  double tol = qfav::default_tol;
  app.add_option("--tol", tol, "validation tolerance")->capture_default_str();

  std::string avg_spec;
  auto* avg = app.add_subcommand("avg", "closed-form average fidelity");
  avg->add_option("spec", avg_spec, "channel spec file")->required();

  std::string mc_spec;
  long samples = 100000;
  std::optional<std::uint64_t> seed;
  auto* mc = app.add_subcommand("mc", "Monte-Carlo average fidelity");
  mc->add_option("spec", mc_spec, "channel spec file")->required();
  mc->add_option("--samples", samples, "Haar samples")->capture_default_str();
  mc->add_option("--seed", seed, "RNG seed (drawn at random when omitted)");

  std::string protocol_spec;
  std::string out_path;
  auto* protocol = app.add_subcommand("protocol", "synthesize a measurement protocol");
  protocol->add_option("spec", protocol_spec, "channel spec file")->required();
  protocol->add_option("--out", out_path, "protocol output file")->required();

  std::string check_spec;
  auto* check = app.add_subcommand("check", "validity checks with deviations");
  check->add_option("spec", check_spec, "channel spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*avg) return run_avg(avg_spec, tol);
    if (*mc) return run_mc(mc_spec, tol, samples, seed);
    if (*protocol) return run_protocol(protocol_spec, tol, out_path);
    if (*check) return run_check(check_spec, tol);
  } catch (const qfav::consistency_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const qfav::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
