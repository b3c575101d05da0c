// Copyright 2026 The qdistill authors
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

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdistill/elements.hpp"
#include "qdistill/po_equivalence.hpp"
#include "qdistill/protocol.hpp"
#include "qdistill/serialize.hpp"
#include "qdistill/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitSuccess = 0;
constexpr int kExitRuntimeFailure = 1;
constexpr int kExitUsageError = 2;

/// Provenance block embedded in every output.  The timestamp honors
/// SOURCE_DATE_EPOCH so reruns can be made byte-identical.
struct RunManifest {
  std::string command_line;
  qdistill::Json config;
  std::string version = kVersion;
  std::uint64_t seed = 0;
  std::string timestamp;
};

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

RunManifest make_manifest(int argc, char** argv, qdistill::Json config, std::uint64_t seed) {
  RunManifest manifest;
  std::ostringstream line;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) line << ' ';
    line << argv[i];
  }
  manifest.command_line = line.str();
  manifest.config = std::move(config);
  manifest.seed = seed;
  manifest.timestamp = utc_timestamp();
  return manifest;
}

qdistill::Json to_json(const RunManifest& manifest) {
  return qdistill::Json{
      {"command_line", manifest.command_line},
      {"config", manifest.config},
      {"version", manifest.version},
      {"seed", manifest.seed},
      {"timestamp", manifest.timestamp},
  };
}

/// "# key: value" comment lines embedding the manifest in text formats.
std::string manifest_header(const RunManifest& manifest) {
  std::string out;
  out += "# command: " + manifest.command_line + "\n";
  out += "# version: " + manifest.version + "\n";
  out += "# seed: " + std::to_string(manifest.seed) + "\n";
  out += "# timestamp: " + manifest.timestamp + "\n";
  out += "# config: " + qdistill::canonical_dump(manifest.config) + "\n";
  return out;
}

int emit(const std::string& payload, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << payload;
    return kExitSuccess;
  }
  std::ofstream file(output_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output path: " << output_path << "\n";
    return kExitRuntimeFailure;
  }
  file << payload;
  if (!file.good()) {
    std::cerr << "error: failed writing output path: " << output_path << "\n";
    return kExitRuntimeFailure;
  }
  return kExitSuccess;
}

std::string json_payload(const RunManifest& manifest, qdistill::Json body) {
  qdistill::Json root;
  root["manifest"] = to_json(manifest);
  for (auto& [key, value] : body.items()) root[key] = std::move(value);
  return root.dump(2) + "\n";
}

std::string fmt(double value) { return qdistill::format_double(value); }

/// Short human-readable form of a pure state: signed amplitudes on kets.
std::string pretty_state(const qdistill::PureState& psi) {
  std::ostringstream out;
  bool first = true;
  const auto& basis = qdistill::enumerate_basis();
  for (int i = 0; i < qdistill::kFockDim; ++i) {
    const qdistill::Complex amp = psi.amplitude(i);
    if (std::abs(amp) < 1e-12) continue;
    if (!first) out << " + ";
    out << "(" << fmt(amp.real());
    if (std::abs(amp.imag()) >= 1e-12) out << (amp.imag() < 0 ? "" : "+") << fmt(amp.imag()) << "i";
    out << ")" << basis[static_cast<std::size_t>(i)].to_string();
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------- basis ---

int cmd_basis(const RunManifest& manifest, const std::string& format,
              const std::string& output_path) {
  const auto& basis = qdistill::enumerate_basis();
  const auto& canonical = qdistill::canonical_states();

  if (format == "json") {
    qdistill::Json tuples = qdistill::Json::array();
    for (int i = 0; i < qdistill::kFockDim; ++i) {
      tuples.push_back(qdistill::Json{
          {"index", i},
          {"occupation", qdistill::to_json(basis[static_cast<std::size_t>(i)])},
          {"description", basis[static_cast<std::size_t>(i)].to_string()},
      });
    }
    qdistill::Json states = qdistill::Json::array();
    for (const auto& s : canonical) {
      states.push_back(qdistill::Json{
          {"name", s.name},
          {"family", qdistill::set_label_name(qdistill::classify_set(s.state))},
          {"state", qdistill::to_json(s.state)},
      });
    }
    return emit(json_payload(manifest, {{"basis", tuples}, {"canonical_states", states}}),
                output_path);
  }

  if (format == "csv") {
    std::string out = manifest_header(manifest);
    out += "index,n_L_up,n_L_dn,n_R_up,n_R_dn,description\n";
    for (int i = 0; i < qdistill::kFockDim; ++i) {
      const auto& occ = basis[static_cast<std::size_t>(i)].occupation;
      out += std::to_string(i);
      for (const int n : occ) out += "," + std::to_string(n);
      out += "," + basis[static_cast<std::size_t>(i)].to_string() + "\n";
    }
    return emit(out, output_path);
  }

  std::ostringstream out;
  out << manifest_header(manifest);
  out << "two-photon basis (modes L_up, L_dn, R_up, R_dn)\n";
  for (int i = 0; i < qdistill::kFockDim; ++i) {
    const auto& state = basis[static_cast<std::size_t>(i)];
    out << "  " << std::setw(2) << i << "  (";
    for (int m = 0; m < qdistill::kModeCount; ++m) {
      if (m > 0) out << ",";
      out << state.occupation[static_cast<std::size_t>(m)];
    }
    out << ")  " << state.to_string() << "\n";
  }
  out << "canonical states\n";
  for (const auto& s : canonical) {
    out << "  " << std::setw(4) << s.name << "  ["
        << qdistill::set_label_name(qdistill::classify_set(s.state)) << "]  "
        << pretty_state(s.state) << "\n";
  }
  return emit(out.str(), output_path);
}

// ------------------------------------------------------------------ run ---

int cmd_run(const RunManifest& manifest, const qdistill::ProtocolConfig& config,
            bool log_trajectories, const std::string& format, const std::string& output_path) {
  const qdistill::ProtocolResult result = qdistill::run_protocol(config);

  if (format == "json") {
    return emit(json_payload(manifest,
                             {{"result", qdistill::to_json(result, log_trajectories)}}),
                output_path);
  }

  if (format == "csv") {
    std::string out = manifest_header(manifest);
    out += "iteration,round_success,cumulative_success\n";
    for (const auto& stats : result.per_iteration) {
      out += std::to_string(stats.iteration) + "," + fmt(stats.round_success) + "," +
             fmt(stats.cumulative_success) + "\n";
    }
    return emit(out, output_path);
  }

  std::ostringstream out;
  out << manifest_header(manifest);
  out << std::left << std::setw(10) << "iteration" << std::setw(24) << "round_success"
      << "cumulative_success\n";
  for (const auto& stats : result.per_iteration) {
    out << std::left << std::setw(10) << stats.iteration << std::setw(24)
        << fmt(stats.round_success) << fmt(stats.cumulative_success) << "\n";
  }
  out << "singlet_fidelity   " << fmt(result.singlet_fidelity) << "\n";
  out << "concurrence        " << fmt(result.concurrence) << "\n";
  if (!result.final_state) out << "final_state        none (no reported-odd round)\n";
  return emit(out.str(), output_path);
}

// ---------------------------------------------------------------- sweep ---

int cmd_sweep(const RunManifest& manifest, int grid_points, const std::string& format,
              const std::string& output_path) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    grid.push_back(static_cast<double>(i) / (grid_points - 1));
  }
  const std::vector<qdistill::SweepRow> rows = qdistill::sweep_errors(grid, grid);

  if (format == "json") {
    qdistill::Json body = qdistill::Json::array();
    for (const auto& row : rows) body.push_back(qdistill::to_json(row));
    return emit(json_payload(manifest, {{"rows", body}}), output_path);
  }

  if (format == "csv") {
    return emit(manifest_header(manifest) + qdistill::sweep_to_csv(rows), output_path);
  }

  std::ostringstream out;
  out << manifest_header(manifest);
  out << std::left << std::setw(12) << "eps" << std::setw(12) << "eps_prime" << std::setw(24)
      << "p_lr" << "concurrence\n";
  for (const auto& row : rows) {
    out << std::left << std::setw(12) << fmt(row.eps) << std::setw(12) << fmt(row.eps_prime)
        << std::setw(24) << fmt(row.p_lr) << fmt(row.concurrence) << "\n";
  }
  return emit(out.str(), output_path);
}

// ----------------------------------------------------------------- path ---

int cmd_path(const RunManifest& manifest, const std::string& source_name,
             const std::string& target_name, int max_depth, bool allow_detector,
             const std::string& format, const std::string& output_path) {
  const auto source = qdistill::parse_canonical_name(source_name);
  const auto target = qdistill::parse_canonical_name(target_name);
  if (!source || !target) {
    std::cerr << "error: unknown state name: " << (!source ? source_name : target_name)
              << " (expected one of:";
    for (const auto& s : qdistill::canonical_states()) std::cerr << " " << s.name;
    std::cerr << ")\n";
    return kExitUsageError;
  }

  const qdistill::SetLabel source_family =
      qdistill::classify_set(qdistill::canonical_state(*source).state);
  const qdistill::SetLabel target_family =
      qdistill::classify_set(qdistill::canonical_state(*target).state);

  std::optional<qdistill::PathCertificate> certificate =
      qdistill::find_po_path(*source, *target, max_depth);
  std::string reason;
  if (!certificate) {
    if (source_family != target_family) {
      if (allow_detector) {
        certificate = qdistill::find_bridge_path(*source, *target, max_depth);
      } else {
        reason = "amplitude-matrix ranks differ (" + qdistill::set_label_name(source_family) +
                 " vs " + qdistill::set_label_name(target_family) +
                 "): unreachable by passive optics alone; rerun with --allow-detector";
      }
    } else {
      reason = "no passive-optics path within depth " + std::to_string(max_depth);
    }
  }

  if (format == "json") {
    qdistill::Json body{
        {"source", source_name},
        {"target", target_name},
        {"source_family", qdistill::set_label_name(source_family)},
        {"target_family", qdistill::set_label_name(target_family)},
        {"found", certificate.has_value()},
    };
    body["certificate"] = certificate ? qdistill::to_json(*certificate) : qdistill::Json(nullptr);
    if (!certificate) body["reason"] = reason;
    return emit(json_payload(manifest, std::move(body)), output_path);
  }

  std::ostringstream out;
  out << manifest_header(manifest);
  out << "source  " << source_name << " [" << qdistill::set_label_name(source_family) << "]\n";
  out << "target  " << target_name << " [" << qdistill::set_label_name(target_family) << "]\n";
  if (!certificate) {
    out << "result  NotFound: " << reason << "\n";
    return emit(out.str(), output_path);
  }
  out << "result  " << certificate->steps.size() << " step(s), success probability "
      << fmt(certificate->success_probability) << "\n";
  int index = 1;
  for (const auto& step : certificate->steps) {
    out << "  " << index++ << ". " << qdistill::path_step_description(step) << "\n";
  }
  return emit(out.str(), output_path);
}

// --------------------------------------------------------------- verify ---

int cmd_verify(const RunManifest& manifest, const std::string& format,
               const std::string& output_path) {
  const std::vector<qdistill::CheckResult> checks = qdistill::run_acceptance_checks();
  const bool ok = qdistill::all_passed(checks);

  if (format == "json") {
    qdistill::Json body = qdistill::Json::array();
    for (const auto& check : checks) {
      body.push_back(qdistill::Json{
          {"id", check.id},
          {"name", check.name},
          {"passed", check.passed},
          {"detail", check.detail},
          {"seconds", check.seconds},
      });
    }
    const int code =
        emit(json_payload(manifest, {{"checks", body}, {"all_passed", ok}}), output_path);
    return code != kExitSuccess ? code : (ok ? kExitSuccess : kExitRuntimeFailure);
  }

  std::ostringstream out;
  if (format == "csv") {
    out << manifest_header(manifest);
    out << "id,name,passed,seconds,detail\n";
    for (const auto& check : checks) {
      out << check.id << "," << check.name << "," << (check.passed ? "true" : "false") << ","
          << fmt(check.seconds) << ",\"" << check.detail << "\"\n";
    }
  } else {
    out << manifest_header(manifest);
    for (const auto& check : checks) {
      out << (check.passed ? "[PASS] " : "[FAIL] ") << check.id << ". " << check.name << " — "
          << check.detail << " (" << fmt(check.seconds) << " s)\n";
    }
    out << (ok ? "all checks passed\n" : "SOME CHECKS FAILED\n");
  }
  const int code = emit(out.str(), output_path);
  return code != kExitSuccess ? code : (ok ? kExitSuccess : kExitRuntimeFailure);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdistill — exact simulator for two-photon entanglement distillation\n"
               "with passive optics and a non-absorbing parity-check detector"};
  app.set_version_flag("--version", std::string("qdistill ") + kVersion);
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string output_path;
  std::string format;  // per-subcommand default resolved below
  app.add_option("--seed", seed, "Seed for all pseudo-random choices")->capture_default_str();
  app.add_option("--output", output_path, "Write the output to this path instead of stdout");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "table", "csv"}));
  // Let the global --seed/--output/--format options appear after the
  // subcommand name as well as before it.
  app.fallthrough();

  CLI::App* basis = app.add_subcommand("basis", "Print the two-photon basis and canonical states");

  CLI::App* run = app.add_subcommand("run", "Run the repeat-until-success protocol");
  std::string variant = "depolarizing";
  std::string mode = "exact";
  std::string monitor = "L";
  int iterations = 1;
  int trajectories = 10000;
  double gamma = 1.0;
  double eps = 0.0;
  double eps_prime = 0.0;
  bool log_trajectories = false;
  run->add_option("--variant", variant, "Noise variant")
      ->check(CLI::IsMember({"depolarizing", "amplitude-damping"}))
      ->capture_default_str();
  run->add_option("--iterations", iterations, "Maximum number of rounds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--mode", mode, "Simulation engine")
      ->check(CLI::IsMember({"exact", "monte-carlo"}))
      ->capture_default_str();
  run->add_option("--trajectories", trajectories, "Monte Carlo sample count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--gamma", gamma, "Damping strength for the amplitude-damping variant")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  run->add_option("--eps", eps, "P(report even | true odd)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  run->add_option("--eps-prime", eps_prime, "P(report odd | true even)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  run->add_option("--monitor", monitor, "Arm whose photon-number parity is monitored")
      ->check(CLI::IsMember({"L", "R"}))
      ->capture_default_str();
  run->add_flag("--log-trajectories", log_trajectories,
                "Include per-trajectory measurement records in JSON output");

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep detector error rates over a grid");
  int grid_points = 21;
  sweep->add_option("--grid", grid_points, "Points per axis over [0, 1]")
      ->check(CLI::Range(2, 10001))
      ->capture_default_str();

  CLI::App* path = app.add_subcommand("path", "Search for a conversion recipe between states");
  std::string source_name;
  std::string target_name;
  int max_depth = 8;
  bool allow_detector = false;
  path->add_option("source", source_name, "Source canonical state name")->required();
  path->add_option("target", target_name, "Target canonical state name")->required();
  path->add_option("--max-depth", max_depth, "Maximum number of passive elements")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  path->add_flag("--allow-detector", allow_detector,
                 "Allow conditional parity-check steps to cross between families");

  CLI::App* verify = app.add_subcommand("verify", "Run the full acceptance check suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& success) {
    app.exit(success);  // --help / --version
    return kExitSuccess;
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitUsageError;
  }

  try {
    if (basis->parsed()) {
      if (format.empty()) format = "json";
      const RunManifest manifest =
          make_manifest(argc, argv, qdistill::Json{{"command", "basis"}}, seed);
      return cmd_basis(manifest, format, output_path);
    }

    if (run->parsed()) {
      if (format.empty()) format = "json";
      qdistill::ProtocolConfig config;
      config.variant = *qdistill::parse_variant(variant);
      config.mode = *qdistill::parse_run_mode(mode);
      config.iterations = iterations;
      config.gamma = gamma;
      config.trajectories = trajectories;
      config.seed = seed;
      config.detector =
          qdistill::DetectorSpec{monitor == "L" ? qdistill::Spatial::L : qdistill::Spatial::R,
                                 eps, eps_prime};
      qdistill::Json config_json = qdistill::to_json(config);
      config_json["command"] = "run";
      const RunManifest manifest = make_manifest(argc, argv, std::move(config_json), seed);
      return cmd_run(manifest, config, log_trajectories, format, output_path);
    }

    if (sweep->parsed()) {
      if (format.empty()) format = "csv";
      const RunManifest manifest = make_manifest(
          argc, argv, qdistill::Json{{"command", "sweep"}, {"grid", grid_points}}, seed);
      return cmd_sweep(manifest, grid_points, format, output_path);
    }

    if (path->parsed()) {
      if (format == "csv") {
        std::cerr << "error: csv format is not defined for path output\n";
        return kExitUsageError;
      }
      if (format.empty()) format = "json";
      const RunManifest manifest = make_manifest(
          argc, argv,
          qdistill::Json{{"command", "path"},
                         {"source", source_name},
                         {"target", target_name},
                         {"max_depth", max_depth},
                         {"allow_detector", allow_detector}},
          seed);
      return cmd_path(manifest, source_name, target_name, max_depth, allow_detector, format,
                      output_path);
    }

    if (verify->parsed()) {
      if (format.empty()) format = "table";
      const RunManifest manifest =
          make_manifest(argc, argv, qdistill::Json{{"command", "verify"}}, seed);
      return cmd_verify(manifest, format, output_path);
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitRuntimeFailure;
  }

  std::cerr << "error: no subcommand selected\n";
  return kExitUsageError;
}
