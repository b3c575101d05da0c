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

#include "qdistill/serialize.hpp"

#include <charconv>
#include <stdexcept>

namespace qdistill {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("expected [re, im] for a complex number");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json matrix_to_json(const Mat10& m) {
  Json rows = Json::array();
  for (int r = 0; r < kFockDim; ++r) {
    Json row = Json::array();
    for (int c = 0; c < kFockDim; ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat10 matrix_from_json(const Json& j) {
  if (!j.is_array() || j.size() != kFockDim) {
    throw std::invalid_argument("expected a 10x10 matrix");
  }
  Mat10 m;
  for (int r = 0; r < kFockDim; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != kFockDim) {
      throw std::invalid_argument("expected a 10x10 matrix");
    }
    for (int c = 0; c < kFockDim; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

std::string arm_to_string(Arm arm) {
  switch (arm) {
    case Arm::L: return "L";
    case Arm::R: return "R";
    case Arm::Both: return "both";
  }
  throw std::logic_error("unknown arm");
}

Arm arm_from_string(const std::string& s) {
  if (s == "L") return Arm::L;
  if (s == "R") return Arm::R;
  if (s == "both") return Arm::Both;
  throw std::invalid_argument("unknown arm: " + s);
}

std::string element_kind_to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::BeamSplitter: return "beam-splitter";
    case ElementKind::PolarizingBeamSplitter: return "polarizing-beam-splitter";
    case ElementKind::Pips: return "pips";
    case ElementKind::Pdps: return "pdps";
    case ElementKind::PolarizationRotator: return "polarization-rotator";
  }
  throw std::logic_error("unknown element kind");
}

ElementKind element_kind_from_string(const std::string& s) {
  if (s == "beam-splitter") return ElementKind::BeamSplitter;
  if (s == "polarizing-beam-splitter") return ElementKind::PolarizingBeamSplitter;
  if (s == "pips") return ElementKind::Pips;
  if (s == "pdps") return ElementKind::Pdps;
  if (s == "polarization-rotator") return ElementKind::PolarizationRotator;
  throw std::invalid_argument("unknown element kind: " + s);
}

std::string polarization_to_string(Polarization p) {
  return p == Polarization::Up ? "up" : "dn";
}

Polarization polarization_from_string(const std::string& s) {
  if (s == "up") return Polarization::Up;
  if (s == "dn") return Polarization::Down;
  throw std::invalid_argument("unknown polarization: " + s);
}

std::string spatial_to_string(Spatial s) { return s == Spatial::L ? "L" : "R"; }

Spatial spatial_from_string(const std::string& s) {
  if (s == "L") return Spatial::L;
  if (s == "R") return Spatial::R;
  throw std::invalid_argument("unknown spatial arm: " + s);
}

CanonicalTag canonical_tag_from_string(const std::string& s) {
  const std::optional<CanonicalTag> tag = parse_canonical_name(s);
  if (!tag) throw std::invalid_argument("unknown canonical state: " + s);
  return *tag;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const std::to_chars_result result =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (result.ec != std::errc{}) throw std::logic_error("double formatting failed");
  return std::string(buffer.data(), result.ptr);
}

Json to_json(const FockBasisState& state) {
  return Json(state.occupation);
}

Json to_json(const PureState& psi) {
  Json amplitudes = Json::array();
  for (int i = 0; i < kFockDim; ++i) amplitudes.push_back(complex_to_json(psi.amplitude(i)));
  return Json{{"amplitudes", std::move(amplitudes)}};
}

Json to_json(const DensityOperator& rho) {
  return Json{{"matrix", matrix_to_json(rho.matrix())}};
}

Json to_json(const DetectorSpec& detector) {
  return Json{
      {"monitored", spatial_to_string(detector.monitored)},
      {"eps", detector.eps},
      {"eps_prime", detector.eps_prime},
  };
}

Json to_json(const ProtocolConfig& config) {
  Json j{
      {"variant", variant_name(config.variant)},
      {"mode", run_mode_name(config.mode)},
      {"iterations", config.iterations},
      {"gamma", config.gamma},
      {"trajectories", config.trajectories},
      {"seed", config.seed},
      {"detector", to_json(config.detector)},
  };
  j["initial_state"] = config.initial_state ? to_json(*config.initial_state) : Json(nullptr);
  return j;
}

Json to_json(const IterationStats& stats) {
  return Json{
      {"iteration", stats.iteration},
      {"round_success", stats.round_success},
      {"cumulative_success", stats.cumulative_success},
  };
}

Json to_json(const TrajectoryLog& log) {
  Json rounds = Json::array();
  for (const TrajectoryRound& r : log.rounds) {
    rounds.push_back(Json{
        {"iteration", r.iteration},
        {"true_parity", parity_name(r.true_parity)},
        {"reported", parity_name(r.reported)},
    });
  }
  return Json{{"success_round", log.success_round}, {"rounds", std::move(rounds)}};
}

Json to_json(const ProtocolResult& result, bool include_trajectories) {
  Json iterations = Json::array();
  for (const IterationStats& stats : result.per_iteration) iterations.push_back(to_json(stats));
  Json j{
      {"iterations", std::move(iterations)},
      {"singlet_fidelity", result.singlet_fidelity},
      {"concurrence", result.concurrence},
  };
  j["final_state"] = result.final_state ? to_json(*result.final_state) : Json(nullptr);
  if (include_trajectories) {
    Json logs = Json::array();
    for (const TrajectoryLog& log : result.trajectory_logs) logs.push_back(to_json(log));
    j["trajectories"] = std::move(logs);
  }
  return j;
}

Json to_json(const SweepRow& row) {
  return Json{
      {"eps", row.eps},
      {"eps_prime", row.eps_prime},
      {"p_lr", row.p_lr},
      {"concurrence", row.concurrence},
  };
}

Json to_json(const ElementSpec& element) {
  return Json{
      {"type", "element"},
      {"kind", element_kind_to_string(element.kind)},
      {"angle", element.angle},
      {"arm", arm_to_string(element.arm)},
      {"polarization", polarization_to_string(element.polarization)},
      {"description", element.description()},
  };
}

Json to_json(const DetectorAction& action) {
  return Json{
      {"type", "detector"},
      {"kind", action.kind == DetectorAction::Kind::ArmParity ? "arm-parity" : "polarized-parity"},
      {"arm", spatial_to_string(action.arm)},
      {"polarization", polarization_to_string(action.polarization)},
      {"outcome", parity_name(action.outcome)},
      {"probability", action.probability},
      {"description", action.description()},
  };
}

Json to_json(const PathStep& step) {
  if (const ElementSpec* element = std::get_if<ElementSpec>(&step)) return to_json(*element);
  return to_json(std::get<DetectorAction>(step));
}

Json to_json(const PathCertificate& certificate) {
  Json steps = Json::array();
  for (const PathStep& step : certificate.steps) steps.push_back(to_json(step));
  return Json{
      {"source", canonical_state(certificate.source).name},
      {"target", canonical_state(certificate.target).name},
      {"steps", std::move(steps)},
      {"success_probability", certificate.success_probability},
  };
}

PureState pure_state_from_json(const Json& j) {
  const Json& amplitudes = j.at("amplitudes");
  if (!amplitudes.is_array() || amplitudes.size() != kFockDim) {
    throw std::invalid_argument("expected 10 amplitudes");
  }
  Vec10 v;
  for (int i = 0; i < kFockDim; ++i) v(i) = complex_from_json(amplitudes[static_cast<std::size_t>(i)]);
  return PureState::from_amplitudes(v);
}

DensityOperator density_from_json(const Json& j) {
  return DensityOperator::from_matrix(matrix_from_json(j.at("matrix")));
}

ProtocolResult protocol_result_from_json(const Json& j) {
  ProtocolResult result;
  for (const Json& stats : j.at("iterations")) {
    result.per_iteration.push_back(IterationStats{
        stats.at("iteration").get<int>(),
        stats.at("round_success").get<double>(),
        stats.at("cumulative_success").get<double>(),
    });
  }
  result.singlet_fidelity = j.at("singlet_fidelity").get<double>();
  result.concurrence = j.at("concurrence").get<double>();
  if (!j.at("final_state").is_null()) {
    result.final_state = density_from_json(j.at("final_state"));
  }
  if (j.contains("trajectories")) {
    for (const Json& log_json : j.at("trajectories")) {
      TrajectoryLog log;
      log.success_round = log_json.at("success_round").get<int>();
      for (const Json& round : log_json.at("rounds")) {
        log.rounds.push_back(TrajectoryRound{
            round.at("iteration").get<int>(),
            round.at("true_parity").get<std::string>() == "odd" ? Parity::Odd : Parity::Even,
            round.at("reported").get<std::string>() == "odd" ? Parity::Odd : Parity::Even,
        });
      }
      result.trajectory_logs.push_back(std::move(log));
    }
  }
  return result;
}

PathCertificate certificate_from_json(const Json& j) {
  PathCertificate certificate;
  certificate.source = canonical_tag_from_string(j.at("source").get<std::string>());
  certificate.target = canonical_tag_from_string(j.at("target").get<std::string>());
  certificate.success_probability = j.at("success_probability").get<double>();
  for (const Json& step : j.at("steps")) {
    const std::string type = step.at("type").get<std::string>();
    if (type == "element") {
      ElementSpec element;
      element.kind = element_kind_from_string(step.at("kind").get<std::string>());
      element.angle = step.at("angle").get<double>();
      element.arm = arm_from_string(step.at("arm").get<std::string>());
      element.polarization = polarization_from_string(step.at("polarization").get<std::string>());
      certificate.steps.emplace_back(element);
    } else if (type == "detector") {
      DetectorAction action;
      action.kind = step.at("kind").get<std::string>() == "arm-parity"
                        ? DetectorAction::Kind::ArmParity
                        : DetectorAction::Kind::PolarizedParity;
      action.arm = spatial_from_string(step.at("arm").get<std::string>());
      action.polarization = polarization_from_string(step.at("polarization").get<std::string>());
      action.outcome = step.at("outcome").get<std::string>() == "odd" ? Parity::Odd : Parity::Even;
      action.probability = step.at("probability").get<double>();
      certificate.steps.emplace_back(action);
    } else {
      throw std::invalid_argument("unknown path step type: " + type);
    }
  }
  return certificate;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "eps,eps_prime,p_lr,concurrence\n";
  for (const SweepRow& row : rows) {
    out += format_double(row.eps);
    out += ',';
    out += format_double(row.eps_prime);
    out += ',';
    out += format_double(row.p_lr);
    out += ',';
    out += format_double(row.concurrence);
    out += '\n';
  }
  return out;
}

std::string canonical_dump(const Json& j) { return j.dump(); }

}  // namespace qdistill
