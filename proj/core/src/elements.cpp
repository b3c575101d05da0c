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

#include "qdistill/elements.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qdistill {

namespace {

double normalize_angle(double theta) {
  const double two_pi = 2.0 * std::numbers::pi;
  double result = std::fmod(theta, two_pi);
  if (result < 0.0) result += two_pi;
  return result;
}

std::string arm_name(Arm arm) {
  switch (arm) {
    case Arm::L: return "L";
    case Arm::R: return "R";
    case Arm::Both: return "LR";
  }
  throw std::logic_error("unknown arm");
}

std::string polarization_name(Polarization p) {
  return p == Polarization::Up ? "up" : "dn";
}

std::string format_angle(double theta) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << theta;
  return out.str();
}

bool arm_matches(Arm arm, Spatial s) {
  return arm == Arm::Both || (arm == Arm::L && s == Spatial::L) ||
         (arm == Arm::R && s == Spatial::R);
}

PureState superposition(int index_a, int index_b, double sign) {
  Vec10 v = Vec10::Zero();
  const double amp = 1.0 / std::sqrt(2.0);
  v(index_a) = Complex(amp, 0.0);
  v(index_b) = Complex(sign * amp, 0.0);
  return PureState::from_amplitudes(v);
}

std::array<CanonicalState, kCanonicalCount> build_canonical_states() {
  // Basis indices: 0:|2L↑⟩ 1:|L↑L↓⟩ 2:|↑↑⟩ 3:|↑↓⟩ 4:|2L↓⟩
  //                5:|↓↑⟩ 6:|↓↓⟩ 7:|2R↑⟩ 8:|R↑R↓⟩ 9:|2R↓⟩
  return {
      CanonicalState{CanonicalTag::OneMinusLR, "1-LR", superposition(3, 5, -1.0)},
      CanonicalState{CanonicalTag::OnePlusLR, "1+LR", superposition(3, 5, +1.0)},
      CanonicalState{CanonicalTag::TwoMinusLR, "2-LR", superposition(2, 6, -1.0)},
      CanonicalState{CanonicalTag::TwoPlusLR, "2+LR", superposition(2, 6, +1.0)},
      CanonicalState{CanonicalTag::OneMinusNO, "1-NO", superposition(1, 8, -1.0)},
      CanonicalState{CanonicalTag::OnePlusNO, "1+NO", superposition(1, 8, +1.0)},
      CanonicalState{CanonicalTag::UMinusNO, "U-NO", superposition(0, 7, -1.0)},
      CanonicalState{CanonicalTag::UPlusNO, "U+NO", superposition(0, 7, +1.0)},
      CanonicalState{CanonicalTag::DMinusNO, "D-NO", superposition(4, 9, -1.0)},
      CanonicalState{CanonicalTag::DPlusNO, "D+NO", superposition(4, 9, +1.0)},
  };
}

Mat10 build_sector_projector(bool dual_rail) {
  Mat10 p = Mat10::Zero();
  const auto& basis = enumerate_basis();
  for (int i = 0; i < kFockDim; ++i) {
    const bool is_dual_rail = basis[static_cast<std::size_t>(i)].photons_in(Spatial::L) == 1;
    if (is_dual_rail == dual_rail) p(i, i) = Complex(1.0, 0.0);
  }
  return p;
}

}  // namespace

ElementSpec ElementSpec::beam_splitter() {
  return ElementSpec{ElementKind::BeamSplitter, 0.0, Arm::Both, Polarization::Down};
}

ElementSpec ElementSpec::polarizing_beam_splitter() {
  return ElementSpec{ElementKind::PolarizingBeamSplitter, 0.0, Arm::Both, Polarization::Down};
}

ElementSpec ElementSpec::pips(double theta, Arm arm) {
  return ElementSpec{ElementKind::Pips, normalize_angle(theta), arm, Polarization::Down};
}

ElementSpec ElementSpec::pdps(double theta, Arm arm, Polarization polarization) {
  return ElementSpec{ElementKind::Pdps, normalize_angle(theta), arm, polarization};
}

ElementSpec ElementSpec::polarization_rotator(double alpha, Arm arm) {
  return ElementSpec{ElementKind::PolarizationRotator, normalize_angle(alpha), arm,
                     Polarization::Down};
}

std::string ElementSpec::description() const {
  switch (kind) {
    case ElementKind::BeamSplitter:
      return "BS";
    case ElementKind::PolarizingBeamSplitter:
      return "PBS";
    case ElementKind::Pips:
      return "PIPS(" + format_angle(angle) + ", " + arm_name(arm) + ")";
    case ElementKind::Pdps:
      return "PDPS(" + format_angle(angle) + ", " + arm_name(arm) + ", " +
             polarization_name(polarization) + ")";
    case ElementKind::PolarizationRotator:
      return "PR(" + format_angle(angle) + ", " + arm_name(arm) + ")";
  }
  throw std::logic_error("unknown element kind");
}

SingleParticleUnitary make_element(const ElementSpec& spec) {
  Mat4c m = Mat4c::Zero();
  switch (spec.kind) {
    case ElementKind::BeamSplitter: {
      const double s = 1.0 / std::sqrt(2.0);
      // Polarization preserving; the relative sign sits on the R→R path.
      m(0, 0) = s;  m(0, 2) = s;
      m(1, 1) = s;  m(1, 3) = s;
      m(2, 0) = s;  m(2, 2) = -s;
      m(3, 1) = s;  m(3, 3) = -s;
      break;
    }
    case ElementKind::PolarizingBeamSplitter: {
      // ↑ transmitted, ↓ exchanged between the arms.
      m(mode_index(Spatial::L, Polarization::Up), mode_index(Spatial::L, Polarization::Up)) = 1.0;
      m(mode_index(Spatial::R, Polarization::Up), mode_index(Spatial::R, Polarization::Up)) = 1.0;
      m(mode_index(Spatial::R, Polarization::Down), mode_index(Spatial::L, Polarization::Down)) = 1.0;
      m(mode_index(Spatial::L, Polarization::Down), mode_index(Spatial::R, Polarization::Down)) = 1.0;
      break;
    }
    case ElementKind::Pips: {
      const Complex phase = std::exp(Complex(0.0, spec.angle));
      for (int mode = 0; mode < kModeCount; ++mode) {
        m(mode, mode) = arm_matches(spec.arm, spatial_of(mode)) ? phase : Complex(1.0, 0.0);
      }
      break;
    }
    case ElementKind::Pdps: {
      const Complex phase = std::exp(Complex(0.0, spec.angle));
      for (int mode = 0; mode < kModeCount; ++mode) {
        const bool selected = arm_matches(spec.arm, spatial_of(mode)) &&
                              polarization_of(mode) == spec.polarization;
        m(mode, mode) = selected ? phase : Complex(1.0, 0.0);
      }
      break;
    }
    case ElementKind::PolarizationRotator: {
      const double c = std::cos(spec.angle);
      const double s = std::sin(spec.angle);
      for (const Spatial arm : {Spatial::L, Spatial::R}) {
        const int up = mode_index(arm, Polarization::Up);
        const int dn = mode_index(arm, Polarization::Down);
        if (arm_matches(spec.arm, arm)) {
          m(up, up) = c;  m(up, dn) = -s;
          m(dn, up) = s;  m(dn, dn) = c;
        } else {
          m(up, up) = 1.0;
          m(dn, dn) = 1.0;
        }
      }
      break;
    }
  }
  return SingleParticleUnitary::from_matrix(m);
}

const std::array<CanonicalState, kCanonicalCount>& canonical_states() {
  static const std::array<CanonicalState, kCanonicalCount> states = build_canonical_states();
  return states;
}

const CanonicalState& canonical_state(CanonicalTag tag) {
  return canonical_states()[static_cast<std::size_t>(tag)];
}

std::optional<CanonicalTag> parse_canonical_name(std::string_view name) {
  for (const CanonicalState& s : canonical_states()) {
    if (s.name == name) return s.tag;
  }
  return std::nullopt;
}

const Mat10& dual_rail_projector() {
  static const Mat10 p = build_sector_projector(true);
  return p;
}

const Mat10& one_arm_projector() {
  static const Mat10 p = build_sector_projector(false);
  return p;
}

}  // namespace qdistill
