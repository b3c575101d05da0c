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

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "qdistill/fock.hpp"

/// Passive linear-optical elements and the canonical two-photon states.
namespace qdistill {

enum class ElementKind {
  BeamSplitter,            ///< 50:50, polarization preserving, between L and R.
  PolarizingBeamSplitter,  ///< ↑ transmitted, ↓ exchanged between L and R.
  Pips,                    ///< Polarization-independent phase shift on one arm.
  Pdps,                    ///< Polarization-dependent phase shift on one mode.
  PolarizationRotator,     ///< Rotation by α in the (↑,↓) plane of one arm.
};

/// Which spatial arm(s) an element acts on.  BeamSplitter and
/// PolarizingBeamSplitter always couple both arms and ignore this field.
enum class Arm { L, R, Both };

/// A parameterized element.  Use the factory helpers; angles are stored
/// normalized to [0, 2π).
struct ElementSpec {
  ElementKind kind = ElementKind::BeamSplitter;
  double angle = 0.0;
  Arm arm = Arm::Both;
  Polarization polarization = Polarization::Down;  // Pdps target mode only

  static ElementSpec beam_splitter();
  static ElementSpec polarizing_beam_splitter();
  static ElementSpec pips(double theta, Arm arm);
  static ElementSpec pdps(double theta, Arm arm, Polarization polarization);
  static ElementSpec polarization_rotator(double alpha, Arm arm);

  /// Short human-readable form, e.g. "BS", "PDPS(3.141593, L, dn)".
  std::string description() const;

  friend bool operator==(const ElementSpec&, const ElementSpec&) = default;
};

/// The 4×4 mode-space matrix of an element.
///
/// Conventions (modes ordered L↑, L↓, R↑, R↓):
///  - beam splitter: (1/√2)·[[1,0,1,0],[0,1,0,1],[1,0,−1,0],[0,1,0,−1]] —
///    polarization preserving, symmetric 50:50 with the sign on R→R;
///  - polarizing beam splitter: ↑ modes pass through, ↓ modes swap arms;
///  - PIPS(θ, arm): phase e^{iθ} on both polarizations of the arm;
///  - PDPS(θ, arm, pol): phase e^{iθ} on the single selected mode;
///  - PR(α, arm): [[cos α, −sin α],[sin α, cos α]] on (↑,↓) of the arm.
SingleParticleUnitary make_element(const ElementSpec& spec);

/// The ten named two-photon states used throughout: four dual-rail parity
/// states and six one-arm states.
enum class CanonicalTag {
  OneMinusLR,   ///< (|↑↓⟩ − |↓↑⟩)/√2, the singlet
  OnePlusLR,    ///< (|↑↓⟩ + |↓↑⟩)/√2
  TwoMinusLR,   ///< (|↑↑⟩ − |↓↓⟩)/√2
  TwoPlusLR,    ///< (|↑↑⟩ + |↓↓⟩)/√2
  OneMinusNO,   ///< (|L↑L↓⟩ − |R↑R↓⟩)/√2
  OnePlusNO,    ///< (|L↑L↓⟩ + |R↑R↓⟩)/√2
  UMinusNO,     ///< (|L↑L↑⟩ − |R↑R↑⟩)/√2, both photons ↑
  UPlusNO,      ///< (|L↑L↑⟩ + |R↑R↑⟩)/√2
  DMinusNO,     ///< (|L↓L↓⟩ − |R↓R↓⟩)/√2, both photons ↓
  DPlusNO,      ///< (|L↓L↓⟩ + |R↓R↓⟩)/√2
};

inline constexpr int kCanonicalCount = 10;

struct CanonicalState {
  CanonicalTag tag;
  std::string name;  ///< CLI name: 1-LR, 1+LR, 2-LR, 2+LR, 1-NO, ..., D+NO
  PureState state;
};

/// All canonical states in tag order.  Process-lifetime constant.
const std::array<CanonicalState, kCanonicalCount>& canonical_states();

const CanonicalState& canonical_state(CanonicalTag tag);

/// Parses a CLI name such as "1-LR" or "U+NO"; empty if unknown.
std::optional<CanonicalTag> parse_canonical_name(std::string_view name);

/// Projector onto the dual-rail (one photon per arm) subspace.
const Mat10& dual_rail_projector();

/// Projector onto the one-arm (two photons in the same arm) subspace.
const Mat10& one_arm_projector();

}  // namespace qdistill
