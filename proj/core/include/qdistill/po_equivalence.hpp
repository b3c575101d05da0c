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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qdistill/detector.hpp"
#include "qdistill/elements.hpp"
#include "qdistill/fock.hpp"

/// Reachability between canonical states under passive optics.
///
/// The symmetric mode-pair amplitude matrix M of a two-photon pure state
/// transforms as M ↦ u M uᵀ under a single-particle unitary u, so rank(M)
/// is invariant under every passive element.  The ten canonical states
/// split into two families: the six rank-4 states (the four dual-rail
/// parity states and the two one-arm pair states 1±) and the four rank-2
/// states (U±, D±).  Passive optics alone never crosses between families;
/// with the non-absorbing parity detector a conditional crossing succeeds
/// with probability 1/2.
namespace qdistill {

/// Amplitude-matrix rank class of a pure state.
enum class SetLabel { Rank4, Rank2, Other };

std::string set_label_name(SetLabel label);

SetLabel classify_set(const PureState& psi);

/// The fixed generator set used by the path search, in search order:
///   BS, PDPS(π, L, ↓), PDPS(π, R, ↓), PIPS(π/2, L), PIPS(π/2, R),
///   PR(π/2, L), PR(π/2, R), PR(π/2, both).
/// Every generator's inverse is a word in the set, so reachability is
/// symmetric.  The two PDPS(π) entries flip the sign of the ↓ mode of one
/// arm — the local polarization phase that exchanges the ∓ partners within
/// a family.  No polarization-independent phase can do that: both branches
/// of a ∓ pair share the same spatial occupation, so an arm-wide phase acts
/// as a global phase on the pair.
const std::vector<ElementSpec>& po_gate_set();

/// One conditional detector step inside a conversion recipe: which parity
/// check, the outcome kept, and that outcome's probability at that point.
struct DetectorAction {
  enum class Kind { ArmParity, PolarizedParity };
  Kind kind = Kind::ArmParity;
  Spatial arm = Spatial::L;
  Polarization polarization = Polarization::Up;  // PolarizedParity only
  Parity outcome = Parity::Odd;
  double probability = 1.0;

  std::string description() const;
};

using PathStep = std::variant<ElementSpec, DetectorAction>;

std::string path_step_description(const PathStep& step);

/// A replayable conversion recipe from one canonical state to another.
struct PathCertificate {
  CanonicalTag source = CanonicalTag::OneMinusLR;
  CanonicalTag target = CanonicalTag::OneMinusLR;
  std::vector<PathStep> steps;

  /// Product of the detector-branch probabilities (1 for pure PO paths).
  double success_probability = 1.0;
};

/// Breadth-first search over po_gate_set() words, shortest path first with
/// ties broken by generator order.  States are deduplicated up to global
/// phase (first nonzero amplitude rotated positive real, amplitudes rounded
/// to 1e-6).  Returns nothing when the target is not reachable within
/// max_depth elements — in particular for any pair that crosses families.
std::optional<PathCertificate> find_po_path(CanonicalTag source, CanonicalTag target,
                                            int max_depth = 8);

/// A family-crossing recipe: passive elements plus ideal non-absorbing
/// parity checks, conditioned branch by branch.  Throws
/// std::invalid_argument when source and target are in the same family
/// (use find_po_path) and std::runtime_error if a leg cannot be routed
/// within max_depth.
PathCertificate find_bridge_path(CanonicalTag source, CanonicalTag target, int max_depth = 8);

struct ReplayResult {
  PureState final_state;
  double probability = 1.0;  ///< Product of detector-branch probabilities.
};

/// Replays a certificate from its source state: elements act unitarily,
/// detector steps project onto the recorded outcome and renormalize.
ReplayResult replay_certificate(const PathCertificate& certificate);

/// All states reachable from `start` through po_gate_set() words of length
/// ≤ max_depth, deduplicated up to global phase (the BFS orbit).
std::vector<PureState> po_closure(CanonicalTag start, int max_depth = 8);

}  // namespace qdistill
