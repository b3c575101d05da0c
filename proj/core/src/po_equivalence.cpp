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

#include "qdistill/po_equivalence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qdistill {

namespace {

constexpr double kPhasePivotTol = 1e-7;
constexpr double kKeyResolution = 1e6;  // amplitudes rounded to 1e-6
constexpr double kTargetOverlapTol = 1e-9;
constexpr std::size_t kSearchNodeCap = 1 << 20;

/// Global-phase-canonical fixed-point key of a state vector.
using StateKey = std::array<std::int64_t, 2 * kFockDim>;

struct StateKeyHash {
  std::size_t operator()(const StateKey& key) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (const std::int64_t value : key) {
      h ^= static_cast<std::size_t>(value);
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

StateKey canonical_key(const Vec10& v) {
  int pivot = -1;
  for (int i = 0; i < kFockDim; ++i) {
    if (std::abs(v(i)) > kPhasePivotTol) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) throw std::logic_error("cannot phase-canonicalize a zero vector");
  const Complex phase = v(pivot) / std::abs(v(pivot));
  StateKey key{};
  for (int i = 0; i < kFockDim; ++i) {
    const Complex w = v(i) * std::conj(phase);
    key[static_cast<std::size_t>(2 * i)] = std::llround(w.real() * kKeyResolution);
    key[static_cast<std::size_t>(2 * i + 1)] = std::llround(w.imag() * kKeyResolution);
  }
  return key;
}

const std::vector<TwoPhotonUnitary>& gate_lifts() {
  static const std::vector<TwoPhotonUnitary> lifts = [] {
    std::vector<TwoPhotonUnitary> result;
    result.reserve(po_gate_set().size());
    for (const ElementSpec& spec : po_gate_set()) {
      result.push_back(lift_unitary(make_element(spec)));
    }
    return result;
  }();
  return lifts;
}

struct SearchNode {
  Vec10 state;
  int parent = -1;
  int gate = -1;
  int depth = 0;
};

/// BFS from `start`; returns the node list and a map from key to node index.
/// Stops early when `goal` (if given) is dequeued-expanded... goal is tested
/// on generation so the first hit is the shortest, lexicographically first.
std::vector<SearchNode> breadth_first_orbit(const Vec10& start, int max_depth,
                                            const StateKey* goal, int* goal_index) {
  std::vector<SearchNode> nodes;
  std::unordered_map<StateKey, int, StateKeyHash> seen;
  nodes.push_back(SearchNode{start, -1, -1, 0});
  seen.emplace(canonical_key(start), 0);
  if (goal_index) *goal_index = -1;
  if (goal && canonical_key(start) == *goal) {
    if (goal_index) *goal_index = 0;
    return nodes;
  }

  std::deque<int> frontier{0};
  const auto& lifts = gate_lifts();
  while (!frontier.empty()) {
    const int current = frontier.front();
    frontier.pop_front();
    if (nodes[static_cast<std::size_t>(current)].depth >= max_depth) continue;
    for (int g = 0; g < static_cast<int>(lifts.size()); ++g) {
      const Vec10 next = lifts[static_cast<std::size_t>(g)].apply(
          nodes[static_cast<std::size_t>(current)].state);
      const StateKey key = canonical_key(next);
      if (seen.contains(key)) continue;
      const int index = static_cast<int>(nodes.size());
      if (nodes.size() >= kSearchNodeCap) {
        throw std::runtime_error("path search exceeded its node budget");
      }
      nodes.push_back(SearchNode{next, current,
                                 g, nodes[static_cast<std::size_t>(current)].depth + 1});
      seen.emplace(key, index);
      if (goal && key == *goal) {
        if (goal_index) *goal_index = index;
        return nodes;
      }
      frontier.push_back(index);
    }
  }
  return nodes;
}

std::vector<PathStep> unwind_steps(const std::vector<SearchNode>& nodes, int leaf) {
  std::vector<PathStep> steps;
  for (int at = leaf; at >= 0 && nodes[static_cast<std::size_t>(at)].gate >= 0;
       at = nodes[static_cast<std::size_t>(at)].parent) {
    steps.push_back(po_gate_set()[static_cast<std::size_t>(nodes[static_cast<std::size_t>(at)].gate)]);
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

/// Crossing recipes between the rank families, expressed as step templates.
/// Probabilities are filled in by replaying.
std::vector<PathStep> crossing_steps_rank4_to_rank2(Parity branch) {
  return {
      DetectorAction{DetectorAction::Kind::PolarizedParity, Spatial::L, Polarization::Up,
                     branch, 0.0},
      ElementSpec::beam_splitter(),
  };
}

std::vector<PathStep> crossing_steps_rank2_to_rank4(Parity branch) {
  return {
      ElementSpec::beam_splitter(),
      ElementSpec::polarization_rotator(std::numbers::pi / 2.0, Arm::R),
      ElementSpec::beam_splitter(),
      DetectorAction{DetectorAction::Kind::ArmParity, Spatial::L, Polarization::Up, branch, 0.0},
  };
}

/// Landing state of each crossing branch.
CanonicalTag crossing_landing_rank4_to_rank2(Parity branch) {
  return branch == Parity::Odd ? CanonicalTag::UMinusNO : CanonicalTag::DMinusNO;
}

CanonicalTag crossing_landing_rank2_to_rank4(Parity branch) {
  return branch == Parity::Odd ? CanonicalTag::OneMinusLR : CanonicalTag::OneMinusNO;
}

/// Replays the certificate once to stamp each detector action's branch
/// probability, and checks that the final state matches the declared target
/// up to global phase.
void seal_certificate(PathCertificate& certificate) {
  PureState state = canonical_state(certificate.source).state;
  double probability = 1.0;
  for (PathStep& step : certificate.steps) {
    if (const ElementSpec* element = std::get_if<ElementSpec>(&step)) {
      state = lift_unitary(make_element(*element)).apply(state);
      continue;
    }
    DetectorAction& action = std::get<DetectorAction>(step);
    const Mat10 projector =
        action.kind == DetectorAction::Kind::ArmParity
            ? parity_projector(action.outcome)
            : polarized_parity_projector(action.arm, action.polarization, action.outcome);
    const Vec10 projected = projector * state.amplitudes();
    const double branch_probability = projected.squaredNorm();
    action.probability = branch_probability;
    probability *= branch_probability;
    state = PureState::normalized(projected);
  }
  certificate.success_probability = probability;
  const double overlap = std::abs(
      state.amplitudes().dot(canonical_state(certificate.target).state.amplitudes()));
  if (std::abs(overlap - 1.0) > kTargetOverlapTol) {
    throw std::logic_error("certificate replay does not reach its target state");
  }
}

}  // namespace

std::string set_label_name(SetLabel label) {
  switch (label) {
    case SetLabel::Rank4: return "rank-4";
    case SetLabel::Rank2: return "rank-2";
    case SetLabel::Other: return "other";
  }
  throw std::logic_error("unknown set label");
}

SetLabel classify_set(const PureState& psi) {
  switch (matrix_rank(amplitude_matrix(psi))) {
    case 4: return SetLabel::Rank4;
    case 2: return SetLabel::Rank2;
    default: return SetLabel::Other;
  }
}

const std::vector<ElementSpec>& po_gate_set() {
  static const std::vector<ElementSpec> gates = {
      ElementSpec::beam_splitter(),
      ElementSpec::pdps(std::numbers::pi, Arm::L, Polarization::Down),
      ElementSpec::pdps(std::numbers::pi, Arm::R, Polarization::Down),
      ElementSpec::pips(std::numbers::pi / 2.0, Arm::L),
      ElementSpec::pips(std::numbers::pi / 2.0, Arm::R),
      ElementSpec::polarization_rotator(std::numbers::pi / 2.0, Arm::L),
      ElementSpec::polarization_rotator(std::numbers::pi / 2.0, Arm::R),
      ElementSpec::polarization_rotator(std::numbers::pi / 2.0, Arm::Both),
  };
  return gates;
}

std::string DetectorAction::description() const {
  std::ostringstream out;
  if (kind == Kind::ArmParity) {
    out << "parity(" << (arm == Spatial::L ? "L" : "R") << ")";
  } else {
    out << "parity(" << (arm == Spatial::L ? "L" : "R") << ", "
        << (polarization == Polarization::Up ? "up" : "dn") << ")";
  }
  out << "=" << parity_name(outcome);
  out.precision(6);
  out << " [p=" << std::fixed << probability << "]";
  return out.str();
}

std::string path_step_description(const PathStep& step) {
  if (const ElementSpec* element = std::get_if<ElementSpec>(&step)) {
    return element->description();
  }
  return std::get<DetectorAction>(step).description();
}

std::optional<PathCertificate> find_po_path(CanonicalTag source, CanonicalTag target,
                                            int max_depth) {
  if (max_depth < 0) throw std::invalid_argument("max_depth must be nonnegative");
  const Vec10& start = canonical_state(source).state.amplitudes();
  const StateKey goal = canonical_key(canonical_state(target).state.amplitudes());
  int goal_index = -1;
  const std::vector<SearchNode> nodes = breadth_first_orbit(start, max_depth, &goal, &goal_index);
  if (goal_index < 0) return std::nullopt;

  PathCertificate certificate;
  certificate.source = source;
  certificate.target = target;
  certificate.steps = unwind_steps(nodes, goal_index);
  seal_certificate(certificate);
  return certificate;
}

PathCertificate find_bridge_path(CanonicalTag source, CanonicalTag target, int max_depth) {
  const SetLabel from = classify_set(canonical_state(source).state);
  const SetLabel to = classify_set(canonical_state(target).state);
  if (from == to) {
    throw std::invalid_argument(
        "source and target are in the same passive-optics family; use find_po_path");
  }

  const bool forward = from == SetLabel::Rank4;  // rank-4 → rank-2
  const CanonicalTag crossing_source =
      forward ? CanonicalTag::TwoPlusLR : CanonicalTag::UMinusNO;

  const std::optional<PathCertificate> head = find_po_path(source, crossing_source, max_depth);
  if (!head) throw std::runtime_error("no route to the family-crossing state");

  std::optional<PathCertificate> best;
  for (const Parity branch : {Parity::Odd, Parity::Even}) {
    const CanonicalTag landing = forward ? crossing_landing_rank4_to_rank2(branch)
                                         : crossing_landing_rank2_to_rank4(branch);
    const std::optional<PathCertificate> tail = find_po_path(landing, target, max_depth);
    if (!tail) continue;

    PathCertificate candidate;
    candidate.source = source;
    candidate.target = target;
    candidate.steps = head->steps;
    const std::vector<PathStep> crossing = forward ? crossing_steps_rank4_to_rank2(branch)
                                                   : crossing_steps_rank2_to_rank4(branch);
    candidate.steps.insert(candidate.steps.end(), crossing.begin(), crossing.end());
    candidate.steps.insert(candidate.steps.end(), tail->steps.begin(), tail->steps.end());
    seal_certificate(candidate);
    if (!best || candidate.steps.size() < best->steps.size()) {
      best = std::move(candidate);
    }
  }
  if (!best) throw std::runtime_error("no route from the family-crossing state to the target");
  return *best;
}

ReplayResult replay_certificate(const PathCertificate& certificate) {
  PureState state = canonical_state(certificate.source).state;
  double probability = 1.0;
  for (const PathStep& step : certificate.steps) {
    if (const ElementSpec* element = std::get_if<ElementSpec>(&step)) {
      state = lift_unitary(make_element(*element)).apply(state);
      continue;
    }
    const DetectorAction& action = std::get<DetectorAction>(step);
    const Mat10 projector =
        action.kind == DetectorAction::Kind::ArmParity
            ? parity_projector(action.outcome)
            : polarized_parity_projector(action.arm, action.polarization, action.outcome);
    const Vec10 projected = projector * state.amplitudes();
    const double branch_probability = projected.squaredNorm();
    if (branch_probability < 1e-12) {
      throw std::runtime_error("certificate conditions on a zero-probability branch");
    }
    probability *= branch_probability;
    state = PureState::normalized(projected);
  }
  return ReplayResult{std::move(state), probability};
}

std::vector<PureState> po_closure(CanonicalTag start, int max_depth) {
  const std::vector<SearchNode> nodes =
      breadth_first_orbit(canonical_state(start).state.amplitudes(), max_depth, nullptr, nullptr);
  std::vector<PureState> closure;
  closure.reserve(nodes.size());
  for (const SearchNode& node : nodes) {
    closure.push_back(PureState::normalized(node.state));
  }
  return closure;
}

}  // namespace qdistill
