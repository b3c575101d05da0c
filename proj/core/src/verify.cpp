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

#include "qdistill/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "qdistill/elements.hpp"
#include "qdistill/noise.hpp"
#include "qdistill/po_equivalence.hpp"
#include "qdistill/protocol.hpp"
#include "qdistill/serialize.hpp"

namespace qdistill {

namespace {

// Pinned tolerances.  Exact algebraic identities get 1e-12; the bosonic
// lift table 1e-10; certificate replays 1e-9 (they stack ~10 lifted
// unitaries); Monte Carlo gets 4 binomial standard errors.
constexpr double kTolExact = 1e-12;
constexpr double kTolLift = 1e-10;
constexpr double kTolReplay = 1e-9;
constexpr double kMcStandardErrors = 4.0;
constexpr int kMcTrajectories = 100000;
constexpr std::uint64_t kMcSeed = 20240601;
constexpr double kLiftTimeBudgetSeconds = 1.0;
constexpr double kMcTimeBudgetSeconds = 30.0;
constexpr int kErrorGridPoints = 21;  // ε, ε′ ∈ {0, 0.05, ..., 1}
constexpr int kRecursionRounds = 20;
constexpr int kReproducibilityStates = 50;
constexpr int kRepeatabilityStates = 100;

struct CheckOutcome {
  bool passed = false;
  std::string detail;
};

using CheckBody = std::function<CheckOutcome()>;

CheckResult run_check(int id, const std::string& name, const CheckBody& body) {
  CheckResult result;
  result.id = id;
  result.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    const CheckOutcome outcome = body();
    result.passed = outcome.passed;
    result.detail = outcome.detail;
  } catch (const std::exception& error) {
    result.passed = false;
    result.detail = std::string("exception: ") + error.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string format_error(const char* label, double value) {
  std::ostringstream out;
  out << label << " " << format_double(value);
  return out.str();
}

const Vec10& canonical_vec(CanonicalTag tag) {
  return canonical_state(tag).state.amplitudes();
}

DensityOperator random_full_state(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat10 ginibre;
  for (int r = 0; r < kFockDim; ++r) {
    for (int c = 0; c < kFockDim; ++c) ginibre(r, c) = Complex(normal(rng), normal(rng));
  }
  Mat10 density = ginibre * ginibre.adjoint();
  density /= density.trace().real();
  return DensityOperator::unchecked(std::move(density));
}

std::vector<double> error_grid() {
  std::vector<double> grid;
  grid.reserve(kErrorGridPoints);
  for (int i = 0; i < kErrorGridPoints; ++i) {
    grid.push_back(static_cast<double>(i) / (kErrorGridPoints - 1));
  }
  return grid;
}

// --- 1. The beam splitter's two-photon action table and involution.
CheckOutcome check_beam_splitter_table() {
  const auto start = std::chrono::steady_clock::now();
  const TwoPhotonUnitary bs = lift_unitary(make_element(ElementSpec::beam_splitter()));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  double worst = 0.0;
  const auto expect = [&](CanonicalTag in, const Vec10& out) {
    worst = std::max(worst, (bs.apply(canonical_vec(in)) - out).cwiseAbs().maxCoeff());
  };
  expect(CanonicalTag::OneMinusLR, (-canonical_vec(CanonicalTag::OneMinusLR)).eval());
  expect(CanonicalTag::OnePlusLR, canonical_vec(CanonicalTag::OneMinusNO));
  expect(CanonicalTag::TwoMinusLR,
         (inv_sqrt2 * (canonical_vec(CanonicalTag::UMinusNO) -
                       canonical_vec(CanonicalTag::DMinusNO))).eval());
  expect(CanonicalTag::TwoPlusLR,
         (inv_sqrt2 * (canonical_vec(CanonicalTag::UMinusNO) +
                       canonical_vec(CanonicalTag::DMinusNO))).eval());

  // Applying the beam splitter twice is the identity on the whole sector.
  const double involution =
      (bs.matrix() * bs.matrix() - Mat10::Identity()).cwiseAbs().maxCoeff();
  worst = std::max(worst, involution);

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool passed = worst <= kTolLift && seconds < kLiftTimeBudgetSeconds;
  return CheckOutcome{passed, format_error("max |deviation| =", worst)};
}

// --- 2. One depolarizing round against its closed-form states.
CheckOutcome check_round_closed_form() {
  std::mt19937_64 rng(7);
  const DensityOperator input = random_dual_rail_state(rng);
  const TwoPhotonUnitary bs = lift_unitary(make_element(ElementSpec::beam_splitter()));

  const DensityOperator rho_dep = depolarize(input);
  const DensityOperator rho_bs = apply_unitary(rho_dep, bs);

  const auto projector = [](CanonicalTag tag) {
    return DensityOperator::from_pure(canonical_state(tag).state).matrix();
  };
  const Mat10 rho_no_closed = (projector(CanonicalTag::OneMinusNO) +
                               projector(CanonicalTag::UMinusNO) +
                               projector(CanonicalTag::DMinusNO)) / 3.0;
  const Mat10 rho_bs_closed =
      0.25 * projector(CanonicalTag::OneMinusLR) + 0.75 * rho_no_closed;
  const Mat10 xi_lr_closed = (projector(CanonicalTag::OnePlusLR) +
                              projector(CanonicalTag::TwoPlusLR) +
                              projector(CanonicalTag::TwoMinusLR)) / 3.0;

  double worst = trace_distance(rho_dep, DensityOperator::unchecked(dual_rail_projector() / 4.0));
  worst = std::max(worst, trace_distance(rho_bs, DensityOperator::unchecked(rho_bs_closed)));

  const ProtocolStates states = build_protocol_states();
  worst = std::max(worst, trace_distance(states.rho_bs, DensityOperator::unchecked(rho_bs_closed)));
  worst = std::max(worst, trace_distance(states.rho_no, DensityOperator::unchecked(rho_no_closed)));
  worst = std::max(worst, trace_distance(states.xi_lr, DensityOperator::unchecked(xi_lr_closed)));

  return CheckOutcome{worst <= kTolExact, format_error("max trace distance =", worst)};
}

// --- 3. Cumulative success probabilities against the closed forms.
CheckOutcome check_success_recursion() {
  double worst = 0.0;

  ProtocolConfig depolarizing;
  depolarizing.variant = Variant::Depolarizing;
  depolarizing.iterations = kRecursionRounds;
  depolarizing.seed = 11;
  const ProtocolResult dep_result = run_exact(depolarizing);
  for (const IterationStats& stats : dep_result.per_iteration) {
    const double expected = 1.0 - std::pow(0.75, stats.iteration);
    worst = std::max(worst, std::abs(stats.cumulative_success - expected));
  }
  worst = std::max(worst, std::abs(dep_result.per_iteration.at(1).cumulative_success - 0.4375));

  ProtocolConfig damping;
  damping.variant = Variant::AmplitudeDamping;
  damping.gamma = 1.0;
  damping.iterations = kRecursionRounds;
  damping.seed = 11;
  const ProtocolResult ad_result = run_exact(damping);
  for (const IterationStats& stats : ad_result.per_iteration) {
    const double expected = 1.0 - std::pow(0.5, stats.iteration);
    worst = std::max(worst, std::abs(stats.cumulative_success - expected));
  }

  return CheckOutcome{worst <= kTolExact, format_error("max |Δcumulative| =", worst)};
}

// --- 4. Faulty-detector reported-odd probability on the round state.
CheckOutcome check_detector_probability_law() {
  const ProtocolStates states = build_protocol_states();
  const std::vector<double> grid = error_grid();
  double worst = 0.0;
  for (const double eps : grid) {
    for (const double eps_prime : grid) {
      const ParityMeasurement measurement =
          measure_parity(states.rho_bs, DetectorSpec{Spatial::L, eps, eps_prime});
      const double expected = (1.0 - eps) / 4.0 + 3.0 * eps_prime / 4.0;
      worst = std::max(worst, std::abs(measurement.odd.probability - expected));
      worst = std::max(worst,
                       std::abs(measurement.odd.probability + measurement.even.probability - 1.0));
    }
  }
  return CheckOutcome{worst <= kTolExact, format_error("max |Δp| =", worst)};
}

// --- 5. Concurrence of the reported-odd state across the error grid.
CheckOutcome check_detector_concurrence_law() {
  const ProtocolStates states = build_protocol_states();
  const std::vector<double> grid = error_grid();
  double worst = 0.0;
  for (const double eps : grid) {
    for (const double eps_prime : grid) {
      if (eps == 1.0 && eps_prime == 0.0) continue;  // reported-odd branch is empty
      const ParityMeasurement measurement =
          measure_parity(states.rho_bs, DetectorSpec{Spatial::L, eps, eps_prime});
      if (!measurement.odd.post_state) return CheckOutcome{false, "missing odd post state"};
      const double concurrence = polarization_concurrence(*measurement.odd.post_state);
      const double expected = (1.0 - eps) / (1.0 - eps + 3.0 * eps_prime);
      worst = std::max(worst, std::abs(concurrence - expected));
    }
  }
  return CheckOutcome{worst <= kTolExact, format_error("max |ΔC| =", worst)};
}

// --- 6. Monte Carlo agrees with the exact round probability.
CheckOutcome check_monte_carlo_consistency() {
  const auto start = std::chrono::steady_clock::now();
  ProtocolConfig config;
  config.variant = Variant::Depolarizing;
  config.mode = RunMode::MonteCarlo;
  config.iterations = 1;
  config.trajectories = kMcTrajectories;
  config.seed = kMcSeed;
  const ProtocolResult result = run_trajectories(config);
  const double empirical = result.per_iteration.at(0).cumulative_success;
  const double expected = 0.25;
  const double standard_error = std::sqrt(expected * (1.0 - expected) / kMcTrajectories);
  const double deviation = std::abs(empirical - expected);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const bool passed = deviation <= kMcStandardErrors * standard_error &&
                      seconds < kMcTimeBudgetSeconds;
  std::ostringstream detail;
  detail << "deviation = " << format_double(deviation) << " ("
         << format_double(deviation / standard_error) << " SE, "
         << format_double(seconds) << " s)";
  return CheckOutcome{passed, detail.str()};
}

// --- 7. The collected result is bitwise independent of the initial state.
CheckOutcome check_bitwise_reproducibility() {
  std::string reference;
  for (int i = 0; i < kReproducibilityStates; ++i) {
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(i));
    DensityOperator initial = random_dual_rail_state(rng);
    // Scramble with extra local polarization noise; the round reset must
    // erase this too.
    initial = apply_local_channel(initial, QubitChannel::amplitude_damping(0.3), Spatial::L);
    initial = depolarize_mc(initial, rng);

    ProtocolConfig config;
    config.variant = Variant::Depolarizing;
    config.iterations = 5;
    config.seed = 42;
    config.initial_state = initial;
    const ProtocolResult result = run_exact(config);
    const std::string serialized = canonical_dump(to_json(result));
    if (i == 0) {
      reference = serialized;
    } else if (serialized != reference) {
      return CheckOutcome{false, "serialization diverged at state " + std::to_string(i)};
    }
  }
  return CheckOutcome{true,
                      std::to_string(kReproducibilityStates) + " identical serializations"};
}

// --- 8. Passive optics connects exactly the same-rank pairs.
CheckOutcome check_passive_optics_partition() {
  const auto& states = canonical_states();

  // The amplitude-matrix rank splits the canonical states 6 / 4.
  for (const CanonicalState& state : states) {
    const bool one_arm_pair =
        state.tag == CanonicalTag::UMinusNO || state.tag == CanonicalTag::UPlusNO ||
        state.tag == CanonicalTag::DMinusNO || state.tag == CanonicalTag::DPlusNO;
    const SetLabel expected = one_arm_pair ? SetLabel::Rank2 : SetLabel::Rank4;
    if (classify_set(state.state) != expected) {
      return CheckOutcome{false, state.name + ": unexpected amplitude-matrix rank"};
    }
  }

  std::size_t longest = 0;
  for (const CanonicalState& source : states) {
    for (const CanonicalState& target : states) {
      if (source.tag == target.tag) continue;
      const bool same_family = classify_set(source.state) == classify_set(target.state);
      const std::optional<PathCertificate> path = find_po_path(source.tag, target.tag);
      if (same_family != path.has_value()) {
        return CheckOutcome{false, source.name + " -> " + target.name +
                                       (same_family ? ": no path found" : ": spurious path")};
      }
      if (!path) continue;
      longest = std::max(longest, path->steps.size());
      if (path->success_probability != 1.0) {
        return CheckOutcome{false, source.name + " -> " + target.name + ": lossy pure-PO path"};
      }
      const ReplayResult replay = replay_certificate(*path);
      const double overlap = std::abs(
          replay.final_state.amplitudes().dot(target.state.amplitudes()));
      if (std::abs(overlap - 1.0) > kTolReplay) {
        return CheckOutcome{false, source.name + " -> " + target.name + ": replay overlap " +
                                       format_double(overlap)};
      }
    }
  }

  // The reachable orbit of the singlet stays inside the rank-4 family.
  const std::vector<PureState> closure = po_closure(CanonicalTag::OneMinusLR);
  for (const PureState& state : closure) {
    if (classify_set(state) != SetLabel::Rank4) {
      return CheckOutcome{false, "rank change inside the singlet orbit"};
    }
  }

  std::ostringstream detail;
  detail << "orbit size " << closure.size() << ", longest path " << longest;
  return CheckOutcome{true, detail.str()};
}

// --- 9. Detector-assisted bridges cross the families at probability 1/2.
CheckOutcome check_detector_bridges() {
  const auto& states = canonical_states();
  double worst_probability = 0.0;
  for (const CanonicalState& source : states) {
    for (const CanonicalState& target : states) {
      if (classify_set(source.state) == classify_set(target.state)) continue;
      const PathCertificate bridge = find_bridge_path(source.tag, target.tag);
      const ReplayResult replay = replay_certificate(bridge);
      const double overlap = std::abs(
          replay.final_state.amplitudes().dot(target.state.amplitudes()));
      if (std::abs(overlap - 1.0) > kTolReplay) {
        return CheckOutcome{false, source.name + " -> " + target.name + ": replay overlap " +
                                       format_double(overlap)};
      }
      worst_probability =
          std::max(worst_probability, std::abs(bridge.success_probability - 0.5));
      worst_probability =
          std::max(worst_probability, std::abs(replay.probability - 0.5));
    }
  }
  return CheckOutcome{worst_probability <= kTolExact,
                      format_error("max |p - 1/2| =", worst_probability)};
}

// --- 10. The ideal parity check is repeatable and non-demolition.
CheckOutcome check_qnd_repeatability() {
  double worst = 0.0;
  for (int i = 0; i < kRepeatabilityStates; ++i) {
    std::mt19937_64 rng(5000 + static_cast<std::uint64_t>(i));
    const DensityOperator rho = random_full_state(rng);
    const ParityMeasurement first = measure_parity(rho, DetectorSpec{});
    for (const MeasurementBranch* branch : {&first.odd, &first.even}) {
      if (!branch->post_state) continue;
      const ParityMeasurement second = measure_parity(*branch->post_state, DetectorSpec{});
      const MeasurementBranch& same =
          branch->reported == Parity::Odd ? second.odd : second.even;
      worst = std::max(worst, std::abs(same.probability - 1.0));
      if (!same.post_state) return CheckOutcome{false, "repeat branch lost its state"};
      worst = std::max(worst, trace_distance(*branch->post_state, *same.post_state));
    }
  }
  return CheckOutcome{worst <= kTolExact, format_error("max repeat deviation =", worst)};
}

}  // namespace

std::vector<CheckResult> run_acceptance_checks() {
  std::vector<CheckResult> results;
  results.push_back(run_check(1, "beam-splitter action table", check_beam_splitter_table));
  results.push_back(run_check(2, "one-round closed form", check_round_closed_form));
  results.push_back(run_check(3, "success-probability recursion", check_success_recursion));
  results.push_back(run_check(4, "detector probability law", check_detector_probability_law));
  results.push_back(run_check(5, "detector concurrence law", check_detector_concurrence_law));
  results.push_back(run_check(6, "monte-carlo consistency", check_monte_carlo_consistency));
  results.push_back(run_check(7, "bitwise reproducibility", check_bitwise_reproducibility));
  results.push_back(run_check(8, "passive-optics partition", check_passive_optics_partition));
  results.push_back(run_check(9, "detector-assisted bridges", check_detector_bridges));
  results.push_back(run_check(10, "non-demolition repeatability", check_qnd_repeatability));
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& result : results) {
    if (!result.passed) return false;
  }
  return true;
}

}  // namespace qdistill
