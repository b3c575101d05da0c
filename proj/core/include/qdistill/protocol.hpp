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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qdistill/detector.hpp"
#include "qdistill/fock.hpp"

/// The repeat-until-success singlet preparation protocol.
///
/// One round on a dual-rail state:
///   1. reset — the variant's noise makes the round's input independent of
///      history (full depolarizing of both polarization qubits, or amplitude
///      damping of both arms followed by a π/2 polarization rotation on L);
///   2. beam splitter;
///   3. arm-parity check.  Reported odd ⇒ success: the state is collected.
///      Reported even ⇒ apply the beam splitter again (it is its own
///      inverse, returning the state to the dual-rail sector) and repeat.
///
/// The exact engine propagates the full density operator and conditions on
/// the even branch; the Monte Carlo engine samples one measurement record
/// per trajectory.  Both engines are deterministic functions of the seed;
/// trajectory t draws from an independent stream seeded by (seed, t), and
/// results are aggregated in trajectory-index order, so the outcome does not
/// depend on how trajectories are scheduled.
namespace qdistill {

enum class Variant { Depolarizing, AmplitudeDamping };
enum class RunMode { Exact, MonteCarlo };

std::string variant_name(Variant v);
std::string run_mode_name(RunMode m);
std::optional<Variant> parse_variant(const std::string& name);
std::optional<RunMode> parse_run_mode(const std::string& name);

struct ProtocolConfig {
  Variant variant = Variant::Depolarizing;
  RunMode mode = RunMode::Exact;
  int iterations = 1;           ///< Maximum number of rounds, ≥ 1.
  double gamma = 1.0;           ///< Damping strength (amplitude-damping variant).
  int trajectories = 10000;     ///< Monte Carlo sample count, ≥ 1.
  std::uint64_t seed = 0;
  DetectorSpec detector;

  /// Round-1 input; a Haar-like random dual-rail mixed state derived from
  /// the seed when absent.  Must be supported on the dual-rail sector.
  std::optional<DensityOperator> initial_state;

  void validate() const;
};

struct IterationStats {
  int iteration = 0;              ///< 1-based round number.
  double round_success = 0.0;     ///< P(reported odd | reached this round).
  double cumulative_success = 0.0;///< P(succeeded in some round ≤ this one).
};

struct TrajectoryRound {
  int iteration = 0;
  Parity true_parity = Parity::Even;
  Parity reported = Parity::Even;
};

struct TrajectoryLog {
  int success_round = 0;  ///< 0 when the trajectory never reported odd.
  std::vector<TrajectoryRound> rounds;
};

struct ProtocolResult {
  std::vector<IterationStats> per_iteration;

  /// Collected output: the success-probability-weighted mixture of the
  /// reported-odd post states (exact), or the average over succeeding
  /// trajectories (Monte Carlo).  Absent if success never occurred.
  std::optional<DensityOperator> final_state;

  double singlet_fidelity = 0.0;  ///< Overlap of final_state with the singlet.
  double concurrence = 0.0;       ///< Polarization concurrence of final_state.

  std::vector<TrajectoryLog> trajectory_logs;  ///< Monte Carlo mode only.
};

/// Exact density-operator run.
ProtocolResult run_exact(const ProtocolConfig& config);

/// Monte Carlo run; requires config.mode == RunMode::MonteCarlo.
ProtocolResult run_trajectories(const ProtocolConfig& config);

/// Dispatches on config.mode.
ProtocolResult run_protocol(const ProtocolConfig& config);

/// Wootters concurrence evaluated directly on the (subnormalized) dual-rail
/// polarization block: λ_i are the decreasing square roots of the
/// eigenvalues of B(σy⊗σy)B*(σy⊗σy) for the 4×4 block B, and the result is
/// max(0, λ₁−λ₂−λ₃−λ₄).  Population outside the dual-rail sector enters
/// only as a trace deficit of B, so it scales the concurrence down.
/// Returns 0 when the dual-rail weight is below 1e-12.
double polarization_concurrence(const DensityOperator& rho);

/// The closed-form states of one ideal depolarizing round.
struct ProtocolStates {
  DensityOperator rho_dep;  ///< Fully depolarized dual-rail state Π/4.
  DensityOperator rho_bs;   ///< After the beam splitter.
  DensityOperator rho_no;   ///< Even-branch conditional (one-arm sector).
  DensityOperator xi_lr;    ///< Even branch returned through the beam splitter.
};

ProtocolStates build_protocol_states();

/// One row of a detector-error sweep over the ideal depolarizing round.
struct SweepRow {
  double eps = 0.0;
  double eps_prime = 0.0;
  double p_lr = 0.0;         ///< Reported-odd probability on rho_bs.
  double concurrence = 0.0;  ///< Concurrence of the reported-odd post state.
};

/// Evaluates the faulty detector on the ideal post-beam-splitter state for
/// every (ε, ε′) grid pair, row-major in the given orders.
std::vector<SweepRow> sweep_errors(const std::vector<double>& eps_grid,
                                   const std::vector<double>& eps_prime_grid);

/// Random mixed two-qubit state embedded in the dual-rail sector
/// (Ginibre construction), for seeding protocol runs and tests.
DensityOperator random_dual_rail_state(std::mt19937_64& rng);

}  // namespace qdistill
