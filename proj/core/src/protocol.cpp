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

#include "qdistill/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qdistill/elements.hpp"
#include "qdistill/noise.hpp"

namespace qdistill {

namespace {

constexpr double kBranchProbabilityFloor = 1e-12;
constexpr double kDeadBranchTol = 1e-15;

const TwoPhotonUnitary& beam_splitter_lift() {
  static const TwoPhotonUnitary u = lift_unitary(make_element(ElementSpec::beam_splitter()));
  return u;
}

const TwoPhotonUnitary& repump_rotation_lift() {
  static const TwoPhotonUnitary u = lift_unitary(
      make_element(ElementSpec::polarization_rotator(std::numbers::pi / 2.0, Arm::L)));
  return u;
}

/// The variant's round reset: make the round input independent of history.
DensityOperator reset_state(const DensityOperator& rho, const ProtocolConfig& config) {
  if (config.variant == Variant::Depolarizing) {
    return depolarize(rho);
  }
  DensityOperator damped = amplitude_damp(rho, config.gamma, Spatial::L);
  damped = amplitude_damp(damped, config.gamma, Spatial::R);
  return apply_unitary(damped, repump_rotation_lift());
}

/// Monte Carlo flavor of the reset: stochastic for the depolarizing variant.
DensityOperator reset_state_mc(const DensityOperator& rho, const ProtocolConfig& config,
                               std::mt19937_64& rng) {
  if (config.variant == Variant::Depolarizing) {
    return depolarize_mc(rho, rng);
  }
  return reset_state(rho, config);
}

DensityOperator default_initial_state(const ProtocolConfig& config) {
  std::mt19937_64 rng(config.seed);
  return random_dual_rail_state(rng);
}

std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t trajectory) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trajectory),
                    static_cast<std::uint32_t>(trajectory >> 32),
                    0x9d2c5680u};
  return std::mt19937_64(seq);
}

void finalize_collected(ProtocolResult& result, const Mat10& collected_sum, double weight) {
  if (weight < kBranchProbabilityFloor) return;
  DensityOperator final_state = DensityOperator::unchecked(collected_sum / weight);
  result.singlet_fidelity = fidelity(final_state, canonical_state(CanonicalTag::OneMinusLR).state);
  result.concurrence = polarization_concurrence(final_state);
  result.final_state = std::move(final_state);
}

}  // namespace

std::string variant_name(Variant v) {
  return v == Variant::Depolarizing ? "depolarizing" : "amplitude-damping";
}

std::string run_mode_name(RunMode m) { return m == RunMode::Exact ? "exact" : "monte-carlo"; }

std::optional<Variant> parse_variant(const std::string& name) {
  if (name == "depolarizing") return Variant::Depolarizing;
  if (name == "amplitude-damping") return Variant::AmplitudeDamping;
  return std::nullopt;
}

std::optional<RunMode> parse_run_mode(const std::string& name) {
  if (name == "exact") return RunMode::Exact;
  if (name == "monte-carlo") return RunMode::MonteCarlo;
  return std::nullopt;
}

void ProtocolConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  if (trajectories < 1) throw std::invalid_argument("trajectories must be at least 1");
  if (gamma < 0.0 || gamma > 1.0) {
    throw std::invalid_argument("damping strength must lie in [0, 1]");
  }
  detector.validate();
  if (initial_state) {
    const double one_arm = initial_state->expectation(one_arm_projector());
    if (one_arm > 1e-10) {
      throw std::invalid_argument("initial state must be supported on the dual-rail sector");
    }
  }
}

ProtocolResult run_exact(const ProtocolConfig& config) {
  config.validate();
  const TwoPhotonUnitary& bs = beam_splitter_lift();

  DensityOperator state = config.initial_state ? *config.initial_state
                                               : default_initial_state(config);
  ProtocolResult result;
  result.per_iteration.reserve(static_cast<std::size_t>(config.iterations));

  Mat10 collected_sum = Mat10::Zero();
  double collected_weight = 0.0;
  double cumulative = 0.0;
  double survival = 1.0;  // P(all rounds so far reported even)

  for (int round = 1; round <= config.iterations; ++round) {
    state = reset_state(state, config);
    state = apply_unitary(state, bs);
    const ParityMeasurement measurement = measure_parity(state, config.detector);

    const double p_round = measurement.odd.probability;
    cumulative += survival * p_round;
    result.per_iteration.push_back(IterationStats{round, p_round, cumulative});

    if (measurement.odd.post_state) {
      collected_sum += (survival * p_round) * measurement.odd.post_state->matrix();
      collected_weight += survival * p_round;
    }
    survival *= measurement.even.probability;

    if (!measurement.even.post_state || measurement.even.probability < kDeadBranchTol) {
      // Nothing survives to condition the next round on.
      break;
    }
    state = apply_unitary(*measurement.even.post_state, bs);
  }

  finalize_collected(result, collected_sum, collected_weight);
  return result;
}

ProtocolResult run_trajectories(const ProtocolConfig& config) {
  config.validate();
  if (config.mode != RunMode::MonteCarlo) {
    throw std::invalid_argument("run_trajectories requires Monte Carlo mode");
  }
  const TwoPhotonUnitary& bs = beam_splitter_lift();
  const DensityOperator initial = config.initial_state ? *config.initial_state
                                                       : default_initial_state(config);

  const int rounds = config.iterations;
  const int count = config.trajectories;

  // Every trajectory is an independent function of (seed, t), and the
  // reductions below run in increasing trajectory index, so a parallel
  // scheduler that stores per-trajectory outputs and reduces by index
  // reproduces this serial loop bit for bit.
  std::vector<TrajectoryLog> logs(static_cast<std::size_t>(count));
  Mat10 collected_sum = Mat10::Zero();
  std::int64_t collected_count = 0;
  std::vector<std::int64_t> successes(static_cast<std::size_t>(rounds) + 1, 0);

  for (int t = 0; t < count; ++t) {
    std::mt19937_64 rng = trajectory_rng(config.seed, static_cast<std::uint64_t>(t));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    DensityOperator state = initial;
    TrajectoryLog& log = logs[static_cast<std::size_t>(t)];
    log.rounds.reserve(static_cast<std::size_t>(rounds));

    for (int round = 1; round <= rounds; ++round) {
      state = reset_state_mc(state, config, rng);
      state = apply_unitary(state, bs);

      // Sample the true parity, project, then sample the classical report.
      const double w_odd = state.expectation(parity_projector(Parity::Odd));
      const bool true_odd = uniform(rng) < w_odd;
      const Mat10& projector = parity_projector(true_odd ? Parity::Odd : Parity::Even);
      const double weight = true_odd ? w_odd : 1.0 - w_odd;
      state = DensityOperator::unchecked(projector * state.matrix() * projector / weight);

      const double flip = uniform(rng);
      const bool reported_odd = true_odd ? flip >= config.detector.eps
                                         : flip < config.detector.eps_prime;
      log.rounds.push_back(TrajectoryRound{round, true_odd ? Parity::Odd : Parity::Even,
                                           reported_odd ? Parity::Odd : Parity::Even});

      if (reported_odd) {
        log.success_round = round;
        collected_sum += state.matrix();
        ++collected_count;
        break;
      }
      state = apply_unitary(state, bs);
    }
    ++successes[static_cast<std::size_t>(log.success_round)];
  }

  ProtocolResult result;
  std::int64_t reached = count;
  std::int64_t cumulative = 0;
  for (int round = 1; round <= rounds; ++round) {
    const std::int64_t won = successes[static_cast<std::size_t>(round)];
    cumulative += won;
    const double p_round = reached > 0 ? static_cast<double>(won) / static_cast<double>(reached)
                                       : 0.0;
    result.per_iteration.push_back(IterationStats{
        round, p_round, static_cast<double>(cumulative) / static_cast<double>(count)});
    reached -= won;
  }

  if (collected_count > 0) {
    finalize_collected(result, collected_sum, static_cast<double>(collected_count));
  }
  result.trajectory_logs = std::move(logs);
  return result;
}

ProtocolResult run_protocol(const ProtocolConfig& config) {
  return config.mode == RunMode::Exact ? run_exact(config) : run_trajectories(config);
}

double polarization_concurrence(const DensityOperator& rho) {
  const DualRailBlock dr = dual_rail_block(rho);
  if (dr.weight < kBranchProbabilityFloor) return 0.0;
  // Wootters quantities are evaluated on the subnormalized block itself:
  // population outside the dual-rail sector carries no polarization
  // correlations and must show up as a trace deficit, scaling the
  // concurrence down by the block weight rather than being renormalized
  // away.  (The λ_i are homogeneous of degree one in the block.)
  const Mat4c& qubits = dr.block;

  // Spin-flip matrix σ_y ⊗ σ_y in the ↑↑, ↑↓, ↓↑, ↓↓ basis.
  Mat4c spin_flip = Mat4c::Zero();
  spin_flip(0, 3) = -1.0;
  spin_flip(1, 2) = 1.0;
  spin_flip(2, 1) = 1.0;
  spin_flip(3, 0) = -1.0;

  // The λ_i are the square roots of the eigenvalues of B·F·B*·F with
  // F = σ_y ⊗ σ_y.  Equivalently they are the singular values of the
  // complex-symmetric matrix √B · F · (√B)*, which an SVD resolves to
  // machine precision even when several λ_i vanish (a general eigensolver
  // on the non-normal product only reaches √machine-epsilon there).
  Eigen::SelfAdjointEigenSolver<Mat4c> block_solver(0.5 * (qubits + qubits.adjoint()));
  const Eigen::Vector4d clipped = block_solver.eigenvalues().cwiseMax(0.0);
  const Mat4c sqrt_block = block_solver.eigenvectors() * clipped.cwiseSqrt().asDiagonal() *
                           block_solver.eigenvectors().adjoint();
  const Mat4c symmetric = sqrt_block * spin_flip * sqrt_block.conjugate();
  Eigen::JacobiSVD<Mat4c> svd(symmetric);
  const Eigen::Vector4d& lambda = svd.singularValues();
  return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

ProtocolStates build_protocol_states() {
  const TwoPhotonUnitary& bs = beam_splitter_lift();
  ProtocolStates states{
      DensityOperator::unchecked(dual_rail_projector() / 4.0),
      DensityOperator::unchecked(Mat10::Zero()),
      DensityOperator::unchecked(Mat10::Zero()),
      DensityOperator::unchecked(Mat10::Zero()),
  };
  states.rho_bs = apply_unitary(states.rho_dep, bs);
  const ParityMeasurement ideal = measure_parity(states.rho_bs, DetectorSpec{});
  if (!ideal.even.post_state) throw std::logic_error("even branch of the ideal round is empty");
  states.rho_no = *ideal.even.post_state;
  states.xi_lr = apply_unitary(states.rho_no, bs);
  return states;
}

std::vector<SweepRow> sweep_errors(const std::vector<double>& eps_grid,
                                   const std::vector<double>& eps_prime_grid) {
  const ProtocolStates states = build_protocol_states();
  std::vector<SweepRow> rows;
  rows.reserve(eps_grid.size() * eps_prime_grid.size());
  for (const double eps : eps_grid) {
    for (const double eps_prime : eps_prime_grid) {
      const ParityMeasurement measurement =
          measure_parity(states.rho_bs, DetectorSpec{Spatial::L, eps, eps_prime});
      SweepRow row{eps, eps_prime, measurement.odd.probability, 0.0};
      if (measurement.odd.post_state) {
        row.concurrence = polarization_concurrence(*measurement.odd.post_state);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

DensityOperator random_dual_rail_state(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat4c ginibre;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      ginibre(r, c) = Complex(normal(rng), normal(rng));
    }
  }
  Mat4c density = ginibre * ginibre.adjoint();
  density /= density.trace().real();
  return embed_dual_rail(density);
}

}  // namespace qdistill
