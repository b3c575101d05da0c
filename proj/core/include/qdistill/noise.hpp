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

#include <random>
#include <vector>

#include "qdistill/fock.hpp"

/// Local polarization noise channels acting on the dual-rail subspace.
///
/// A qubit channel acts on the (↑,↓) polarization of one spatial arm.  The
/// lift to the two-photon space is defined on the dual-rail sector (exactly
/// one photon per arm, so "the polarization of arm X" is a qubit) and as the
/// identity elsewhere; all apply functions therefore reject states with
/// one-arm (two photons in the same arm) population above 1e-10.
namespace qdistill {

/// A qubit channel given by Kraus operators on (↑,↓).
struct QubitChannel {
  std::vector<Mat2c> kraus;

  static QubitChannel identity();

  /// Full depolarizing channel: ρ ↦ 1/2 (Kraus set {1,X,Y,Z}/2).
  static QubitChannel depolarizing();

  /// Amplitude damping toward |↓⟩ with strength γ ∈ [0,1]:
  ///   K0 = diag(√(1−γ), 1),  K1 = √γ |↓⟩⟨↑|.
  static QubitChannel amplitude_damping(double gamma);

  /// Throws std::invalid_argument unless Σ K†K = 1 within 1e-10.
  void validate() const;
};

/// Kraus operators of the channel acting on the polarization of `arm`,
/// lifted to the two-photon space (identity on the one-arm sector).
std::vector<Mat10> lift_local_channel(const QubitChannel& channel, Spatial arm);

/// Applies the lifted channel.  Rejects states with one-arm population
/// above 1e-10 (the lift is only meaningful on the dual-rail sector).
DensityOperator apply_local_channel(const DensityOperator& rho, const QubitChannel& channel,
                                    Spatial arm);

/// Exact two-sided full depolarizer: both polarization qubits are replaced
/// by the maximally mixed state, i.e. ρ ↦ Π_dual-rail/4.  Same support
/// precondition as apply_local_channel.
DensityOperator depolarize(const DensityOperator& rho);

/// One Monte Carlo realization of the two-sided depolarizer: applies one
/// independently sampled Haar-random polarization rotation per arm (L first,
/// then R).  Averaging over samples reproduces depolarize().
DensityOperator depolarize_mc(const DensityOperator& rho, std::mt19937_64& rng);

/// Amplitude damping of strength γ on the polarization of `arm`.
DensityOperator amplitude_damp(const DensityOperator& rho, double gamma, Spatial arm);

/// A Haar-random SU(2) matrix (uniform unit quaternion construction).
Mat2c sample_haar_su2(std::mt19937_64& rng);

/// The single-particle unitary that applies 2×2 polarization rotations
/// u_l and u_r to the L and R arms respectively.
SingleParticleUnitary polarization_rotations(const Mat2c& u_l, const Mat2c& u_r);

}  // namespace qdistill
