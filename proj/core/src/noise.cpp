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

#include "qdistill/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "qdistill/elements.hpp"

namespace qdistill {

namespace {

constexpr double kChannelCompletenessTol = 1e-10;
constexpr double kOneArmPopulationTol = 1e-10;

/// Dual-rail basis index for polarizations (L pol, R pol).
int dual_rail_index(Polarization l, Polarization r) {
  return kDualRailIndices[static_cast<std::size_t>(
      2 * static_cast<int>(l) + static_cast<int>(r))];
}

void require_dual_rail_support(const DensityOperator& rho, const char* what) {
  const double one_arm = rho.expectation(one_arm_projector());
  if (one_arm > kOneArmPopulationTol) {
    throw std::invalid_argument(std::string(what) +
                                ": state has one-arm population " + std::to_string(one_arm) +
                                ", but the channel acts on the dual-rail sector only");
  }
}

}  // namespace

QubitChannel QubitChannel::identity() {
  return QubitChannel{{Mat2c::Identity()}};
}

QubitChannel QubitChannel::depolarizing() {
  Mat2c x, y, z;
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  return QubitChannel{{Mat2c::Identity() / 2.0, x / 2.0, y / 2.0, z / 2.0}};
}

QubitChannel QubitChannel::amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) {
    throw std::invalid_argument("damping strength must lie in [0, 1]");
  }
  Mat2c k0 = Mat2c::Zero();
  k0(0, 0) = std::sqrt(1.0 - gamma);
  k0(1, 1) = 1.0;
  Mat2c k1 = Mat2c::Zero();
  k1(1, 0) = std::sqrt(gamma);  // |↓⟩⟨↑|
  return QubitChannel{{k0, k1}};
}

void QubitChannel::validate() const {
  if (kraus.empty()) throw std::invalid_argument("qubit channel has no Kraus operators");
  Mat2c completeness = Mat2c::Zero();
  for (const Mat2c& k : kraus) completeness += k.adjoint() * k;
  if ((completeness - Mat2c::Identity()).norm() > kChannelCompletenessTol) {
    throw std::invalid_argument("qubit channel is not trace preserving");
  }
}

std::vector<Mat10> lift_local_channel(const QubitChannel& channel, Spatial arm) {
  channel.validate();
  std::vector<Mat10> lifted;
  lifted.reserve(channel.kraus.size());
  for (std::size_t i = 0; i < channel.kraus.size(); ++i) {
    const Mat2c& k = channel.kraus[i];
    Mat10 big = Mat10::Zero();
    // Dual-rail sector: the channel acts on the polarization of `arm`,
    // identity on the other arm's polarization.
    for (int out = 0; out < 2; ++out) {
      for (int in = 0; in < 2; ++in) {
        for (int other = 0; other < 2; ++other) {
          const auto pol_out = static_cast<Polarization>(out);
          const auto pol_in = static_cast<Polarization>(in);
          const auto pol_other = static_cast<Polarization>(other);
          const int row = arm == Spatial::L ? dual_rail_index(pol_out, pol_other)
                                            : dual_rail_index(pol_other, pol_out);
          const int col = arm == Spatial::L ? dual_rail_index(pol_in, pol_other)
                                            : dual_rail_index(pol_other, pol_in);
          big(row, col) += k(out, in);
        }
      }
    }
    // One-arm sector: identity, carried by the first Kraus operator so the
    // set stays complete on the full space.
    if (i == 0) {
      big += one_arm_projector();
    }
    lifted.push_back(std::move(big));
  }
  return lifted;
}

DensityOperator apply_local_channel(const DensityOperator& rho, const QubitChannel& channel,
                                    Spatial arm) {
  require_dual_rail_support(rho, "apply_local_channel");
  return apply_kraus(rho, lift_local_channel(channel, arm));
}

DensityOperator depolarize(const DensityOperator& rho) {
  require_dual_rail_support(rho, "depolarize");
  // Both polarization qubits go to the maximally mixed state regardless of
  // the input, so the output is the constant Π_dual-rail/4.
  return DensityOperator::unchecked(dual_rail_projector() / 4.0);
}

DensityOperator depolarize_mc(const DensityOperator& rho, std::mt19937_64& rng) {
  require_dual_rail_support(rho, "depolarize_mc");
  const Mat2c u_l = sample_haar_su2(rng);
  const Mat2c u_r = sample_haar_su2(rng);
  const TwoPhotonUnitary u = lift_unitary(polarization_rotations(u_l, u_r));
  return apply_unitary(rho, u);
}

DensityOperator amplitude_damp(const DensityOperator& rho, double gamma, Spatial arm) {
  return apply_local_channel(rho, QubitChannel::amplitude_damping(gamma), arm);
}

Mat2c sample_haar_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double a = normal(rng), b = normal(rng), c = normal(rng), d = normal(rng);
  const double norm = std::sqrt(a * a + b * b + c * c + d * d);
  a /= norm; b /= norm; c /= norm; d /= norm;
  Mat2c u;
  u << Complex(a, b), Complex(c, d), Complex(-c, d), Complex(a, -b);
  return u;
}

SingleParticleUnitary polarization_rotations(const Mat2c& u_l, const Mat2c& u_r) {
  Mat4c m = Mat4c::Zero();
  m.block<2, 2>(0, 0) = u_l;
  m.block<2, 2>(2, 2) = u_r;
  return SingleParticleUnitary::from_matrix(m);
}

}  // namespace qdistill
