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

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "qdistill/elements.hpp"
#include "qdistill/noise.hpp"
#include "support/oracles.hpp"

using namespace qdistill;

namespace {

// Independent reference: act on the extracted 4×4 dual-rail block with the
// channel's 2×2 Kraus operators tensored against the identity of the other
// qubit, then re-embed.  Valid for dual-rail-supported states only.
Mat10 qubit_channel_reference(const Mat10& rho, const QubitChannel& channel, Spatial arm) {
  Eigen::Matrix4cd block;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      block(i, j) = rho(kDualRailIndices[static_cast<std::size_t>(i)],
                        kDualRailIndices[static_cast<std::size_t>(j)]);
    }
  }
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (const Mat2c& k : channel.kraus) {
    Eigen::Matrix4cd big = Eigen::Matrix4cd::Zero();
    // Dual-rail two-qubit order: (L polarization, R polarization), L first.
    for (int li = 0; li < 2; ++li) {
      for (int lj = 0; lj < 2; ++lj) {
        for (int ri = 0; ri < 2; ++ri) {
          for (int rj = 0; rj < 2; ++rj) {
            const Complex left = (arm == Spatial::L) ? k(li, lj) : Complex(li == lj ? 1.0 : 0.0);
            const Complex right = (arm == Spatial::R) ? k(ri, rj) : Complex(ri == rj ? 1.0 : 0.0);
            big(2 * li + ri, 2 * lj + rj) = left * right;
          }
        }
      }
    }
    out += big * block * big.adjoint();
  }
  Mat10 embedded = Mat10::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      embedded(kDualRailIndices[static_cast<std::size_t>(i)],
               kDualRailIndices[static_cast<std::size_t>(j)]) = out(i, j);
    }
  }
  return embedded;
}

DensityOperator random_dual_rail(std::mt19937_64& rng) {
  return embed_dual_rail(oracles::random_two_qubit_density(rng));
}

}  // namespace

TEST_CASE("QubitChannel factories validate") {
  CHECK_NOTHROW(QubitChannel::identity().validate());
  CHECK_NOTHROW(QubitChannel::depolarizing().validate());
  CHECK_NOTHROW(QubitChannel::amplitude_damping(0.0).validate());
  CHECK_NOTHROW(QubitChannel::amplitude_damping(0.37).validate());
  CHECK_NOTHROW(QubitChannel::amplitude_damping(1.0).validate());
  CHECK_THROWS_AS(QubitChannel::amplitude_damping(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(QubitChannel::amplitude_damping(1.1), std::invalid_argument);

  QubitChannel broken;
  broken.kraus = {Mat2c::Identity() * 0.9};
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("amplitude damping Kraus operators are the canonical pair") {
  const QubitChannel ad = QubitChannel::amplitude_damping(0.36);
  REQUIRE(ad.kraus.size() == 2);
  // K0 = diag(√(1−γ), 1): damping acts on ↑ (index 0), ↓ is the ground mode.
  CHECK(std::abs(ad.kraus[0](0, 0) - std::sqrt(1.0 - 0.36)) <= 1e-14);
  CHECK(std::abs(ad.kraus[0](1, 1) - 1.0) <= 1e-14);
  CHECK(std::abs(ad.kraus[0](0, 1)) == 0.0);
  CHECK(std::abs(ad.kraus[0](1, 0)) == 0.0);
  // K1 = √γ |↓⟩⟨↑|.
  CHECK(std::abs(ad.kraus[1](1, 0) - std::sqrt(0.36)) <= 1e-14);
  CHECK(std::abs(ad.kraus[1](0, 0)) == 0.0);
  CHECK(std::abs(ad.kraus[1](0, 1)) == 0.0);
  CHECK(std::abs(ad.kraus[1](1, 1)) == 0.0);
}

TEST_CASE("lifted local channels match the two-qubit reference") {
  std::mt19937_64 rng(31);
  const QubitChannel channels[] = {
      QubitChannel::identity(),
      QubitChannel::depolarizing(),
      QubitChannel::amplitude_damping(0.45),
  };
  for (const auto& channel : channels) {
    for (const Spatial arm : {Spatial::L, Spatial::R}) {
      for (int trial = 0; trial < 10; ++trial) {
        const DensityOperator rho = random_dual_rail(rng);
        const DensityOperator out = apply_local_channel(rho, channel, arm);
        const Mat10 expected = qubit_channel_reference(rho.matrix(), channel, arm);
        CHECK((out.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
  }
}

TEST_CASE("local channels reject one-arm support") {
  Mat10 one_arm = Mat10::Zero();
  one_arm(0, 0) = 1.0;
  const DensityOperator rho = DensityOperator::from_matrix(one_arm);
  CHECK_THROWS_AS(apply_local_channel(rho, QubitChannel::depolarizing(), Spatial::L),
                  std::invalid_argument);
  CHECK_THROWS_AS(depolarize(rho), std::invalid_argument);
  CHECK_THROWS_AS(amplitude_damp(rho, 0.5, Spatial::L), std::invalid_argument);
}

TEST_CASE("depolarize sends every dual-rail state to the flat mixture") {
  std::mt19937_64 rng(37);
  Mat10 quarter = Mat10::Zero();
  for (const int i : kDualRailIndices) quarter(i, i) = 0.25;
  for (int trial = 0; trial < 10; ++trial) {
    const DensityOperator rho = random_dual_rail(rng);
    const DensityOperator out = depolarize(rho);
    CHECK((out.matrix() - quarter).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("depolarizing both arms sequentially also flattens") {
  std::mt19937_64 rng(41);
  const DensityOperator rho = random_dual_rail(rng);
  const DensityOperator l = apply_local_channel(rho, QubitChannel::depolarizing(), Spatial::L);
  const DensityOperator lr = apply_local_channel(l, QubitChannel::depolarizing(), Spatial::R);
  CHECK((lr.matrix() - depolarize(rho).matrix()).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("amplitude damping with gamma 1 resets both polarizations to down") {
  // |↑↑⟩ damped on L then R becomes |↓↓⟩.
  Eigen::Matrix4cd up_up = Eigen::Matrix4cd::Zero();
  up_up(0, 0) = 1.0;
  DensityOperator rho = embed_dual_rail(up_up);
  rho = amplitude_damp(rho, 1.0, Spatial::L);
  rho = amplitude_damp(rho, 1.0, Spatial::R);
  Eigen::Matrix4cd down_down = Eigen::Matrix4cd::Zero();
  down_down(3, 3) = 1.0;
  CHECK((rho.matrix() - embed_dual_rail(down_down).matrix()).cwiseAbs().maxCoeff() <= 1e-14);

  // γ = 0 is the identity channel.
  std::mt19937_64 rng(43);
  const DensityOperator any = random_dual_rail(rng);
  CHECK((amplitude_damp(any, 0.0, Spatial::L).matrix() - any.matrix()).cwiseAbs().maxCoeff() <=
        1e-14);
}

TEST_CASE("sample_haar_su2 yields special unitaries with flat first moments") {
  std::mt19937_64 rng(47);
  Mat2c mean = Mat2c::Zero();
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) {
    const Mat2c u = sample_haar_su2(rng);
    CHECK((u.adjoint() * u - Mat2c::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(u.determinant() - Complex(1.0, 0.0)) <= 1e-12);
    mean += u;
  }
  mean /= static_cast<double>(samples);
  // Haar first moment vanishes; 4/√N standard-error headroom.
  CHECK(mean.cwiseAbs().maxCoeff() <= 4.0 / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("depolarize_mc averages back to the exact depolarizer") {
  std::mt19937_64 rng(53);
  const DensityOperator rho = random_dual_rail(rng);
  Mat10 mean = Mat10::Zero();
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) {
    mean += depolarize_mc(rho, rng).matrix();
  }
  mean /= static_cast<double>(samples);
  const Mat10 exact = depolarize(rho).matrix();
  // Entries are averages of bounded random variables; 5/√N tolerance.
  CHECK((mean - exact).cwiseAbs().maxCoeff() <= 5.0 / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("each depolarize_mc sample is a valid dual-rail state") {
  std::mt19937_64 rng(59);
  const DensityOperator rho = random_dual_rail(rng);
  for (int i = 0; i < 20; ++i) {
    const DensityOperator sample = depolarize_mc(rho, rng);
    CHECK(sample.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sample.expectation(one_arm_projector()) <= 1e-12);
  }
}

TEST_CASE("polarization_rotations builds the block unitary") {
  std::mt19937_64 rng(61);
  const Mat2c u_l = sample_haar_su2(rng);
  const Mat2c u_r = sample_haar_su2(rng);
  const Mat4c big = polarization_rotations(u_l, u_r).matrix();
  CHECK((big.block<2, 2>(0, 0) - u_l).cwiseAbs().maxCoeff() == 0.0);
  CHECK((big.block<2, 2>(2, 2) - u_r).cwiseAbs().maxCoeff() == 0.0);
  CHECK(big.block<2, 2>(0, 2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(big.block<2, 2>(2, 0).cwiseAbs().maxCoeff() == 0.0);
}
