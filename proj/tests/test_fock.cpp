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
#include <vector>

#include "qdistill/fock.hpp"
#include "support/oracles.hpp"

using namespace qdistill;

namespace {

Mat10 projector_onto(const std::vector<int>& indices) {
  Mat10 p = Mat10::Zero();
  for (const int i : indices) p(i, i) = 1.0;
  return p;
}

}  // namespace

TEST_CASE("basis enumeration is the documented descending-lex order") {
  const auto& basis = enumerate_basis();
  const std::array<std::array<int, 4>, 10> expected = {{
      {2, 0, 0, 0},
      {1, 1, 0, 0},
      {1, 0, 1, 0},
      {1, 0, 0, 1},
      {0, 2, 0, 0},
      {0, 1, 1, 0},
      {0, 1, 0, 1},
      {0, 0, 2, 0},
      {0, 0, 1, 1},
      {0, 0, 0, 2},
  }};
  for (int i = 0; i < kFockDim; ++i) {
    CHECK(basis[static_cast<std::size_t>(i)].occupation == expected[static_cast<std::size_t>(i)]);
    CHECK(basis_index(basis[static_cast<std::size_t>(i)]) == i);
  }
  // Strictly descending lexicographic order.
  for (int i = 0; i + 1 < kFockDim; ++i) {
    CHECK(basis[static_cast<std::size_t>(i)].occupation >
          basis[static_cast<std::size_t>(i + 1)].occupation);
  }
}

TEST_CASE("basis_index rejects tuples that are not two-photon") {
  CHECK_THROWS_AS(basis_index(FockBasisState{{1, 0, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(basis_index(FockBasisState{{1, 1, 1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(basis_index(FockBasisState{{3, -1, 0, 0}}), std::invalid_argument);
}

TEST_CASE("occupation helpers") {
  const FockBasisState doubly{{0, 2, 0, 0}};
  CHECK(doubly.occupied_modes() == std::array<int, 2>{1, 1});
  CHECK(doubly.photons_in(Spatial::L) == 2);
  CHECK(doubly.photons_in(Spatial::R) == 0);
  CHECK(doubly.normalization() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const FockBasisState split{{0, 1, 1, 0}};
  CHECK(split.occupied_modes() == std::array<int, 2>{1, 2});
  CHECK(split.photons_in(Spatial::L) == 1);
  CHECK(split.photons_in(Spatial::R) == 1);
  CHECK(split.normalization() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(mode_index(Spatial::L, Polarization::Up) == 0);
  CHECK(mode_index(Spatial::L, Polarization::Down) == 1);
  CHECK(mode_index(Spatial::R, Polarization::Up) == 2);
  CHECK(mode_index(Spatial::R, Polarization::Down) == 3);
  CHECK(mode_name(0) == "L_up");
  CHECK(mode_name(3) == "R_dn");
}

TEST_CASE("dual-rail indices are exactly the one-photon-per-arm tuples") {
  const auto& basis = enumerate_basis();
  std::vector<int> dual;
  for (int i = 0; i < kFockDim; ++i) {
    if (basis[static_cast<std::size_t>(i)].photons_in(Spatial::L) == 1) dual.push_back(i);
  }
  CHECK(dual == std::vector<int>{2, 3, 5, 6});
  for (std::size_t k = 0; k < kDualRailIndices.size(); ++k) {
    CHECK(kDualRailIndices[k] == dual[k]);
  }
}

TEST_CASE("PureState validation") {
  Vec10 v = Vec10::Zero();
  v(3) = 1.0;
  CHECK_NOTHROW(PureState::from_amplitudes(v));
  v(3) = 1.1;
  CHECK_THROWS_AS(PureState::from_amplitudes(v), std::invalid_argument);
  const PureState rescaled = PureState::normalized(v);
  CHECK(rescaled.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(PureState::normalized(Vec10::Zero()), std::invalid_argument);
  CHECK(PureState::basis_state(5).amplitude(5) == Complex(1.0, 0.0));
}

TEST_CASE("DensityOperator validation") {
  std::mt19937_64 rng(11);
  CHECK_NOTHROW(DensityOperator::from_matrix(oracles::random_density10(rng)));

  Mat10 not_trace_one = Mat10::Identity() * 0.2;
  CHECK_THROWS_AS(DensityOperator::from_matrix(not_trace_one), std::invalid_argument);

  Mat10 not_hermitian = Mat10::Identity() * 0.1;
  not_hermitian(0, 1) = Complex(0.0, 0.5);
  CHECK_THROWS_AS(DensityOperator::from_matrix(not_hermitian), std::invalid_argument);

  Mat10 not_psd = Mat10::Zero();
  not_psd(0, 0) = 1.5;
  not_psd(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator::from_matrix(not_psd), std::invalid_argument);
}

// The central lift check: the permanent-based implementation must agree
// with the independent creation-operator expansion for random unitaries.
TEST_CASE("lift_unitary matches the creation-operator oracle") {
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Mat4c u = oracles::haar_unitary(4, rng);
    const TwoPhotonUnitary lifted = lift_unitary(SingleParticleUnitary::from_matrix(u));
    const Mat10 reference = oracles::lift4(u);
    worst = std::max(worst, (lifted.matrix() - reference).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("lift_unitary is a homomorphism into the unitary group") {
  std::mt19937_64 rng(7);
  const Mat4c u = oracles::haar_unitary(4, rng);
  const Mat4c v = oracles::haar_unitary(4, rng);
  const auto lift = [](const Mat4c& m) {
    return lift_unitary(SingleParticleUnitary::from_matrix(m)).matrix();
  };

  CHECK((lift(Mat4c::Identity()) - Mat10::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((lift(u * v) - lift(u) * lift(v)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((lift(u).adjoint() - lift(Mat4c(u.adjoint()))).cwiseAbs().maxCoeff() <= 1e-12);
  const Mat10 lu = lift(u);
  CHECK((lu.adjoint() * lu - Mat10::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("SingleParticleUnitary rejects non-unitary matrices") {
  Mat4c m = Mat4c::Identity();
  m(0, 0) = 1.5;
  CHECK_THROWS_AS(SingleParticleUnitary::from_matrix(m), std::invalid_argument);
}

TEST_CASE("apply_unitary conjugates the density operator") {
  std::mt19937_64 rng(3);
  const Mat10 rho = oracles::random_density10(rng);
  const Mat4c u = oracles::haar_unitary(4, rng);
  const TwoPhotonUnitary big = lift_unitary(SingleParticleUnitary::from_matrix(u));
  const DensityOperator out = apply_unitary(DensityOperator::from_matrix(rho), big);
  const Mat10 expected = big.matrix() * rho * big.matrix().adjoint();
  CHECK((out.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("apply_kraus enforces completeness on the support") {
  std::mt19937_64 rng(5);
  const DensityOperator rho = DensityOperator::from_matrix(oracles::random_density10(rng));

  // A complete set: two orthogonal projectors.
  const Mat10 p_low = projector_onto({0, 1, 2, 3, 4});
  const Mat10 p_high = projector_onto({5, 6, 7, 8, 9});
  CHECK_NOTHROW(apply_kraus(rho, {p_low, p_high}));

  // Incomplete on a full-rank state: one projector alone.
  CHECK_THROWS_AS(apply_kraus(rho, {p_low}), std::invalid_argument);

  // Incomplete globally but complete on the support: state confined to the
  // low block, single low projector.
  Mat10 confined = Mat10::Zero();
  confined(0, 0) = 0.5;
  confined(4, 4) = 0.5;
  CHECK_NOTHROW(apply_kraus(DensityOperator::from_matrix(confined), {p_low}));
}

TEST_CASE("dual_rail_block and embed_dual_rail are mutually inverse") {
  std::mt19937_64 rng(13);
  const Eigen::Matrix4cd qubits = oracles::random_two_qubit_density(rng);
  const DensityOperator embedded = embed_dual_rail(qubits);
  CHECK(embedded.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));

  const DualRailBlock block = dual_rail_block(embedded);
  CHECK(block.weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((block.block - qubits).cwiseAbs().maxCoeff() <= 1e-12);

  // Embedding leaves every one-arm entry zero.
  for (int i = 0; i < kFockDim; ++i) {
    for (int j = 0; j < kFockDim; ++j) {
      const bool i_dual = (i == 2 || i == 3 || i == 5 || i == 6);
      const bool j_dual = (j == 2 || j == 3 || j == 5 || j == 6);
      if (!i_dual || !j_dual) CHECK(std::abs(embedded.matrix()(i, j)) == 0.0);
    }
  }
}

TEST_CASE("amplitude_matrix transforms as M -> u M u^T") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const PureState psi = PureState::from_amplitudes(oracles::random_pure10(rng));
    const Mat4c u = oracles::haar_unitary(4, rng);
    const TwoPhotonUnitary big = lift_unitary(SingleParticleUnitary::from_matrix(u));
    const PureState phi = big.apply(psi);

    const Mat4c m_in = amplitude_matrix(psi);
    const Mat4c m_out = amplitude_matrix(phi);
    const Mat4c expected = u * m_in * u.transpose();
    CHECK((m_out - expected).cwiseAbs().maxCoeff() <= 1e-12);

    // Norm identity ⟨ψ|ψ⟩ = 2 Tr(M M†), and symmetry.
    CHECK(2.0 * (m_in * m_in.adjoint()).trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((m_in - m_in.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("amplitude-matrix rank is invariant under 100 random passive optics") {
  std::mt19937_64 rng(19);
  const PureState rank4 = PureState::normalized([] {
    Vec10 v = Vec10::Zero();
    v(3) = 1.0;
    v(5) = -1.0;
    return v;
  }());
  const PureState rank2 = PureState::normalized([] {
    Vec10 v = Vec10::Zero();
    v(0) = 1.0;
    v(7) = -1.0;
    return v;
  }());
  CHECK(matrix_rank(amplitude_matrix(rank4)) == 4);
  CHECK(matrix_rank(amplitude_matrix(rank2)) == 2);

  for (int trial = 0; trial < 100; ++trial) {
    const Mat4c u = oracles::haar_unitary(4, rng);
    const TwoPhotonUnitary big = lift_unitary(SingleParticleUnitary::from_matrix(u));
    CHECK(matrix_rank(amplitude_matrix(big.apply(rank4))) == 4);
    CHECK(matrix_rank(amplitude_matrix(big.apply(rank2))) == 2);
  }
}

TEST_CASE("matrix_rank by singular values") {
  Mat4c m = Mat4c::Zero();
  CHECK(matrix_rank(m) == 0);
  m(0, 0) = 1.0;
  CHECK(matrix_rank(m) == 1);
  m(1, 1) = 1e-3;
  CHECK(matrix_rank(m) == 2);
  m(1, 1) = 1e-12;  // far below tol·σ_max
  CHECK(matrix_rank(m) == 1);
}

TEST_CASE("fidelity and trace distance basics") {
  const PureState a = PureState::basis_state(2);
  const PureState b = PureState::basis_state(3);
  const DensityOperator rho_a = DensityOperator::from_pure(a);
  const DensityOperator rho_b = DensityOperator::from_pure(b);

  CHECK(fidelity(rho_a, a) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity(rho_a, b) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(trace_distance(rho_a, rho_a) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(trace_distance(rho_a, rho_b) == doctest::Approx(1.0).epsilon(1e-12));

  // Triangle inequality and symmetry on random states.
  std::mt19937_64 rng(23);
  const DensityOperator x = DensityOperator::from_matrix(oracles::random_density10(rng));
  const DensityOperator y = DensityOperator::from_matrix(oracles::random_density10(rng));
  const DensityOperator z = DensityOperator::from_matrix(oracles::random_density10(rng));
  CHECK(trace_distance(x, y) == doctest::Approx(trace_distance(y, x)).epsilon(1e-12));
  CHECK(trace_distance(x, z) <= trace_distance(x, y) + trace_distance(y, z) + 1e-12);
}
