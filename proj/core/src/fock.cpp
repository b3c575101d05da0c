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

#include "qdistill/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qdistill {

namespace {

constexpr double kUnitarityTol = 1e-8;
constexpr double kStateNormTol = 1e-10;
constexpr double kDensityTol = 1e-9;
constexpr double kKrausCompletenessTol = 1e-10;

std::array<FockBasisState, kFockDim> build_basis() {
  std::array<FockBasisState, kFockDim> basis{};
  int next = 0;
  // Descending lexicographic enumeration of all tuples with Σn = 2.
  for (int n0 = kPhotonCount; n0 >= 0; --n0) {
    for (int n1 = kPhotonCount - n0; n1 >= 0; --n1) {
      for (int n2 = kPhotonCount - n0 - n1; n2 >= 0; --n2) {
        const int n3 = kPhotonCount - n0 - n1 - n2;
        basis[next++] = FockBasisState{{n0, n1, n2, n3}};
      }
    }
  }
  return basis;
}

}  // namespace

std::string mode_name(int mode) {
  static const std::array<std::string, kModeCount> names = {"L_up", "L_dn", "R_up", "R_dn"};
  return names.at(static_cast<std::size_t>(mode));
}

std::array<int, kPhotonCount> FockBasisState::occupied_modes() const {
  std::array<int, kPhotonCount> modes{};
  int count = 0;
  for (int m = 0; m < kModeCount; ++m) {
    for (int n = 0; n < occupation[static_cast<std::size_t>(m)]; ++n) {
      if (count < kPhotonCount) modes[static_cast<std::size_t>(count)] = m;
      ++count;
    }
  }
  if (count != kPhotonCount) {
    throw std::invalid_argument("occupation tuple does not hold exactly two photons");
  }
  return modes;
}

int FockBasisState::photons_in(Spatial s) const {
  const int base = 2 * static_cast<int>(s);
  return occupation[static_cast<std::size_t>(base)] +
         occupation[static_cast<std::size_t>(base + 1)];
}

double FockBasisState::normalization() const {
  // Occupations are at most 2, so ∏ n! is either 1 or 2.
  for (const int n : occupation) {
    if (n == 2) return std::sqrt(2.0);
  }
  return 1.0;
}

std::string FockBasisState::to_string() const {
  std::ostringstream out;
  out << "|";
  bool first = true;
  for (int m = 0; m < kModeCount; ++m) {
    for (int n = 0; n < occupation[static_cast<std::size_t>(m)]; ++n) {
      if (!first) out << ",";
      out << mode_name(m);
      first = false;
    }
  }
  out << ">";
  return out.str();
}

const std::array<FockBasisState, kFockDim>& enumerate_basis() {
  static const std::array<FockBasisState, kFockDim> basis = build_basis();
  return basis;
}

int basis_index(const FockBasisState& state) {
  int total = 0;
  for (const int n : state.occupation) {
    if (n < 0) throw std::invalid_argument("negative occupation number");
    total += n;
  }
  if (total != kPhotonCount) {
    throw std::invalid_argument("occupation tuple does not hold exactly two photons");
  }
  const auto& basis = enumerate_basis();
  for (int i = 0; i < kFockDim; ++i) {
    if (basis[static_cast<std::size_t>(i)] == state) return i;
  }
  throw std::logic_error("two-photon tuple missing from basis enumeration");
}

PureState PureState::from_amplitudes(const Vec10& amplitudes) {
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kStateNormTol) {
    throw std::invalid_argument("pure state is not normalized (|norm-1| = " +
                                std::to_string(std::abs(norm - 1.0)) + ")");
  }
  return PureState(amplitudes);
}

PureState PureState::normalized(const Vec10& amplitudes) {
  const double norm = amplitudes.norm();
  if (norm < 1e-12) {
    throw std::invalid_argument("cannot normalize a zero state vector");
  }
  return PureState(amplitudes / norm);
}

PureState PureState::basis_state(int index) {
  if (index < 0 || index >= kFockDim) {
    throw std::invalid_argument("basis index out of range");
  }
  Vec10 v = Vec10::Zero();
  v(index) = Complex(1.0, 0.0);
  return PureState(v);
}

DensityOperator DensityOperator::from_matrix(const Mat10& matrix) {
  if ((matrix - matrix.adjoint()).norm() > kDensityTol) {
    throw std::invalid_argument("density operator is not Hermitian");
  }
  if (std::abs(matrix.trace().real() - 1.0) > kDensityTol ||
      std::abs(matrix.trace().imag()) > kDensityTol) {
    throw std::invalid_argument("density operator does not have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Mat10> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kDensityTol) {
    throw std::invalid_argument("density operator is not positive semidefinite");
  }
  return DensityOperator(matrix);
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return DensityOperator(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityOperator DensityOperator::unchecked(Mat10 matrix) {
  return DensityOperator(std::move(matrix));
}

double DensityOperator::expectation(const Mat10& observable) const {
  return (observable * matrix_).trace().real();
}

SingleParticleUnitary SingleParticleUnitary::from_matrix(const Mat4c& matrix) {
  const double residual = (matrix.adjoint() * matrix - Mat4c::Identity()).norm();
  if (residual > kUnitarityTol) {
    throw std::invalid_argument("mode matrix is not unitary (residual = " +
                                std::to_string(residual) + ")");
  }
  return SingleParticleUnitary(matrix);
}

SingleParticleUnitary SingleParticleUnitary::after(const SingleParticleUnitary& first) const {
  return SingleParticleUnitary(matrix_ * first.matrix_);
}

TwoPhotonUnitary TwoPhotonUnitary::from_matrix(const Mat10& matrix) {
  const double residual = (matrix.adjoint() * matrix - Mat10::Identity()).norm();
  if (residual > kUnitarityTol) {
    throw std::invalid_argument("two-photon matrix is not unitary (residual = " +
                                std::to_string(residual) + ")");
  }
  return TwoPhotonUnitary(matrix);
}

PureState TwoPhotonUnitary::apply(const PureState& psi) const {
  // Unitarity preserves the norm, so skip re-validation.
  return PureState::normalized(matrix_ * psi.amplitudes());
}

TwoPhotonUnitary lift_unitary(const SingleParticleUnitary& u) {
  const Mat4c& m = u.matrix();
  const auto& basis = enumerate_basis();
  Mat10 lifted;
  for (int col = 0; col < kFockDim; ++col) {
    const auto in = basis[static_cast<std::size_t>(col)].occupied_modes();
    const double in_norm = basis[static_cast<std::size_t>(col)].normalization();
    for (int row = 0; row < kFockDim; ++row) {
      const auto out = basis[static_cast<std::size_t>(row)].occupied_modes();
      const double out_norm = basis[static_cast<std::size_t>(row)].normalization();
      // per([[a,b],[c,d]]) = ad + bc for the 2×2 submatrix picked out by the
      // occupied output rows and input columns.
      const Complex permanent = m(out[0], in[0]) * m(out[1], in[1]) +
                                m(out[0], in[1]) * m(out[1], in[0]);
      lifted(row, col) = permanent / (in_norm * out_norm);
    }
  }
  return TwoPhotonUnitary(std::move(lifted));
}

DensityOperator apply_unitary(const DensityOperator& rho, const TwoPhotonUnitary& u) {
  return DensityOperator::unchecked(u.matrix() * rho.matrix() * u.matrix().adjoint());
}

DensityOperator apply_kraus(const DensityOperator& rho, const std::vector<Mat10>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("empty Kraus set");
  Mat10 completeness = Mat10::Zero();
  for (const Mat10& k : kraus) completeness += k.adjoint() * k;
  const double violation = ((completeness - Mat10::Identity()) * rho.matrix()).norm();
  if (violation > kKrausCompletenessTol) {
    throw std::invalid_argument(
        "Kraus set is not complete on the support of the state (violation = " +
        std::to_string(violation) + ")");
  }
  Mat10 out = Mat10::Zero();
  for (const Mat10& k : kraus) out += k * rho.matrix() * k.adjoint();
  return DensityOperator::unchecked(std::move(out));
}

DualRailBlock dual_rail_block(const DensityOperator& rho) {
  DualRailBlock result;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      result.block(r, c) = rho.matrix()(kDualRailIndices[static_cast<std::size_t>(r)],
                                        kDualRailIndices[static_cast<std::size_t>(c)]);
    }
  }
  result.weight = result.block.trace().real();
  return result;
}

DensityOperator embed_dual_rail(const Mat4c& two_qubit_density) {
  Mat10 big = Mat10::Zero();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      big(kDualRailIndices[static_cast<std::size_t>(r)],
          kDualRailIndices[static_cast<std::size_t>(c)]) = two_qubit_density(r, c);
    }
  }
  return DensityOperator::from_matrix(big);
}

Mat4c amplitude_matrix(const PureState& psi) {
  Mat4c m = Mat4c::Zero();
  const auto& basis = enumerate_basis();
  for (int i = 0; i < kFockDim; ++i) {
    const auto modes = basis[static_cast<std::size_t>(i)].occupied_modes();
    const Complex c = psi.amplitude(i);
    if (modes[0] == modes[1]) {
      m(modes[0], modes[0]) = c / std::sqrt(2.0);
    } else {
      m(modes[0], modes[1]) = c / 2.0;
      m(modes[1], modes[0]) = c / 2.0;
    }
  }
  return m;
}

int matrix_rank(const Mat4c& m, double tol) {
  Eigen::JacobiSVD<Mat4c> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * sv(0)) ++rank;
  }
  return rank;
}

double fidelity(const DensityOperator& rho, const PureState& psi) {
  const Complex value = psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes();
  return value.real();
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  const Mat10 delta = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<Mat10> solver(delta, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace qdistill
