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

#include <array>
#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

/// Two photons in four optical modes.
///
/// The mode register is (L↑, L↓, R↑, R↓): two spatial arms L and R, each
/// carrying two polarization modes ↑ and ↓.  Everything in this library lives
/// in the 10-dimensional two-photon sector of that register.  The basis is
/// the set of occupation tuples (n_L↑, n_L↓, n_R↑, n_R↓) with Σn = 2, ordered
/// lexicographically descending:
///
///   0:(2,0,0,0) 1:(1,1,0,0) 2:(1,0,1,0) 3:(1,0,0,1) 4:(0,2,0,0)
///   5:(0,1,1,0) 6:(0,1,0,1) 7:(0,0,2,0) 8:(0,0,1,1) 9:(0,0,0,2)
///
/// Indices {2,3,5,6} are the dual-rail (one photon per arm) states; in that
/// order they read ↑↑, ↑↓, ↓↑, ↓↓ with the L polarization named first, which
/// is the two-qubit computational basis used throughout.  The remaining six
/// indices put both photons in one arm (the NOON-like sector).
namespace qdistill {

using Complex = std::complex<double>;
using Vec10 = Eigen::Matrix<Complex, 10, 1>;
using Mat10 = Eigen::Matrix<Complex, 10, 10>;
using Mat4c = Eigen::Matrix<Complex, 4, 4>;
using Mat2c = Eigen::Matrix<Complex, 2, 2>;

inline constexpr int kModeCount = 4;
inline constexpr int kPhotonCount = 2;
inline constexpr int kFockDim = 10;

/// Basis indices of the dual-rail (one photon per arm) subspace, in
/// two-qubit order ↑↑, ↑↓, ↓↑, ↓↓ (L qubit first).
inline constexpr std::array<int, 4> kDualRailIndices = {2, 3, 5, 6};

enum class Spatial : int { L = 0, R = 1 };
enum class Polarization : int { Up = 0, Down = 1 };

/// Flat index of a (spatial, polarization) mode in the register order above.
constexpr int mode_index(Spatial s, Polarization p) {
  return 2 * static_cast<int>(s) + static_cast<int>(p);
}

constexpr Spatial spatial_of(int mode) { return static_cast<Spatial>(mode / 2); }
constexpr Polarization polarization_of(int mode) { return static_cast<Polarization>(mode % 2); }

std::string mode_name(int mode);

/// One two-photon occupation tuple.
struct FockBasisState {
  std::array<int, kModeCount> occupation{};

  /// The two occupied modes, repeated for a doubly occupied one, ascending.
  std::array<int, kPhotonCount> occupied_modes() const;

  /// Photon count in the given spatial arm.
  int photons_in(Spatial s) const;

  /// √(∏ n_a!) — the normalization of the corresponding creation monomial.
  double normalization() const;

  std::string to_string() const;

  friend bool operator==(const FockBasisState&, const FockBasisState&) = default;
};

/// The full two-photon basis in canonical (lexicographically descending)
/// order.  The returned array is a process-lifetime constant.
const std::array<FockBasisState, kFockDim>& enumerate_basis();

/// Canonical index of an occupation tuple; throws std::invalid_argument if
/// the tuple does not hold exactly two photons.
int basis_index(const FockBasisState& state);

/// A normalized two-photon pure state (amplitudes over enumerate_basis()).
class PureState {
 public:
  /// Validates ‖ψ‖ = 1 within 1e-10; throws std::invalid_argument otherwise.
  static PureState from_amplitudes(const Vec10& amplitudes);

  /// Rescales any nonzero vector to unit norm; throws on (near-)zero input.
  static PureState normalized(const Vec10& amplitudes);

  /// Basis vector |index⟩.
  static PureState basis_state(int index);

  const Vec10& amplitudes() const { return amplitudes_; }
  Complex amplitude(int index) const { return amplitudes_(index); }

 private:
  explicit PureState(Vec10 amplitudes) : amplitudes_(std::move(amplitudes)) {}
  Vec10 amplitudes_;
};

/// A density operator on the two-photon sector.
///
/// The checked factory verifies Hermiticity, positive semidefiniteness and
/// unit trace; `unchecked` skips the (eigenvalue-solve) validation for
/// matrices that are valid by construction, e.g. inside measurement and
/// trajectory loops.
class DensityOperator {
 public:
  static DensityOperator from_matrix(const Mat10& matrix);
  static DensityOperator from_pure(const PureState& psi);
  static DensityOperator unchecked(Mat10 matrix);

  const Mat10& matrix() const { return matrix_; }

  /// Re Tr(ρ M) for a Hermitian observable M.
  double expectation(const Mat10& observable) const;

 private:
  explicit DensityOperator(Mat10 matrix) : matrix_(std::move(matrix)) {}
  Mat10 matrix_;
};

/// A 4×4 single-particle (mode-space) unitary.  The factory rejects matrices
/// with unitarity residual ‖u†u − 1‖_F > 1e-8.
class SingleParticleUnitary {
 public:
  static SingleParticleUnitary from_matrix(const Mat4c& matrix);

  const Mat4c& matrix() const { return matrix_; }

  /// Composition: (*this) after `first`.
  SingleParticleUnitary after(const SingleParticleUnitary& first) const;

 private:
  explicit SingleParticleUnitary(Mat4c matrix) : matrix_(std::move(matrix)) {}
  Mat4c matrix_;
};

/// The 10×10 action of a single-particle unitary on the two-photon sector.
class TwoPhotonUnitary {
 public:
  static TwoPhotonUnitary from_matrix(const Mat10& matrix);

  const Mat10& matrix() const { return matrix_; }

  Vec10 apply(const Vec10& amplitudes) const { return matrix_ * amplitudes; }
  PureState apply(const PureState& psi) const;

 private:
  friend TwoPhotonUnitary lift_unitary(const SingleParticleUnitary&);
  explicit TwoPhotonUnitary(Mat10 matrix) : matrix_(std::move(matrix)) {}
  Mat10 matrix_;
};

/// Lifts a single-particle unitary u to the two-photon sector:
///   ⟨occ′|U|occ⟩ = per(u[occ′, occ]) / √(∏ occ_a! · ∏ occ′_a!)
/// where u[occ′, occ] is the 2×2 submatrix with rows (columns) given by the
/// occupied output (input) modes and per(·) is the matrix permanent.
TwoPhotonUnitary lift_unitary(const SingleParticleUnitary& u);

/// ρ ↦ U ρ U†.
DensityOperator apply_unitary(const DensityOperator& rho, const TwoPhotonUnitary& u);

/// ρ ↦ Σ K ρ K†.  Requires Σ K†K = 1 on the support of ρ within 1e-10
/// (Frobenius norm of (ΣK†K − 1)ρ); throws std::invalid_argument otherwise.
DensityOperator apply_kraus(const DensityOperator& rho, const std::vector<Mat10>& kraus);

/// The dual-rail 4×4 block of ρ (two-qubit order ↑↑, ↑↓, ↓↑, ↓↓) together
/// with its weight Tr(Π_dual-rail ρ).  The block is NOT renormalized.
struct DualRailBlock {
  Mat4c block;
  double weight = 0.0;
};

DualRailBlock dual_rail_block(const DensityOperator& rho);

/// Embeds a two-qubit density matrix (order ↑↑, ↑↓, ↓↑, ↓↓) into the
/// dual-rail subspace; validates it like DensityOperator::from_matrix.
DensityOperator embed_dual_rail(const Mat4c& two_qubit_density);

/// Symmetric 4×4 mode-pair amplitude matrix M of a pure state:
///   M_aa = c_aa/√2 and M_ab = M_ba = c_ab/2 for a≠b,
/// where c is the basis amplitude of the tuple occupying modes {a,b}.
/// Under a single-particle unitary u the state transforms as M ↦ u M uᵀ, and
/// ⟨ψ|ψ⟩ = 2 Tr(M M†), so rank(M) is invariant under all passive optics.
Mat4c amplitude_matrix(const PureState& psi);

/// Rank of a matrix by singular-value threshold (values > tol · σ_max count).
int matrix_rank(const Mat4c& m, double tol = 1e-8);

/// ⟨ψ|ρ|ψ⟩.
double fidelity(const DensityOperator& rho, const PureState& psi);

/// Trace distance ½‖ρ − σ‖₁ between two density operators.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

}  // namespace qdistill
