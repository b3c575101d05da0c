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

#include "qdistill/detector.hpp"

#include <stdexcept>

#include "qdistill/elements.hpp"

namespace qdistill {

namespace {

/// Branches with probability below this are reported with no post state.
constexpr double kBranchProbabilityFloor = 1e-12;

MeasurementBranch make_branch(Parity reported, double probability, const Mat10& unnormalized) {
  MeasurementBranch branch;
  branch.reported = reported;
  branch.probability = probability;
  if (probability >= kBranchProbabilityFloor) {
    branch.post_state = DensityOperator::unchecked(unnormalized / probability);
  }
  return branch;
}

}  // namespace

std::string parity_name(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

void DetectorSpec::validate() const {
  if (eps < 0.0 || eps > 1.0 || eps_prime < 0.0 || eps_prime > 1.0) {
    throw std::invalid_argument("detector error rates must lie in [0, 1]");
  }
}

const Mat10& parity_projector(Parity p) {
  return p == Parity::Odd ? dual_rail_projector() : one_arm_projector();
}

Mat10 polarized_parity_projector(Spatial arm, Polarization polarization, Parity p) {
  const int mode = mode_index(arm, polarization);
  const bool want_odd = p == Parity::Odd;
  Mat10 projector = Mat10::Zero();
  const auto& basis = enumerate_basis();
  for (int i = 0; i < kFockDim; ++i) {
    const int n = basis[static_cast<std::size_t>(i)].occupation[static_cast<std::size_t>(mode)];
    if ((n % 2 == 1) == want_odd) projector(i, i) = Complex(1.0, 0.0);
  }
  return projector;
}

ParityMeasurement measure_parity(const DensityOperator& rho, const DetectorSpec& detector) {
  detector.validate();
  const Mat10& p_odd = parity_projector(Parity::Odd);
  const Mat10& p_even = parity_projector(Parity::Even);

  // Ideal non-demolition projection first...
  const Mat10 odd_part = p_odd * rho.matrix() * p_odd;
  const Mat10 even_part = p_even * rho.matrix() * p_even;
  const double w_odd = odd_part.trace().real();
  const double w_even = even_part.trace().real();

  // ...then the classical misreport mixes the branches.
  const double eps = detector.eps;
  const double eps_prime = detector.eps_prime;
  const double p_report_odd = (1.0 - eps) * w_odd + eps_prime * w_even;
  const double p_report_even = eps * w_odd + (1.0 - eps_prime) * w_even;

  ParityMeasurement result;
  result.odd = make_branch(Parity::Odd, p_report_odd,
                           (1.0 - eps) * odd_part + eps_prime * even_part);
  result.even = make_branch(Parity::Even, p_report_even,
                            eps * odd_part + (1.0 - eps_prime) * even_part);
  return result;
}

ParityMeasurement measure_polarized_parity(const DensityOperator& rho, Spatial arm,
                                           Polarization polarization) {
  const Mat10 proj_odd = polarized_parity_projector(arm, polarization, Parity::Odd);
  const Mat10 proj_even = polarized_parity_projector(arm, polarization, Parity::Even);
  const Mat10 odd_part = proj_odd * rho.matrix() * proj_odd;
  const Mat10 even_part = proj_even * rho.matrix() * proj_even;

  ParityMeasurement result;
  result.odd = make_branch(Parity::Odd, odd_part.trace().real(), odd_part);
  result.even = make_branch(Parity::Even, even_part.trace().real(), even_part);
  return result;
}

}  // namespace qdistill
