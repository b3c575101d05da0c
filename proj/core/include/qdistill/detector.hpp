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

#include <optional>
#include <string>

#include "qdistill/fock.hpp"

/// The non-absorbing photon-number parity detector.
///
/// The ideal detector projects onto the parity of the photon number in one
/// spatial arm without absorbing photons: odd parity means one photon per
/// arm (the dual-rail sector), even parity means both photons in the same
/// arm (including the empty monitored arm).  With two photons total, the
/// parities of the two arms coincide, so the choice of monitored arm does
/// not change the projectors — it is recorded for bookkeeping only.
///
/// A faulty detector performs the ideal non-demolition projection and then
/// misreports the outcome classically: odd is reported even with
/// probability ε, even is reported odd with probability ε′.  Reported
/// probabilities and post-measurement states are mixed accordingly.
namespace qdistill {

enum class Parity { Odd, Even };

std::string parity_name(Parity p);

struct DetectorSpec {
  Spatial monitored = Spatial::L;
  double eps = 0.0;        ///< P(report even | true odd)
  double eps_prime = 0.0;  ///< P(report odd | true even)

  /// Throws std::invalid_argument unless both rates lie in [0, 1].
  void validate() const;
};

/// One reported branch: its probability and the renormalized post state
/// (absent when the branch probability is below 1e-12).
struct MeasurementBranch {
  Parity reported = Parity::Odd;
  double probability = 0.0;
  std::optional<DensityOperator> post_state;
};

struct ParityMeasurement {
  MeasurementBranch odd;
  MeasurementBranch even;
};

/// Spatial parity projector: odd = dual-rail sector, even = one-arm sector.
const Mat10& parity_projector(Parity p);

/// Projector onto odd/even photon number in the single mode (arm, pol).
Mat10 polarized_parity_projector(Spatial arm, Polarization polarization, Parity p);

/// Measures arm-photon-number parity with the (possibly faulty) detector.
ParityMeasurement measure_parity(const DensityOperator& rho, const DetectorSpec& detector);

/// Measures the photon-number parity of one polarization mode (ideal,
/// non-absorbing).  Used by the detector-assisted conversion recipes.
ParityMeasurement measure_polarized_parity(const DensityOperator& rho, Spatial arm,
                                           Polarization polarization);

}  // namespace qdistill
