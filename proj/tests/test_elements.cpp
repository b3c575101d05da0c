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

#include <cmath>
#include <set>

#include "qdistill/elements.hpp"
#include "support/oracles.hpp"

using namespace qdistill;

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec10 superposition(int i, int j, double sign) {
  Vec10 v = Vec10::Zero();
  v(i) = 1.0 / std::sqrt(2.0);
  v(j) = sign / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST_CASE("every element matrix is unitary") {
  const std::vector<ElementSpec> specs = {
      ElementSpec::beam_splitter(),
      ElementSpec::polarizing_beam_splitter(),
      ElementSpec::pips(0.7, Arm::L),
      ElementSpec::pips(kPi, Arm::R),
      ElementSpec::pdps(kPi, Arm::L, Polarization::Down),
      ElementSpec::pdps(1.3, Arm::R, Polarization::Up),
      ElementSpec::polarization_rotator(kPi / 2.0, Arm::L),
      ElementSpec::polarization_rotator(0.4, Arm::R),
      ElementSpec::polarization_rotator(kPi / 2.0, Arm::Both),
  };
  for (const auto& spec : specs) {
    const Mat4c u = make_element(spec).matrix();
    CHECK((u.adjoint() * u - Mat4c::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("beam splitter is the fixed symmetric 50:50 matrix") {
  const double s = 1.0 / std::sqrt(2.0);
  Mat4c expected;
  expected << s, 0, s, 0,  //
      0, s, 0, s,          //
      s, 0, -s, 0,         //
      0, s, 0, -s;
  const Mat4c u = make_element(ElementSpec::beam_splitter()).matrix();
  CHECK((u - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("beam splitter lift is an involution") {
  const TwoPhotonUnitary bs = lift_unitary(make_element(ElementSpec::beam_splitter()));
  const Mat10 square = bs.matrix() * bs.matrix();
  CHECK((square - Mat10::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("polarizing beam splitter passes up and swaps down") {
  const Mat4c u = make_element(ElementSpec::polarizing_beam_splitter()).matrix();
  Mat4c expected = Mat4c::Zero();
  expected(0, 0) = 1.0;  // L_up stays
  expected(2, 2) = 1.0;  // R_up stays
  expected(3, 1) = 1.0;  // L_dn -> R_dn
  expected(1, 3) = 1.0;  // R_dn -> L_dn
  CHECK((u - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("phase shifters place phases on the advertised modes") {
  const Complex phase = std::exp(Complex(0.0, 0.9));

  const Mat4c pips_l = make_element(ElementSpec::pips(0.9, Arm::L)).matrix();
  CHECK(std::abs(pips_l(0, 0) - phase) <= 1e-14);
  CHECK(std::abs(pips_l(1, 1) - phase) <= 1e-14);
  CHECK(std::abs(pips_l(2, 2) - 1.0) <= 1e-14);
  CHECK(std::abs(pips_l(3, 3) - 1.0) <= 1e-14);

  const Mat4c pdps_rd = make_element(ElementSpec::pdps(0.9, Arm::R, Polarization::Down)).matrix();
  CHECK(std::abs(pdps_rd(3, 3) - phase) <= 1e-14);
  CHECK(std::abs(pdps_rd(0, 0) - 1.0) <= 1e-14);
  CHECK(std::abs(pdps_rd(1, 1) - 1.0) <= 1e-14);
  CHECK(std::abs(pdps_rd(2, 2) - 1.0) <= 1e-14);

  // Off-diagonals vanish for all phase shifters.
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) {
        CHECK(std::abs(pips_l(i, j)) == 0.0);
        CHECK(std::abs(pdps_rd(i, j)) == 0.0);
      }
    }
  }
}

TEST_CASE("polarization rotator rotates within one arm") {
  const double a = 0.3;
  const Mat4c u = make_element(ElementSpec::polarization_rotator(a, Arm::R)).matrix();
  CHECK(std::abs(u(0, 0) - 1.0) <= 1e-14);
  CHECK(std::abs(u(1, 1) - 1.0) <= 1e-14);
  CHECK(std::abs(u(2, 2) - std::cos(a)) <= 1e-14);
  CHECK(std::abs(u(2, 3) - (-std::sin(a))) <= 1e-14);
  CHECK(std::abs(u(3, 2) - std::sin(a)) <= 1e-14);
  CHECK(std::abs(u(3, 3) - std::cos(a)) <= 1e-14);

  const Mat4c both = make_element(ElementSpec::polarization_rotator(a, Arm::Both)).matrix();
  CHECK(std::abs(both(0, 0) - std::cos(a)) <= 1e-14);
  CHECK(std::abs(both(0, 1) - (-std::sin(a))) <= 1e-14);
  CHECK(std::abs(both(2, 2) - std::cos(a)) <= 1e-14);
}

TEST_CASE("angles normalize into [0, 2pi)") {
  const ElementSpec wrapped = ElementSpec::pips(-kPi, Arm::L);
  CHECK(wrapped.angle == doctest::Approx(kPi).epsilon(1e-12));
  const ElementSpec big = ElementSpec::polarization_rotator(2.0 * kPi + 0.25, Arm::R);
  CHECK(big.angle == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("descriptions are stable strings") {
  CHECK(ElementSpec::beam_splitter().description() == "BS");
  CHECK(ElementSpec::polarizing_beam_splitter().description() == "PBS");
  CHECK(ElementSpec::pips(kPi / 2.0, Arm::L).description() == "PIPS(1.570796, L)");
  CHECK(ElementSpec::pdps(kPi, Arm::R, Polarization::Down).description() ==
        "PDPS(3.141593, R, dn)");
  CHECK(ElementSpec::polarization_rotator(kPi / 2.0, Arm::Both).description() ==
        "PR(1.570796, LR)");
}

TEST_CASE("canonical states are the documented superpositions") {
  const auto& states = canonical_states();
  REQUIRE(states.size() == 10);

  const auto check_state = [&](CanonicalTag tag, const std::string& name, int i, int j,
                               double sign) {
    const CanonicalState& s = canonical_state(tag);
    CHECK(s.name == name);
    CHECK(s.tag == tag);
    CHECK((s.state.amplitudes() - superposition(i, j, sign)).norm() <= 1e-14);
  };

  check_state(CanonicalTag::OneMinusLR, "1-LR", 3, 5, -1.0);
  check_state(CanonicalTag::OnePlusLR, "1+LR", 3, 5, 1.0);
  check_state(CanonicalTag::TwoMinusLR, "2-LR", 2, 6, -1.0);
  check_state(CanonicalTag::TwoPlusLR, "2+LR", 2, 6, 1.0);
  check_state(CanonicalTag::OneMinusNO, "1-NO", 1, 8, -1.0);
  check_state(CanonicalTag::OnePlusNO, "1+NO", 1, 8, 1.0);
  check_state(CanonicalTag::UMinusNO, "U-NO", 0, 7, -1.0);
  check_state(CanonicalTag::UPlusNO, "U+NO", 0, 7, 1.0);
  check_state(CanonicalTag::DMinusNO, "D-NO", 4, 9, -1.0);
  check_state(CanonicalTag::DPlusNO, "D+NO", 4, 9, 1.0);

  // All normalized, all names unique, each ∓ pair orthogonal.
  std::set<std::string> names;
  for (const auto& s : states) {
    CHECK(s.state.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
    names.insert(s.name);
  }
  CHECK(names.size() == 10);
  for (std::size_t k = 0; k + 1 < states.size(); k += 2) {
    const Complex overlap =
        (states[k].state.amplitudes().adjoint() * states[k + 1].state.amplitudes())(0);
    CHECK(std::abs(overlap) <= 1e-14);
  }
}

TEST_CASE("parse_canonical_name inverts the names") {
  for (const auto& s : canonical_states()) {
    const auto tag = parse_canonical_name(s.name);
    REQUIRE(tag.has_value());
    CHECK(*tag == s.tag);
  }
  CHECK(!parse_canonical_name("bogus").has_value());
  CHECK(!parse_canonical_name("").has_value());
  CHECK(!parse_canonical_name("1-lr").has_value());
}

TEST_CASE("sector projectors partition the space") {
  const Mat10& dual = dual_rail_projector();
  const Mat10& one_arm = one_arm_projector();
  CHECK((dual + one_arm - Mat10::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((dual * dual - dual).cwiseAbs().maxCoeff() == 0.0);
  CHECK((one_arm * one_arm - one_arm).cwiseAbs().maxCoeff() == 0.0);
  for (const int i : kDualRailIndices) CHECK(dual(i, i) == Complex(1.0, 0.0));
  CHECK(dual.diagonal().sum() == Complex(4.0, 0.0));
}

TEST_CASE("the beam splitter maps the canonical states as documented") {
  const TwoPhotonUnitary bs = lift_unitary(make_element(ElementSpec::beam_splitter()));
  const auto image = [&](CanonicalTag tag) { return bs.apply(canonical_state(tag).state); };

  // 1− is invariant up to sign; 1+ goes to the same-arm pair state; the
  // 2± states go to the all-up/all-down superpositions.
  const auto overlap = [](const PureState& a, const PureState& b) {
    return std::abs((a.amplitudes().adjoint() * b.amplitudes())(0));
  };
  CHECK(overlap(image(CanonicalTag::OneMinusLR), canonical_state(CanonicalTag::OneMinusLR).state) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(overlap(image(CanonicalTag::OnePlusLR), canonical_state(CanonicalTag::OneMinusNO).state) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const Vec10 two_minus_image =
      (canonical_state(CanonicalTag::UMinusNO).state.amplitudes() -
       canonical_state(CanonicalTag::DMinusNO).state.amplitudes()) /
      std::sqrt(2.0);
  CHECK(overlap(image(CanonicalTag::TwoMinusLR), PureState::from_amplitudes(two_minus_image)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const Vec10 two_plus_image =
      (canonical_state(CanonicalTag::UMinusNO).state.amplitudes() +
       canonical_state(CanonicalTag::DMinusNO).state.amplitudes()) /
      std::sqrt(2.0);
  CHECK(overlap(image(CanonicalTag::TwoPlusLR), PureState::from_amplitudes(two_plus_image)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}
