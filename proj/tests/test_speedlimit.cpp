// Copyright 2026 The qotc developers
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qotc/coherence.hpp"
#include "qotc/speedlimit.hpp"
#include "test_support.hpp"

using namespace qotc;
using qotc::testing::max_coherent;
using qotc::testing::plus_state;

TEST_CASE("time bound closed forms") {
  const PureState zero = PureState::basis_state(2, 0);
  const PureState one = PureState::basis_state(2, 1);
  CHECK(mandelstam_tamm_bound(zero, one, 2.0) == doctest::Approx(M_PI / 4.0).epsilon(1e-15));
  CHECK(mandelstam_tamm_bound(zero, zero, 1.0) == 0.0);
  CHECK(mandelstam_tamm_bound(zero, plus_state(), 1.0) ==
        doctest::Approx(M_PI / 4.0).epsilon(1e-12));
  CHECK_THROWS_AS(mandelstam_tamm_bound(zero, one, 0.0), ValidationError);
}

TEST_CASE("optimal generator for orthogonal qubit states is the rotation") {
  const PureState zero = PureState::basis_state(2, 0);
  const PureState one = PureState::basis_state(2, 1);
  const double omega = 1.7;
  const EvolutionSpec spec = optimal_hamiltonian(zero, one, omega);

  CMat expected(2, 2);
  expected << 0.0, Complex(0.0, -omega), Complex(0.0, omega), 0.0;
  CHECK(approx_equal(spec.hamiltonian, expected, 1e-12));
}

TEST_CASE("optimal generator properties on random pairs") {
  StateSampler sampler(211);
  for (int t = 0; t < 30; ++t) {
    const Index d = 2 + (t % 5);
    const PureState psi = sampler.pure_state(d);
    const PureState phi = sampler.pure_state(d);
    const double omega = 0.5 + sampler.uniform();
    const EvolutionSpec spec = optimal_hamiltonian(psi, phi, omega);

    CHECK(hermiticity_defect(spec.hamiltonian) <= 1e-10);
    const CVec& a = psi.amplitudes();
    const Complex mean = a.dot(spec.hamiltonian * a);
    CHECK(std::abs(mean) <= 1e-10);
    const double second_moment = (spec.hamiltonian * a).squaredNorm();
    CHECK(second_moment == doctest::Approx(omega * omega).epsilon(1e-9));
  }
}

TEST_CASE("optimal generator rejects identical states") {
  const PureState zero = PureState::basis_state(2, 0);
  CVec rotated(2);
  rotated << Complex(0.0, 1.0), 0.0;  // |0> up to global phase
  CHECK_THROWS_AS(optimal_hamiltonian(zero, PureState(rotated), 1.0), ValidationError);
}

TEST_CASE("evolution basics") {
  const PureState zero = PureState::basis_state(2, 0);
  const double omega = 2.0;
  CMat h(2, 2);
  h << 0.0, Complex(0.0, -omega), Complex(0.0, omega), 0.0;
  const EvolutionSpec spec{omega, h};

  CHECK(fidelity(evolve(zero, spec, 0.0), zero) == doctest::Approx(1.0).epsilon(1e-12));
  const PureState rotated = evolve(zero, spec, M_PI / (2.0 * omega));
  CHECK(fidelity(rotated, PureState::basis_state(2, 1)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  StateSampler sampler(223);
  for (int t = 0; t < 10; ++t) {
    const PureState psi = sampler.pure_state(4);
    const CMat hh = hermitian_part(sampler.ginibre_matrix(4, 4));
    const PureState out = evolve(psi, EvolutionSpec{1.0, hh}, 3.0 * sampler.uniform());
    CHECK(out.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("time to the nearest incoherent state") {
  CHECK(time_to_incoherent(PureState::basis_state(3, 2), 1.0).tau == 0.0);

  const SpeedLimitReport plus = time_to_incoherent(plus_state(), 1.0);
  CHECK(plus.tau == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
  CHECK(plus.target_index == 0);  // tie between |0> and |1| resolves low
  CHECK(plus.fidelity_at_tau >= 1.0 - 1e-7);

  const SpeedLimitReport triple = time_to_incoherent(max_coherent(3), 1.0);
  CHECK(triple.tau == doctest::Approx(std::asin(std::sqrt(2.0 / 3.0))).epsilon(1e-12));

  StateSampler sampler(227);
  for (int t = 0; t < 40; ++t) {
    const Index d = 2 + (t % 5);
    const double omega = 0.5 + sampler.uniform();
    const SpeedLimitReport rep = time_to_incoherent(sampler.pure_state(d), omega);
    CHECK(rep.fidelity_at_tau >= 1.0 - 1e-7);
    CHECK(rep.tau >= rep.bound_rhs - 1e-9);
    CHECK(std::abs(rep.tau - rep.bound_rhs) <= 1e-10);
  }
}

TEST_CASE("time from a coherence value") {
  CHECK(time_from_coherence(0.0, 1.0) == 0.0);
  CHECK(time_from_coherence(0.25, 1.0) == doctest::Approx(M_PI / 4.0).epsilon(1e-15));
  CHECK_THROWS_AS(time_from_coherence(0.6, 1.0), ValidationError);
  CHECK_THROWS_AS(time_from_coherence(-0.1, 1.0), ValidationError);
  CHECK_THROWS_AS(time_from_coherence(0.25, 0.0), ValidationError);
}

TEST_CASE("the two time formulas are one identity") {
  StateSampler sampler(229);
  for (int t = 0; t < 60; ++t) {
    const Index d = 2 + (t % 5);
    const double omega = 0.5 + sampler.uniform();
    const PureState psi = sampler.pure_state(d);
    const double direct = time_to_incoherent(psi, omega).tau;
    const double via_value = time_from_coherence(transport_coherence_pure(psi), omega);
    CHECK(std::abs(direct - via_value) <= 1e-12);
  }
}

TEST_CASE("more coherent states take longer to reach incoherence") {
  StateSampler sampler(233);
  for (int t = 0; t < 30; ++t) {
    const Index d = 2 + (t % 4);
    const PureState a = sampler.pure_state(d);
    const PureState b = sampler.pure_state(d);
    const double va = transport_coherence_pure(a), vb = transport_coherence_pure(b);
    const double ta = time_to_incoherent(a, 1.0).tau, tb = time_to_incoherent(b, 1.0).tau;
    if (va >= vb)
      CHECK(ta >= tb - 1e-12);
    else
      CHECK(tb >= ta - 1e-12);
  }
}
