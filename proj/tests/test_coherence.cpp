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
#include "test_support.hpp"

using namespace qotc;
using qotc::testing::max_coherent;
using qotc::testing::plus_state;

TEST_CASE("diagonal states carry no coherence") {
  StateSampler sampler(101);
  for (Index d = 2; d <= 5; ++d) {
    const CoherenceResult res = transport_coherence(sampler.diagonal_state(d));
    CHECK(res.value <= 1e-7);
    CHECK(res.value >= -1e-9);
  }
}

TEST_CASE("pure-state closed form") {
  CHECK(transport_coherence_pure(PureState::basis_state(3, 1)) == 0.0);
  CHECK(transport_coherence_pure(plus_state()) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(transport_coherence_pure(max_coherent(3)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // Range: [0, (1 - 1/d)/2].
  StateSampler sampler(103);
  for (int t = 0; t < 50; ++t) {
    const Index d = 2 + (t % 5);
    const double v = transport_coherence_pure(sampler.pure_state(d));
    CHECK(v >= 0.0);
    CHECK(v <= 0.5 * (1.0 - 1.0 / double(d)) + 1e-15);
  }
}

TEST_CASE("geometric coherence is twice the transport value on pure states") {
  CHECK(geometric_coherence_pure(PureState::basis_state(2, 0)) == 0.0);
  CHECK(geometric_coherence_pure(plus_state()) == doctest::Approx(0.5).epsilon(1e-15));
  StateSampler sampler(107);
  for (int t = 0; t < 30; ++t) {
    const PureState psi = sampler.pure_state(2 + (t % 4));
    CHECK(geometric_coherence_pure(psi) == 2.0 * transport_coherence_pure(psi));
  }
}

TEST_CASE("SDP value agrees with the closed form on random pure states") {
  StateSampler sampler(109);
  double max_dev = 0.0;
  for (int t = 0; t < 20; ++t) {
    const PureState psi = sampler.pure_state(2 + (t % 4));
    const CoherenceResult res = transport_coherence(DensityMatrix::from_pure(psi));
    max_dev = std::max(max_dev, std::abs(res.value - transport_coherence_pure(psi)));
  }
  CHECK(max_dev <= 1e-6);
}

TEST_CASE("coherence result invariants") {
  StateSampler sampler(113);
  const DensityMatrix rho = sampler.density_matrix(3);
  const CoherenceResult res = transport_coherence(rho);

  CHECK(res.status == SdpStatus::Optimal);
  CHECK(res.value >= -1e-9);
  CHECK(res.value <= 0.5);
  CHECK(std::abs(res.value - res.witness.value) <= 1e-8);

  // The optimal diagonal state is exactly diagonal and is the trace-out-A
  // reduction of the witness pair.
  CHECK(res.optimal_delta.max_offdiagonal() == 0.0);
  const CMat sum = res.witness.x_ab.matrix() + res.witness.y_ab.matrix();
  CHECK(max_abs_diff(partial_trace(sum, Subsystem::B), rho.matrix()) <= 1e-6);
  CHECK(max_abs_diff(partial_trace(sum, Subsystem::A), res.optimal_delta.matrix()) <= 1e-6);
}

TEST_CASE("counterexample values for the block-diagonal mixture") {
  CHECK(transport_coherence(counterexample_rho1()).value ==
        doctest::Approx(0.25).epsilon(1e-6));
  CHECK(transport_coherence(counterexample_rho2()).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-6));

  const CounterexampleReport report = block_additivity_counterexample();
  CHECK(report.all_pass);
  CHECK(report.weighted_average == doctest::Approx(7.0 / 24.0).epsilon(1e-6));
  CHECK(std::abs(report.witness_value - 0.25) <= 1e-10);
  CHECK(report.t_mixture <= 0.25 + 1e-6);
  CHECK(report.t_mixture < 7.0 / 24.0 - 1e-3);
}

TEST_CASE("coherence is invariant under incoherent unitaries") {
  StateSampler sampler(127);
  const DensityMatrix rho = sampler.density_matrix(3);
  const double base = transport_coherence(rho).value;

  const IncoherentChannel unitary = sample_incoherent_channel(3, 1, 1234);
  CHECK(unitary.kraus_operators.size() == 1);
  const DensityMatrix rotated = unitary.apply(rho);
  CHECK(std::abs(transport_coherence(rotated).value - base) <= 1e-7);
}

TEST_CASE("coherence is monotone under sampled incoherent channels") {
  StateSampler sampler(131);
  for (int t = 0; t < 4; ++t) {
    const Index d = 2 + (t % 3);
    const DensityMatrix rho = sampler.density_matrix(d);
    const IncoherentChannel channel = sample_incoherent_channel(d, 2 + (t % 3), 400 + t);
    const double before = transport_coherence(rho).value;
    const double after = transport_coherence(channel.apply(rho)).value;
    CHECK(after <= before + 1e-6);
  }
}

TEST_CASE("coherence is convex under mixing") {
  StateSampler sampler(137);
  for (int t = 0; t < 3; ++t) {
    const Index d = 2 + (t % 2);
    const RVec p = sampler.probability_vector(3);
    CMat mix = CMat::Zero(d, d);
    double average = 0.0;
    for (int i = 0; i < 3; ++i) {
      const DensityMatrix part = sampler.density_matrix(d);
      mix += p(i) * part.matrix();
      average += p(i) * transport_coherence(part).value;
    }
    CHECK(transport_coherence(DensityMatrix(mix)).value <= average + 1e-6);
  }
}

TEST_CASE("coherence is subadditive on product states") {
  StateSampler sampler(139);
  for (int t = 0; t < 3; ++t) {
    const DensityMatrix rho = sampler.density_matrix(2);
    const DensityMatrix sigma = sampler.density_matrix(2);
    const DensityMatrix product(kron(rho.matrix(), sigma.matrix()));
    CHECK(transport_coherence(product).value <= transport_coherence(rho).value +
                                                    transport_coherence(sigma).value + 1e-6);
  }
}

TEST_CASE("incoherent channel sampling is trace preserving and incoherent") {
  for (int t = 0; t < 6; ++t) {
    const Index d = 2 + (t % 4);
    const int n_kraus = 1 + (t % 3);
    const IncoherentChannel channel = sample_incoherent_channel(d, n_kraus, 700 + t);
    CHECK(channel.completeness_residual() <= 1e-9);

    // Every Kraus operator maps each basis projector to a diagonal matrix.
    for (const CMat& k : channel.kraus_operators) {
      for (Index b = 0; b < d; ++b) {
        const CMat image =
            k * PureState::basis_state(d, b).projector() * k.adjoint();
        for (Index i = 0; i < d; ++i)
          for (Index j = 0; j < d; ++j)
            if (i != j) CHECK(std::abs(image(i, j)) == 0.0);
      }
    }

    StateSampler sampler(800 + t);
    const DensityMatrix diag = sampler.diagonal_state(d);
    CHECK(channel.apply(diag).max_offdiagonal() <= 1e-15);
  }
}

TEST_CASE("single-Kraus incoherent channels are unitary") {
  const IncoherentChannel channel = sample_incoherent_channel(4, 1, 42);
  const CMat& k = channel.kraus_operators[0];
  CHECK(max_abs_diff(CMat(k.adjoint() * k), CMat(CMat::Identity(4, 4))) <= 1e-12);
  CHECK(max_abs_diff(CMat(k * k.adjoint()), CMat(CMat::Identity(4, 4))) <= 1e-12);
}

TEST_CASE("channel sampling validates arguments") {
  CHECK_THROWS_AS(sample_incoherent_channel(1, 2, 0), ValidationError);
  CHECK_THROWS_AS(sample_incoherent_channel(3, 0, 0), ValidationError);
}

TEST_CASE("convex roof collapses to the closed form on pure states") {
  StateSampler sampler(149);
  RoofConfig cfg;
  cfg.starts = 4;
  for (int t = 0; t < 6; ++t) {
    const PureState psi = sampler.pure_state(2 + (t % 4));
    const RoofResult roof = convex_roof_coherence(DensityMatrix::from_pure(psi), cfg);
    CHECK(std::abs(roof.value - transport_coherence_pure(psi)) <= 1e-7);
    CHECK(max_abs_diff(roof.decomposition.reconstruct(psi.dim()), psi.projector()) <= 1e-8);
  }
}

TEST_CASE("convex roof finds incoherent decompositions of diagonal states") {
  RoofConfig cfg;
  cfg.seed = 7;
  const RoofResult half = convex_roof_coherence(DensityMatrix::maximally_mixed(2), cfg);
  CHECK(half.value <= 1e-6);
  CHECK(max_abs_diff(half.decomposition.reconstruct(2), CMat(0.5 * CMat::Identity(2, 2))) <=
        1e-8);

  // The equal mixture of |+> and |-> is the same state and must also reach 0.
  CMat mix = 0.5 * qotc::testing::plus_state().projector() +
             0.5 * qotc::testing::minus_state().projector();
  CHECK(convex_roof_coherence(DensityMatrix(mix), cfg).value <= 1e-6);

  StateSampler sampler(151);
  const RoofResult diag3 = convex_roof_coherence(sampler.diagonal_state(3), cfg);
  CHECK(diag3.value <= 1e-6);
}

TEST_CASE("convex roof is bounded by the eigen-ensemble and dominates the quantifier") {
  StateSampler sampler(157);
  RoofConfig cfg;
  cfg.starts = 12;
  for (int t = 0; t < 4; ++t) {
    const Index d = 2 + (t % 2);
    const DensityMatrix rho = sampler.density_matrix(d);
    const HermitianEigen eig = eig_hermitian(rho.matrix());
    double eigen_average = 0.0;
    for (Index j = 0; j < d; ++j) {
      if (eig.values(j) <= 1e-14) continue;
      eigen_average += eig.values(j) * transport_coherence_pure(PureState(
                                           eig.vectors.col(j), 1e-6));
    }
    const RoofResult roof = convex_roof_coherence(rho, cfg);
    CHECK(roof.value <= eigen_average + 1e-9);
    CHECK(roof.value >= transport_coherence(rho).value - 1e-6);
    CHECK(max_abs_diff(roof.decomposition.reconstruct(d), rho.matrix()) <= 1e-8);
  }
}

TEST_CASE("convex roof search is deterministic in the master seed") {
  StateSampler sampler(163);
  const DensityMatrix rho = sampler.density_matrix(3);
  RoofConfig cfg;
  cfg.seed = 99;
  cfg.starts = 8;
  const RoofResult a = convex_roof_coherence(rho, cfg);
  const RoofResult b = convex_roof_coherence(rho, cfg);
  CHECK(a.value == b.value);
  CHECK(a.converged_starts == b.converged_starts);
}
