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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qotc/transport.hpp"
#include "qotc/types.hpp"

namespace qotc {

/// Result of minimizing the revised transport cost between rho and the set of
/// diagonal states. The optimal diagonal state is constrained exactly, not
/// approximated from a nearly diagonal reduction.
struct CoherenceResult {
  double value = 0.0;
  DensityMatrix optimal_delta;
  CouplingWitness witness;
  double gap = 0.0;
  SdpStatus status = SdpStatus::NumericalFailure;
};

/// Coherence quantifier as a single SDP: the diagonal target is a constrained
/// variable (reduction of X + Y with vanishing off-diagonals), so no outer
/// minimization over diagonal states is needed.
CoherenceResult transport_coherence(const DensityMatrix& rho, const SolverConfig& config = {});

/// Closed form for pure states: (1 - max_i |amplitude_i|^2) / 2.
double transport_coherence_pure(const PureState& phi);

/// Geometric coherence of a pure state: 1 - max_i |amplitude_i|^2; twice the
/// transport value.
double geometric_coherence_pure(const PureState& phi);

/// Ensemble rho = sum_i p_i |phi_i><phi_i|.
struct Decomposition {
  RVec weights;
  std::vector<PureState> states;

  CMat reconstruct(Index dim) const;
};

struct RoofConfig {
  Index ensemble_size = 0;  // 0: dim * rank, capped at dim^2
  int starts = 32;
  std::uint64_t seed = 0;
  int max_iters = 300;
  double smoothing_temperature = 200.0;  // soft-max sharpness during search
};

struct RoofResult {
  double value = 0.0;
  Decomposition decomposition;
  int converged_starts = 0;
};

/// Convex-roof extension: minimize the ensemble average of the pure-state
/// value over all decompositions of rho. Decompositions are parametrized by
/// isometries acting on the eigen-ensemble; multi-start local search with
/// polar retraction. Search uses a smoothed maximum; reported values are
/// evaluated exactly.
RoofResult convex_roof_coherence(const DensityMatrix& rho, const RoofConfig& config = {});

/// Channel whose Kraus operators map diagonal states to diagonal states.
struct IncoherentChannel {
  std::vector<CMat> kraus_operators;

  CMat apply_matrix(const CMat& m) const;
  DensityMatrix apply(const DensityMatrix& rho) const;
  double completeness_residual() const;  // ||sum K^dag K - I||_max
};

/// Kraus operators of the form (diagonal contraction) * (permutation),
/// rescaled so the channel is trace preserving. Each operator maps the
/// diagonal set into itself by construction.
IncoherentChannel sample_incoherent_channel(Index d, int n_kraus, std::uint64_t seed);

struct CounterexampleCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool upper_bound = true;  // pass iff measured <= bound (else measured >= bound)
  bool pass = false;
};

struct CounterexampleReport {
  double t_rho1 = 0.0;          // quantifier value for the first block state
  double t_rho2 = 0.0;          // and for the second
  double weighted_average = 0.0;
  double witness_value = 0.0;   // objective of the explicit feasible pair
  double t_mixture = 0.0;       // SDP value for the block-diagonal mixture
  std::vector<CounterexampleCheck> checks;
  bool all_pass = false;
};

// The dimension-5 additivity counterexample: an equal mixture of a two-level
// and a three-level maximally coherent state on disjoint basis supports.
DensityMatrix counterexample_rho1();
DensityMatrix counterexample_rho2();
DensityMatrix counterexample_mixture();

struct CounterexampleWitness {
  BipartiteOperator x_ab;
  BipartiteOperator y_ab;
  DensityMatrix delta;
};
CounterexampleWitness counterexample_witness();

/// Evaluates the counterexample showing the quantifier is not additive on
/// block-diagonal states: the mixture's value stays at or below the explicit
/// witness objective, strictly under the weighted average of the blocks.
CounterexampleReport block_additivity_counterexample(const SolverConfig& config = {});

}  // namespace qotc
