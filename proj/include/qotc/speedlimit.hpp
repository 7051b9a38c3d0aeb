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

#include "qotc/types.hpp"

namespace qotc {

// Units: hbar = 1 throughout; omega carries 1/time.

struct EvolutionSpec {
  double omega = 1.0;
  CMat hamiltonian;
};

struct SpeedLimitReport {
  double tau = 0.0;
  PureState target;
  Index target_index = 0;
  double fidelity_at_tau = 1.0;
  double bound_rhs = 0.0;
};

/// Lower bound arccos(|<phi1|phi2>|) / variance on the evolution time between
/// two pure states.
double mandelstam_tamm_bound(const PureState& phi1, const PureState& phi2,
                             double avg_energy_variance);

/// Time-independent generator rotating psi toward phi along the geodesic in
/// their two-dimensional span; energy variance on psi equals omega, so the
/// time bound is saturated.
EvolutionSpec optimal_hamiltonian(const PureState& psi, const PureState& phi, double omega);

/// exp(-i H t) |psi> via the eigendecomposition of H.
PureState evolve(const PureState& psi, const EvolutionSpec& spec, double t);

/// Minimal unitary evolution time from psi to the nearest basis state, with
/// the saturating evolution evaluated as a fidelity check.
SpeedLimitReport time_to_incoherent(const PureState& psi, double omega = 1.0);

/// arcsin(sqrt(2 t)) / omega for a pure-state coherence value t in [0, 1/2].
double time_from_coherence(double t_value, double omega = 1.0);

}  // namespace qotc
