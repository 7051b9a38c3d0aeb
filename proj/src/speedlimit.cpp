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

#include "qotc/speedlimit.hpp"

#include <algorithm>
#include <cmath>

#include "qotc/linalg.hpp"

namespace qotc {

double mandelstam_tamm_bound(const PureState& phi1, const PureState& phi2,
                             double avg_energy_variance) {
  if (!(avg_energy_variance > 0.0))
    throw ValidationError("avg_energy_variance: bound undefined for variance <= 0");
  if (phi1.dim() != phi2.dim())
    throw ValidationError("phi2: dimension mismatch with phi1");
  const double f = std::min(fidelity(phi1, phi2), 1.0);
  return std::acos(f) / avg_energy_variance;
}

EvolutionSpec optimal_hamiltonian(const PureState& psi, const PureState& phi, double omega) {
  if (!(omega > 0.0)) throw ValidationError("omega: must be positive");
  if (psi.dim() != phi.dim()) throw ValidationError("phi: dimension mismatch with psi");
  const Complex raw_overlap = overlap(phi, psi);
  const double c = std::abs(raw_overlap);
  if (c >= 1.0 - 1e-12)
    throw ValidationError("phi: states identical up to phase, rotation direction undefined");

  // Global phase on psi making <phi|psi> real nonnegative.
  const Complex phase = c > 0.0 ? std::conj(raw_overlap) / c : Complex(1.0, 0.0);
  const CVec psi_adj = phase * psi.amplitudes();
  const CVec orth = (phi.amplitudes() - c * psi_adj) / std::sqrt(1.0 - c * c);

  const Complex minus_i(0.0, -1.0);
  CMat h = minus_i * omega *
           (psi_adj * orth.adjoint() - orth * psi_adj.adjoint());
  return EvolutionSpec{omega, std::move(h)};
}

PureState evolve(const PureState& psi, const EvolutionSpec& spec, double t) {
  if (t < 0.0) throw ValidationError("t: evolution time must be nonnegative");
  const HermitianEigen eig = eig_hermitian(spec.hamiltonian);
  CVec coeffs = eig.vectors.adjoint() * psi.amplitudes();
  for (Index k = 0; k < coeffs.size(); ++k) {
    const double angle = -eig.values(k) * t;
    coeffs(k) *= Complex(std::cos(angle), std::sin(angle));
  }
  CVec out = eig.vectors * coeffs;
  out /= out.norm();
  return PureState(std::move(out));
}

SpeedLimitReport time_to_incoherent(const PureState& psi, double omega) {
  if (!(omega > 0.0)) throw ValidationError("omega: must be positive");
  const Index target_index = psi.dominant_basis_index();
  const PureState target = PureState::basis_state(psi.dim(), target_index);
  const double max_weight = std::min(std::norm(psi.amplitudes()(target_index)), 1.0);

  SpeedLimitReport report{.tau = 0.0,
                          .target = target,
                          .target_index = target_index,
                          .fidelity_at_tau = 1.0,
                          .bound_rhs = 0.0};
  if (max_weight >= 1.0 - 1e-12) return report;  // already incoherent

  report.tau = std::asin(std::sqrt(1.0 - max_weight)) / omega;
  report.bound_rhs = mandelstam_tamm_bound(psi, target, omega);
  const EvolutionSpec spec = optimal_hamiltonian(psi, target, omega);
  report.fidelity_at_tau = fidelity(evolve(psi, spec, report.tau), target);
  return report;
}

double time_from_coherence(double t_value, double omega) {
  if (!(omega > 0.0)) throw ValidationError("omega: must be positive");
  if (t_value < -1e-12 || t_value > 0.5 + 1e-12)
    throw ValidationError("t_value: pure-state coherence must lie in [0, 1/2]");
  const double clamped = std::clamp(t_value, 0.0, 0.5);
  return std::asin(std::sqrt(2.0 * clamped)) / omega;
}

}  // namespace qotc
