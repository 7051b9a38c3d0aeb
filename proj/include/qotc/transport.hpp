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

#include <vector>

#include "qotc/linalg.hpp"
#include "qotc/sdp.hpp"
#include "qotc/types.hpp"

namespace qotc {

/// Optimal pair (X_AB, Y_AB) for the revised transport cost, together with
/// the dual pair certifying the value from below.
struct CouplingWitness {
  BipartiteOperator x_ab;
  BipartiteOperator y_ab;
  double value = 0.0;
  CMat dual_h1;
  CMat dual_h2;
  double gap = 0.0;
  SdpStatus status = SdpStatus::NumericalFailure;
  std::vector<IterationStat> trace;
};

struct TransportResult {
  double value = 0.0;
  BipartiteOperator coupling;
  double gap = 0.0;
  SdpStatus status = SdpStatus::NumericalFailure;
  std::vector<IterationStat> trace;
};

struct DualCertificate {
  double value = 0.0;
  CMat h1;
  CMat h2;
  double gap = 0.0;
  // Smallest eigenvalue over both linear matrix inequalities, after the
  // feasibility repair shift; nonnegative up to roundoff.
  double min_lmi_eigenvalue = 0.0;
  SdpStatus status = SdpStatus::NumericalFailure;
  std::vector<IterationStat> trace;
};

/// True iff chi is a state whose reductions match (rho, sigma) within tol.
bool is_coupling(const BipartiteOperator& chi, const DensityMatrix& rho,
                 const DensityMatrix& sigma, double tol = 1e-8);

/// Minimum antisymmetric weight tr(chi P_a) over all couplings of (rho, sigma).
TransportResult transport_cost(const DensityMatrix& rho, const DensityMatrix& sigma,
                               const SolverConfig& config = {});

/// Revised transport cost: min tr(X P_s + Y P_a) over PSD pairs whose summed
/// reductions reproduce rho and sigma.
CouplingWitness revised_cost(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const SolverConfig& config = {});

/// Dual route: sup tr(rho H1 + sigma H2) subject to both LMIs
/// P_s - H1 (x) I - I (x) H2 >= 0 and P_a - H1 (x) I - I (x) H2 >= 0.
/// The returned pair is shifted to exact feasibility, so the value is a true
/// lower bound on the primal optimum.
DualCertificate revised_cost_dual(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  const SolverConfig& config = {});

/// Cross-check of the revised cost through the fixed-ancilla identity:
/// the plain transport cost of (rho (x) I2/2, sigma (x) I2/2).
TransportResult revised_cost_via_ancilla(const DensityMatrix& rho,
                                         const DensityMatrix& sigma,
                                         const SolverConfig& config = {});

}  // namespace qotc
