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
#include "qotc/types.hpp"

namespace qotc {

/// One real linear equation on a bipartite operator, expressed through a
/// Hermitian basis element G on one factor: tr((G (x) I) chi) = rhs pins an
/// entry of the trace-out-B reduction, tr((I (x) G) chi) = rhs of the
/// trace-out-A reduction.
struct MarginalEquation {
  enum class Side { TraceOutB, TraceOutA };
  Side side;
  CMat local;
  double rhs;
};

/// Real/imaginary Hermitian basis equations pinning a full d x d reduction to
/// `target`. Order: diagonal entries, then (re, im) per off-diagonal pair.
std::vector<MarginalEquation> marginal_equations(const CMat& target,
                                                 MarginalEquation::Side side,
                                                 bool skip_last_diagonal);

/// Equations forcing the off-diagonal entries of a reduction to vanish.
std::vector<MarginalEquation> offdiagonal_zero_equations(Index d,
                                                         MarginalEquation::Side side);

/// Constraint set for a coupling problem: the trace-out-B reduction equals
/// rho (all d^2 equations) and the trace-out-A reduction equals sigma with
/// the redundant final diagonal equation dropped (both total traces agree).
std::vector<MarginalEquation> coupling_equations(const CMat& rho, const CMat& sigma);

/// Constraint set leaving the trace-out-A reduction a free diagonal state:
/// trace-out-B pinned to rho, trace-out-A off-diagonals zero. The unit trace
/// of the free diagonal is implied by the rho-side equations.
std::vector<MarginalEquation> coherence_equations(const CMat& rho);

/// Coefficient matrix on the (dim_a * dim_b)-dimensional product space:
/// G (x) I_{dim_b} or I_{dim_a} (x) G.
CMat lift_marginal(const MarginalEquation& eq, Index dim_a, Index dim_b);

/// Accumulates constraint multipliers into the dual pair: equations on the
/// trace-out-B side contribute to h1, the others to h2.
void assemble_duals(const std::vector<MarginalEquation>& equations, const RVec& multipliers,
                    CMat& h1, CMat& h2);

}  // namespace qotc
