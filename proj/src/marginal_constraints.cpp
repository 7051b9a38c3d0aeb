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

#include "qotc/marginal_constraints.hpp"

namespace qotc {

namespace {

CMat basis_diag(Index d, Index i) {
  CMat g = CMat::Zero(d, d);
  g(i, i) = Complex(1.0, 0.0);
  return g;
}

CMat basis_real(Index d, Index i, Index j) {
  CMat g = CMat::Zero(d, d);
  g(i, j) = Complex(0.5, 0.0);
  g(j, i) = Complex(0.5, 0.0);
  return g;
}

CMat basis_imag(Index d, Index i, Index j) {
  CMat g = CMat::Zero(d, d);
  g(i, j) = Complex(0.0, 0.5);
  g(j, i) = Complex(0.0, -0.5);
  return g;
}

}  // namespace

std::vector<MarginalEquation> marginal_equations(const CMat& target,
                                                 MarginalEquation::Side side,
                                                 bool skip_last_diagonal) {
  const Index d = target.rows();
  std::vector<MarginalEquation> out;
  out.reserve(static_cast<std::size_t>(d * d));
  for (Index i = 0; i < d; ++i) {
    if (skip_last_diagonal && i == d - 1) continue;
    out.push_back({side, basis_diag(d, i), target(i, i).real()});
  }
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      out.push_back({side, basis_real(d, i, j), target(i, j).real()});
      out.push_back({side, basis_imag(d, i, j), target(i, j).imag()});
    }
  }
  return out;
}

std::vector<MarginalEquation> offdiagonal_zero_equations(Index d,
                                                         MarginalEquation::Side side) {
  std::vector<MarginalEquation> out;
  out.reserve(static_cast<std::size_t>(d * (d - 1)));
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      out.push_back({side, basis_real(d, i, j), 0.0});
      out.push_back({side, basis_imag(d, i, j), 0.0});
    }
  }
  return out;
}

std::vector<MarginalEquation> coupling_equations(const CMat& rho, const CMat& sigma) {
  auto out = marginal_equations(rho, MarginalEquation::Side::TraceOutB, false);
  const auto sigma_eqs =
      marginal_equations(sigma, MarginalEquation::Side::TraceOutA, true);
  out.insert(out.end(), sigma_eqs.begin(), sigma_eqs.end());
  return out;
}

std::vector<MarginalEquation> coherence_equations(const CMat& rho) {
  auto out = marginal_equations(rho, MarginalEquation::Side::TraceOutB, false);
  const auto offdiag =
      offdiagonal_zero_equations(rho.rows(), MarginalEquation::Side::TraceOutA);
  out.insert(out.end(), offdiag.begin(), offdiag.end());
  return out;
}

CMat lift_marginal(const MarginalEquation& eq, Index dim_a, Index dim_b) {
  return eq.side == MarginalEquation::Side::TraceOutB
             ? CMat(kron(eq.local, CMat(CMat::Identity(dim_b, dim_b))))
             : CMat(kron(CMat(CMat::Identity(dim_a, dim_a)), eq.local));
}

void assemble_duals(const std::vector<MarginalEquation>& equations, const RVec& multipliers,
                    CMat& h1, CMat& h2) {
  for (std::size_t k = 0; k < equations.size(); ++k) {
    CMat& h = equations[k].side == MarginalEquation::Side::TraceOutB ? h1 : h2;
    h += multipliers(static_cast<Index>(k)) * equations[k].local;
  }
}

}  // namespace qotc
