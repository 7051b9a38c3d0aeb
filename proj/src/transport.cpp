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

#include "qotc/transport.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qotc/marginal_constraints.hpp"

namespace qotc {

namespace {

void require_equal_dims(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw ValidationError("sigma: dimension " + std::to_string(sigma.dim()) +
                          " does not match rho dimension " + std::to_string(rho.dim()));
}

void require_solved(const SdpSolution& sol, const char* what) {
  if (sol.status == SdpStatus::Infeasible || sol.status == SdpStatus::NumericalFailure)
    throw SolverError(sol.status, std::string(what) + ": solver failed with status " +
                                      to_string(sol.status));
}

// States with rank-deficient inputs give the marginal constraints an empty
// interior (no strictly feasible pair exists), which stalls the interior
// point far from tolerance. Compressing each side onto the support of its
// state restores strict feasibility without changing the optimum: any PSD
// operator whose reduction is dominated by rho lives on supp(rho) (x) H_B.
struct SupportReduction {
  Index d = 0;         // original local dimension
  Index ra = 0;        // support ranks
  Index rb = 0;
  CMat basis_a;        // full orthonormal basis, support columns first
  CMat basis_b;
  CMat rho_reduced;    // ra x ra compression of rho
  CMat sigma_reduced;  // rb x rb
  CMat sym_reduced;    // compressed projectors on the reduced product space
  CMat asym_reduced;
  CMat lift;           // kron(U, V), d^2 x (ra*rb)

  bool trivial() const { return ra == d && rb == d; }
  CMat isometry_a() const { return basis_a.leftCols(ra); }
  CMat isometry_b() const { return basis_b.leftCols(rb); }
};

Index support_rank(const RVec& eigenvalues_descending) {
  const double cut = std::max(eigenvalues_descending(0) * 1e-12, 1e-14);
  Index r = 0;
  while (r < eigenvalues_descending.size() && eigenvalues_descending(r) > cut) ++r;
  return std::max<Index>(r, 1);
}

SupportReduction reduce_supports(const DensityMatrix& rho, const DensityMatrix& sigma) {
  SupportReduction red;
  red.d = rho.dim();
  const HermitianEigen ea = eig_hermitian(rho.matrix());
  const HermitianEigen eb = eig_hermitian(sigma.matrix());
  red.ra = support_rank(ea.values);
  red.rb = support_rank(eb.values);
  // Full-rank sides keep the computational basis so the well-posed path is
  // untouched.
  red.basis_a = red.ra == red.d ? CMat(CMat::Identity(red.d, red.d)) : ea.vectors;
  red.basis_b = red.rb == red.d ? CMat(CMat::Identity(red.d, red.d)) : eb.vectors;
  const CMat u = red.basis_a.leftCols(red.ra);
  const CMat v = red.basis_b.leftCols(red.rb);
  red.rho_reduced = u.adjoint() * rho.matrix() * u;
  red.sigma_reduced = v.adjoint() * sigma.matrix() * v;
  red.lift = kron(u, v);
  red.sym_reduced = red.lift.adjoint() * sym_projector(red.d).matrix() * red.lift;
  red.asym_reduced = red.lift.adjoint() * asym_projector(red.d).matrix() * red.lift;
  red.sym_reduced = hermitian_part(red.sym_reduced);
  red.asym_reduced = hermitian_part(red.asym_reduced);
  return red;
}

// Dual pair lifted back to the full space. On a compressed side the
// complement is filled with a large negative multiple of the identity, which
// keeps both linear matrix inequalities satisfiable while leaving the dual
// objective essentially unchanged (the state has no mass there).
constexpr double kComplementFillScale = 1e7;

struct LiftedDuals {
  CMat h1;
  CMat h2;
};

double complement_fill(const CMat& h1_reduced, const CMat& h2_reduced) {
  return -kComplementFillScale * (1.0 + h1_reduced.norm() + h2_reduced.norm());
}

LiftedDuals lift_duals(const SupportReduction& red, const CMat& h1_reduced,
                       const CMat& h2_reduced, double fill) {
  LiftedDuals out;
  const CMat u = red.isometry_a();
  const CMat v = red.isometry_b();
  out.h1 = u * h1_reduced * u.adjoint();
  out.h2 = v * h2_reduced * v.adjoint();
  if (red.ra < red.d)
    out.h1 += fill * (CMat::Identity(red.d, red.d) - u * u.adjoint());
  if (red.rb < red.d)
    out.h2 += fill * (CMat::Identity(red.d, red.d) - v * v.adjoint());
  return out;
}

// Certified lower bound on the smallest eigenvalue of
//   P - H1 (x) I - I (x) H2
// for the lifted dual pair. In the split basis (support pairs first) the
// Kronecker sum is block diagonal, so the full matrix is [[A, B], [B^dag, D]]
// with A the compressed LMI and D dominated by the complement fill; the bound
// is the smallest eigenvalue of the 2x2 pencil formed from lambda_min(A),
// lambda_min(D), and ||B||_2. Everything is evaluated at order-one scale, so
// the bound stays sharp where a direct eigensolve of the filled matrix would
// drown in roundoff. Trivial reductions collapse to a plain eigensolve.
double lmi_mineig_bound(const CMat& p_full, const SupportReduction& red,
                        const CMat& h1_reduced, const CMat& h2_reduced, double fill) {
  const CMat p_rot = red.trivial()
                         ? p_full
                         : CMat(kron(red.basis_a, red.basis_b).adjoint() * p_full *
                                kron(red.basis_a, red.basis_b));
  const Index k = red.ra * red.rb;

  // Indices of support pairs inside the rotated full space.
  std::vector<Index> keep;
  keep.reserve(k);
  std::vector<Index> drop;
  for (Index i = 0; i < red.d; ++i)
    for (Index j = 0; j < red.d; ++j)
      (i < red.ra && j < red.rb ? keep : drop).push_back(i * red.d + j);

  const CMat h_sum = kron(h1_reduced, CMat(CMat::Identity(red.rb, red.rb))) +
                     kron(CMat(CMat::Identity(red.ra, red.ra)), h2_reduced);
  CMat a(k, k);
  for (Index r = 0; r < k; ++r)
    for (Index c = 0; c < k; ++c) a(r, c) = p_rot(keep[r], keep[c]);
  a -= h_sum;
  const double lambda_a = min_eigenvalue(a);
  if (drop.empty()) return lambda_a;

  CMat b(k, static_cast<Index>(drop.size()));
  for (Index r = 0; r < k; ++r)
    for (std::size_t c = 0; c < drop.size(); ++c)
      b(r, static_cast<Index>(c)) = p_rot(keep[r], drop[c]);
  const double b_norm = b.rows() * b.cols() == 0 ? 0.0 : b.operatorNorm();

  // Every complement pair picks up at least one fill contribution of -fill;
  // the compressed duals and ||P|| <= 1 bound the rest.
  const double lambda_d =
      -fill - h1_reduced.norm() - h2_reduced.norm() - 1.0;
  const double mid = 0.5 * (lambda_a + lambda_d);
  const double half = 0.5 * (lambda_a - lambda_d);
  return mid - std::sqrt(half * half + b_norm * b_norm);
}

struct RevisedSolve {
  SdpSolution solution;
  std::vector<MarginalEquation> equations;
  SupportReduction reduction;
};

RevisedSolve solve_revised(const DensityMatrix& rho, const DensityMatrix& sigma,
                           const SolverConfig& config, const char* what) {
  RevisedSolve out;
  out.reduction = reduce_supports(rho, sigma);
  const SupportReduction& red = out.reduction;

  SdpProblem problem;
  problem.blocks = {{"sym_part", red.ra * red.rb}, {"asym_part", red.ra * red.rb}};
  problem.objective = {red.sym_reduced, red.asym_reduced};
  out.equations = coupling_equations(red.rho_reduced, red.sigma_reduced);
  for (const auto& eq : out.equations) {
    const CMat a = lift_marginal(eq, red.ra, red.rb);
    problem.constraints.push_back({{{0, a}, {1, a}}, eq.rhs});
  }
  out.solution = solve(problem, config);
  require_solved(out.solution, what);
  return out;
}

}  // namespace

bool is_coupling(const BipartiteOperator& chi, const DensityMatrix& rho,
                 const DensityMatrix& sigma, double tol) {
  if (chi.local_dim() != rho.dim() || chi.local_dim() != sigma.dim()) return false;
  const CMat& m = chi.matrix();
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol) return false;
  if (hermiticity_defect(m) > tol) return false;
  if (min_eigenvalue(m) < -tol) return false;
  return approx_equal(partial_trace(m, Subsystem::B), rho.matrix(), tol) &&
         approx_equal(partial_trace(m, Subsystem::A), sigma.matrix(), tol);
}

TransportResult transport_cost(const DensityMatrix& rho, const DensityMatrix& sigma,
                               const SolverConfig& config) {
  require_equal_dims(rho, sigma);
  const Index d = rho.dim();
  const SupportReduction red = reduce_supports(rho, sigma);

  SdpProblem problem;
  problem.blocks = {{"coupling", red.ra * red.rb}};
  problem.objective = {red.asym_reduced};
  const auto equations = coupling_equations(red.rho_reduced, red.sigma_reduced);
  for (const auto& eq : equations)
    problem.constraints.push_back({{{0, lift_marginal(eq, red.ra, red.rb)}}, eq.rhs});

  const SdpSolution sol = solve(problem, config);
  require_solved(sol, "transport_cost");

  CMat chi = red.trivial() ? sol.block_values[0]
                           : CMat(red.lift * sol.block_values[0] * red.lift.adjoint());
  TransportResult out{.value = 0.0,
                      .coupling = BipartiteOperator(d, hermitian_part(chi)),
                      .gap = sol.gap,
                      .status = sol.status,
                      .trace = sol.trace};
  out.value = (out.coupling.matrix() * asym_projector(d).matrix()).trace().real();
  return out;
}

CouplingWitness revised_cost(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const SolverConfig& config) {
  require_equal_dims(rho, sigma);
  const Index d = rho.dim();
  const RevisedSolve rs = solve_revised(rho, sigma, config, "revised_cost");
  const SupportReduction& red = rs.reduction;

  CMat x = rs.solution.block_values[0];
  CMat y = rs.solution.block_values[1];
  if (!red.trivial()) {
    x = red.lift * x * red.lift.adjoint();
    y = red.lift * y * red.lift.adjoint();
  }

  CMat h1_reduced = CMat::Zero(red.ra, red.ra);
  CMat h2_reduced = CMat::Zero(red.rb, red.rb);
  assemble_duals(rs.equations, rs.solution.dual_values, h1_reduced, h2_reduced);
  const LiftedDuals duals =
      lift_duals(red, h1_reduced, h2_reduced, complement_fill(h1_reduced, h2_reduced));

  CouplingWitness w{.x_ab = BipartiteOperator(d, hermitian_part(x)),
                    .y_ab = BipartiteOperator(d, hermitian_part(y)),
                    .value = 0.0,
                    .dual_h1 = duals.h1,
                    .dual_h2 = duals.h2,
                    .gap = rs.solution.gap,
                    .status = rs.solution.status,
                    .trace = rs.solution.trace};
  w.value = (w.x_ab.matrix() * sym_projector(d).matrix() +
             w.y_ab.matrix() * asym_projector(d).matrix())
                .trace()
                .real();
  return w;
}

DualCertificate revised_cost_dual(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  const SolverConfig& config) {
  require_equal_dims(rho, sigma);
  const Index d = rho.dim();
  const RevisedSolve rs = solve_revised(rho, sigma, config, "revised_cost_dual");
  const SupportReduction& red = rs.reduction;

  CMat h1_reduced = CMat::Zero(red.ra, red.ra);
  CMat h2_reduced = CMat::Zero(red.rb, red.rb);
  assemble_duals(rs.equations, rs.solution.dual_values, h1_reduced, h2_reduced);

  DualCertificate cert;
  cert.status = rs.solution.status;
  cert.gap = rs.solution.gap;
  cert.trace = rs.solution.trace;

  const double fill = red.trivial() ? 0.0 : complement_fill(h1_reduced, h2_reduced);
  auto bound_for = [&](const CMat& h1r) {
    return std::min(
        lmi_mineig_bound(sym_projector(d).matrix(), red, h1r, h2_reduced, fill),
        lmi_mineig_bound(asym_projector(d).matrix(), red, h1r, h2_reduced, fill));
  };
  const double defect = bound_for(h1_reduced);
  if (defect < 0.0) {
    // Feasibility repair: shifting H1 down enters both LMIs as +|shift| I.
    // The small slack absorbs the curvature of the certified bound.
    const double shift = defect * (1.0 + 1e-9) - 1e-15;
    h1_reduced += shift * CMat::Identity(red.ra, red.ra);
  }
  cert.min_lmi_eigenvalue = bound_for(h1_reduced);

  const LiftedDuals duals = lift_duals(red, h1_reduced, h2_reduced, fill);
  cert.h1 = duals.h1;
  cert.h2 = duals.h2;
  cert.value = (rho.matrix() * cert.h1 + sigma.matrix() * cert.h2).trace().real();
  return cert;
}

TransportResult revised_cost_via_ancilla(const DensityMatrix& rho,
                                         const DensityMatrix& sigma,
                                         const SolverConfig& config) {
  require_equal_dims(rho, sigma);
  const CMat half_eye = 0.5 * CMat::Identity(2, 2);
  const DensityMatrix rho_ext(kron(rho.matrix(), half_eye));
  const DensityMatrix sigma_ext(kron(sigma.matrix(), half_eye));
  return transport_cost(rho_ext, sigma_ext, config);
}

}  // namespace qotc
