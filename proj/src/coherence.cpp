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

#include "qotc/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/SVD>

#include "qotc/marginal_constraints.hpp"
#include "qotc/random_states.hpp"

namespace qotc {

CoherenceResult transport_coherence(const DensityMatrix& rho, const SolverConfig& config) {
  const Index d = rho.dim();

  // Rank-deficient rho leaves the feasible set without interior; compressing
  // the first factor onto supp(rho) restores strict feasibility (the pair
  // X = Y = rho_r (x) I/(2d) is then strictly feasible). The second factor
  // keeps the computational basis, where the diagonal constraint lives.
  const HermitianEigen eig = eig_hermitian(rho.matrix());
  const double cut = std::max(eig.values(0) * 1e-12, 1e-14);
  Index ra = 0;
  while (ra < d && eig.values(ra) > cut) ++ra;
  ra = std::max<Index>(ra, 1);
  const bool reduced = ra < d;
  const CMat u = reduced ? CMat(eig.vectors.leftCols(ra)) : CMat(CMat::Identity(d, d));
  const CMat rho_r = u.adjoint() * rho.matrix() * u;
  const CMat lift = kron(u, CMat(CMat::Identity(d, d)));
  const CMat sym_r = hermitian_part(lift.adjoint() * sym_projector(d).matrix() * lift);
  const CMat asym_r = hermitian_part(lift.adjoint() * asym_projector(d).matrix() * lift);

  SdpProblem problem;
  problem.blocks = {{"sym_part", ra * d}, {"asym_part", ra * d}};
  problem.objective = {sym_r, asym_r};
  auto equations = marginal_equations(rho_r, MarginalEquation::Side::TraceOutB, false);
  const auto offdiag = offdiagonal_zero_equations(d, MarginalEquation::Side::TraceOutA);
  equations.insert(equations.end(), offdiag.begin(), offdiag.end());
  for (const auto& eq : equations) {
    const CMat a = lift_marginal(eq, ra, d);
    problem.constraints.push_back({{{0, a}, {1, a}}, eq.rhs});
  }

  const SdpSolution sol = solve(problem, config);
  if (sol.status == SdpStatus::Infeasible || sol.status == SdpStatus::NumericalFailure)
    throw SolverError(sol.status, "transport_coherence: solver failed with status " +
                                      to_string(sol.status));

  CMat x = sol.block_values[0];
  CMat y = sol.block_values[1];
  if (reduced) {
    x = lift * x * lift.adjoint();
    y = lift * y * lift.adjoint();
  }

  CMat h1_r = CMat::Zero(ra, ra);
  CMat h2 = CMat::Zero(d, d);
  assemble_duals(equations, sol.dual_values, h1_r, h2);
  CMat h1 = u * h1_r * u.adjoint();
  if (reduced)
    h1 -= 1e7 * (1.0 + h1_r.norm() + h2.norm()) *
          (CMat::Identity(d, d) - u * u.adjoint());

  CouplingWitness w{.x_ab = BipartiteOperator(d, hermitian_part(x)),
                    .y_ab = BipartiteOperator(d, hermitian_part(y)),
                    .value = 0.0,
                    .dual_h1 = std::move(h1),
                    .dual_h2 = std::move(h2),
                    .gap = sol.gap,
                    .status = sol.status,
                    .trace = sol.trace};
  w.value = (w.x_ab.matrix() * sym_projector(d).matrix() +
             w.y_ab.matrix() * asym_projector(d).matrix())
                .trace()
                .real();

  // The optimal diagonal state is the trace-out-A reduction of X + Y with the
  // off-diagonals dropped exactly and the trace renormalized.
  const CMat reduction = partial_trace(CMat(w.x_ab.matrix() + w.y_ab.matrix()), Subsystem::A);
  CMat delta = CMat::Zero(d, d);
  double total = 0.0;
  for (Index i = 0; i < d; ++i) total += reduction(i, i).real();
  for (Index i = 0; i < d; ++i) delta(i, i) = reduction(i, i).real() / total;

  return CoherenceResult{.value = w.value,
                         .optimal_delta = DensityMatrix(std::move(delta)),
                         .witness = std::move(w),
                         .gap = sol.gap,
                         .status = sol.status};
}

double transport_coherence_pure(const PureState& phi) {
  double max_weight = 0.0;
  for (Index i = 0; i < phi.dim(); ++i)
    max_weight = std::max(max_weight, std::norm(phi.amplitudes()(i)));
  return 0.5 * (1.0 - max_weight);
}

double geometric_coherence_pure(const PureState& phi) {
  return 2.0 * transport_coherence_pure(phi);
}

CMat Decomposition::reconstruct(Index dim) const {
  CMat acc = CMat::Zero(dim, dim);
  for (std::size_t i = 0; i < states.size(); ++i)
    acc += weights(static_cast<Index>(i)) * states[i].projector();
  return acc;
}

namespace {

// Working data for the roof search. States are parametrized as rows of an
// isometry V (K x r, V^dag V = I) applied to the scaled eigenvectors
// M = [sqrt(q_1) e_1 ... sqrt(q_r) e_r]; the ensemble is then the set of
// columns of M V^T with weights equal to their squared norms.
struct RoofWorkspace {
  CMat scaled_eigvecs;  // M, d x r
  Index dim = 0;
  Index rank = 0;
};

CMat polar_factor(const CMat& a) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Exact ensemble-average value 1/2 (1 - sum_i max_b |T_bi|^2), T = M V^T.
double roof_value_exact(const RoofWorkspace& ws, const CMat& v) {
  const CMat t = ws.scaled_eigvecs * v.transpose();
  double captured = 0.0;
  for (Index i = 0; i < t.cols(); ++i) {
    double best = 0.0;
    for (Index b = 0; b < t.rows(); ++b) best = std::max(best, std::norm(t(b, i)));
    captured += best;
  }
  return 0.5 * (1.0 - captured);
}

// Soft-max relaxation of the captured weight, and its conjugate-Wirtinger
// gradient with respect to V.
double roof_smoothed(const RoofWorkspace& ws, const CMat& v, double beta, CMat* grad) {
  const CMat t = ws.scaled_eigvecs * v.transpose();
  const Index d = t.rows(), k = t.cols();
  double captured = 0.0;
  CMat weighted = CMat::Zero(d, k);
  for (Index i = 0; i < k; ++i) {
    RVec s(d);
    for (Index b = 0; b < d; ++b) s(b) = std::norm(t(b, i));
    const double smax = s.maxCoeff();
    double z = 0.0;
    for (Index b = 0; b < d; ++b) z += std::exp(beta * (s(b) - smax));
    captured += smax + std::log(z) / beta;
    if (grad != nullptr)
      for (Index b = 0; b < d; ++b)
        weighted(b, i) = std::exp(beta * (s(b) - smax)) / z * t(b, i);
  }
  if (grad != nullptr) *grad = (ws.scaled_eigvecs.adjoint() * weighted).transpose();
  return captured;
}

// Gradient ascent on the smoothed objective with backtracking line search and
// polar retraction to the isometry manifold. Returns true when the search
// stalled (converged) before exhausting its iteration budget.
bool maximize_captured_weight(const RoofWorkspace& ws, double beta_final, int max_iters,
                              CMat& v) {
  const double betas[] = {beta_final / 16.0, beta_final / 4.0, beta_final};
  const int per_stage = std::max(max_iters / 3, 1);
  bool converged = false;
  for (double beta : betas) {
    converged = false;
    double step = 1.0;
    for (int it = 0; it < per_stage; ++it) {
      CMat grad;
      const double current = roof_smoothed(ws, v, beta, &grad);
      bool improved = false;
      while (step >= 1e-14) {
        const CMat trial = polar_factor(v + step * grad);
        if (roof_smoothed(ws, trial, beta, nullptr) > current + 1e-15) {
          v = trial;
          step = std::min(step * 2.0, 64.0);
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) {
        converged = true;
        break;
      }
    }
  }
  return converged;
}

}  // namespace

RoofResult convex_roof_coherence(const DensityMatrix& rho, const RoofConfig& config) {
  const Index d = rho.dim();
  const HermitianEigen eig = eig_hermitian(rho.matrix());

  const double floor = std::max(kRankTol * eig.values(0), 1e-14);
  Index rank = 0;
  while (rank < d && eig.values(rank) > floor) ++rank;
  rank = std::max<Index>(rank, 1);

  RoofWorkspace ws;
  ws.dim = d;
  ws.rank = rank;
  ws.scaled_eigvecs = CMat(d, rank);
  for (Index j = 0; j < rank; ++j)
    ws.scaled_eigvecs.col(j) = std::sqrt(eig.values(j)) * eig.vectors.col(j);

  Index ensemble = config.ensemble_size > 0 ? config.ensemble_size : d * rank;
  ensemble = std::clamp<Index>(ensemble, rank, d * d);
  const int starts = std::max(config.starts, 1);
  const int iters = std::max(config.max_iters, 3);

  CMat best_v;
  double best_value = std::numeric_limits<double>::infinity();
  int converged_starts = 0;
  for (int s = 0; s < starts; ++s) {
    CMat v;
    if (s == 0) {
      v = CMat::Zero(ensemble, rank);  // the eigen-ensemble itself
      v.topLeftCorner(rank, rank) = CMat::Identity(rank, rank);
    } else {
      StateSampler sampler(derive_seed(config.seed, static_cast<std::uint64_t>(s)));
      v = polar_factor(sampler.ginibre_matrix(ensemble, rank));
    }
    if (maximize_captured_weight(ws, config.smoothing_temperature, iters, v))
      ++converged_starts;
    const double value = roof_value_exact(ws, v);
    if (value < best_value) {  // ties keep the lowest start index
      best_value = value;
      best_v = v;
    }
  }

  RoofResult out;
  out.converged_starts = converged_starts;
  const CMat t = ws.scaled_eigvecs * best_v.transpose();
  std::vector<double> weights;
  for (Index i = 0; i < t.cols(); ++i) {
    const double p = t.col(i).squaredNorm();
    if (p < 1e-14) continue;
    weights.push_back(p);
    out.decomposition.states.emplace_back(CVec(t.col(i) / std::sqrt(p)));
  }
  out.decomposition.weights = Eigen::Map<RVec>(weights.data(), static_cast<Index>(weights.size()));
  out.value = 0.0;
  for (std::size_t i = 0; i < out.decomposition.states.size(); ++i)
    out.value += out.decomposition.weights(static_cast<Index>(i)) *
                 transport_coherence_pure(out.decomposition.states[i]);
  return out;
}

CMat IncoherentChannel::apply_matrix(const CMat& m) const {
  CMat out = CMat::Zero(m.rows(), m.cols());
  for (const CMat& k : kraus_operators) out += k * m * k.adjoint();
  return out;
}

DensityMatrix IncoherentChannel::apply(const DensityMatrix& rho) const {
  return DensityMatrix(hermitian_part(apply_matrix(rho.matrix())));
}

double IncoherentChannel::completeness_residual() const {
  if (kraus_operators.empty()) return 1.0;
  const Index d = kraus_operators.front().rows();
  CMat acc = CMat::Zero(d, d);
  for (const CMat& k : kraus_operators) acc += k.adjoint() * k;
  return max_abs_diff(acc, CMat::Identity(d, d));
}

IncoherentChannel sample_incoherent_channel(Index d, int n_kraus, std::uint64_t seed) {
  if (d < 2) throw ValidationError("d: incoherent channels need dimension >= 2");
  if (n_kraus < 1) throw ValidationError("n_kraus: must be >= 1");
  StateSampler sampler(seed);

  // Magnitudes column-normalized so that sum_i K_i^dag K_i = I exactly.
  RMat mags(n_kraus, d);
  for (int i = 0; i < n_kraus; ++i)
    for (Index b = 0; b < d; ++b) mags(i, b) = std::norm(sampler.complex_gaussian()) + 1e-12;
  for (Index b = 0; b < d; ++b) mags.col(b) /= mags.col(b).sum();

  IncoherentChannel channel;
  for (int i = 0; i < n_kraus; ++i) {
    const auto perm = sampler.permutation(d);
    CMat k = CMat::Zero(d, d);
    for (Index b = 0; b < d; ++b) {
      const double phase = 2.0 * M_PI * sampler.uniform();
      k(perm[b], b) = std::sqrt(mags(i, b)) * Complex(std::cos(phase), std::sin(phase));
    }
    channel.kraus_operators.push_back(std::move(k));
  }
  return channel;
}

DensityMatrix counterexample_rho1() {
  CVec v = CVec::Zero(5);
  v(0) = v(1) = Complex(1.0 / std::sqrt(2.0), 0.0);
  return DensityMatrix::from_pure(PureState(std::move(v)));
}

DensityMatrix counterexample_rho2() {
  CVec v = CVec::Zero(5);
  v(2) = v(3) = v(4) = Complex(1.0 / std::sqrt(3.0), 0.0);
  return DensityMatrix::from_pure(PureState(std::move(v)));
}

DensityMatrix counterexample_mixture() {
  return DensityMatrix(0.5 * counterexample_rho1().matrix() +
                       0.5 * counterexample_rho2().matrix());
}

CounterexampleWitness counterexample_witness() {
  CVec minus = CVec::Zero(5), plus = CVec::Zero(5), triple = CVec::Zero(5);
  minus(0) = Complex(1.0 / std::sqrt(2.0), 0.0);
  minus(1) = -minus(0);
  plus(0) = plus(1) = Complex(1.0 / std::sqrt(2.0), 0.0);
  triple(2) = triple(3) = triple(4) = Complex(1.0 / std::sqrt(3.0), 0.0);
  const CMat p_minus = minus * minus.adjoint();
  const CMat p_plus = plus * plus.adjoint();
  const CMat p_triple = triple * triple.adjoint();

  CMat delta = CMat::Zero(5, 5);
  delta(0, 0) = delta(1, 1) = Complex(0.5, 0.0);

  return CounterexampleWitness{
      .x_ab = BipartiteOperator(5, 0.5 * kron(p_triple, p_minus)),
      .y_ab = BipartiteOperator(5, 0.5 * kron(p_plus, p_plus)),
      .delta = DensityMatrix(std::move(delta))};
}

CounterexampleReport block_additivity_counterexample(const SolverConfig& config) {
  CounterexampleReport report;
  auto add_check = [&report](const std::string& name, double measured, double bound,
                             bool upper_bound) {
    const bool pass = upper_bound ? measured <= bound : measured >= bound;
    report.checks.push_back({name, measured, bound, upper_bound, pass});
  };

  report.t_rho1 = transport_coherence(counterexample_rho1(), config).value;
  report.t_rho2 = transport_coherence(counterexample_rho2(), config).value;
  report.weighted_average = 0.5 * report.t_rho1 + 0.5 * report.t_rho2;
  add_check("block1.value_vs_quarter", std::abs(report.t_rho1 - 0.25), 1e-6, true);
  add_check("block2.value_vs_third", std::abs(report.t_rho2 - 1.0 / 3.0), 1e-6, true);
  add_check("weighted_average_vs_7_24", std::abs(report.weighted_average - 7.0 / 24.0), 1e-6,
            true);

  const CounterexampleWitness w = counterexample_witness();
  const DensityMatrix mixture = counterexample_mixture();
  const CMat sum = w.x_ab.matrix() + w.y_ab.matrix();
  add_check("witness.reduction_matches_mixture",
            max_abs_diff(partial_trace(sum, Subsystem::B), mixture.matrix()), 1e-12, true);
  add_check("witness.reduction_matches_delta",
            max_abs_diff(partial_trace(sum, Subsystem::A), w.delta.matrix()), 1e-12, true);
  report.witness_value = (w.x_ab.matrix() * sym_projector(5).matrix() +
                          w.y_ab.matrix() * asym_projector(5).matrix())
                             .trace()
                             .real();
  add_check("witness.objective_vs_quarter", std::abs(report.witness_value - 0.25), 1e-10,
            true);

  report.t_mixture = transport_coherence(mixture, config).value;
  add_check("mixture.value_below_quarter", report.t_mixture, 0.25 + 1e-6, true);
  add_check("mixture.value_below_weighted_average", report.t_mixture, 7.0 / 24.0 - 1e-6,
            true);

  report.all_pass = true;
  for (const auto& c : report.checks) report.all_pass = report.all_pass && c.pass;
  return report;
}

}  // namespace qotc
