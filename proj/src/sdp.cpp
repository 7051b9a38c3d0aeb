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

#include "qotc/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace qotc {

void SdpProblem::validate(double herm_tol) const {
  if (blocks.empty()) throw ValidationError("blocks: at least one PSD block required");
  if (objective.size() != blocks.size())
    throw ValidationError("objective: expected one cost matrix per block");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].dim < 1) throw ValidationError("blocks: dimension must be positive");
    if (objective[b].rows() != blocks[b].dim || objective[b].cols() != blocks[b].dim)
      throw ValidationError("objective: cost matrix dim mismatch for block '" +
                            blocks[b].name + "'");
    if (hermiticity_defect(objective[b]) > herm_tol)
      throw ValidationError("objective: cost matrix for block '" + blocks[b].name +
                            "' is not Hermitian within tolerance");
  }
  if (constraints.empty()) throw ValidationError("constraints: list must be nonempty");
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& con = constraints[k];
    if (!std::isfinite(con.rhs))
      throw ValidationError("constraints: rhs " + std::to_string(k) + " is not finite");
    if (con.coefficients.empty())
      throw ValidationError("constraints: constraint " + std::to_string(k) +
                            " has no coefficients");
    std::vector<bool> seen(blocks.size(), false);
    for (const auto& [b, a] : con.coefficients) {
      if (b >= blocks.size())
        throw ValidationError("constraints: block index out of range in constraint " +
                              std::to_string(k));
      if (seen[b])
        throw ValidationError("constraints: duplicate block in constraint " +
                              std::to_string(k));
      seen[b] = true;
      if (a.rows() != blocks[b].dim || a.cols() != blocks[b].dim)
        throw ValidationError("constraints: coefficient dim mismatch in constraint " +
                              std::to_string(k));
      if (hermiticity_defect(a) > herm_tol)
        throw ValidationError("constraints: coefficient in constraint " + std::to_string(k) +
                              " is not Hermitian within tolerance");
    }
  }
}

std::string to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::MaxIterations: return "MaxIterations";
    case SdpStatus::Infeasible: return "Infeasible";
    case SdpStatus::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

RMat embed_complex(const CMat& h) {
  const Index n = h.rows();
  if (h.cols() != n) throw ValidationError("embed_complex: matrix must be square");
  RMat out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

CMat extract_complex(const RMat& s) {
  const Index n2 = s.rows();
  if (s.cols() != n2 || n2 % 2 != 0)
    throw ValidationError("extract_complex: matrix must be square with even dimension");
  const Index n = n2 / 2;
  CMat out(n, n);
  out.real() = 0.5 * (s.topLeftCorner(n, n) + s.bottomRightCorner(n, n));
  out.imag() = 0.5 * (s.bottomLeftCorner(n, n) - s.topRightCorner(n, n));
  return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double frob_inner(const RMat& a, const RMat& b) { return a.cwiseProduct(b).sum(); }

void symmetrize(RMat& m) { m = 0.5 * (m + m.transpose()).eval(); }

// Largest alpha with S + alpha * D PSD, computed from the spectrum of
// L^-1 D L^-T where S = L L^T. Infinite when D does not push S to the
// boundary. A small jitter keeps the factorization alive when S has
// eigenvalues at roundoff scale.
double max_step_length(const RMat& s, const RMat& d) {
  const Index n = s.rows();
  RMat sj = s;
  double jitter = 0.0;
  Eigen::LLT<RMat> llt(sj);
  while (llt.info() != Eigen::Success) {
    jitter = (jitter == 0.0) ? 1e-14 * (1.0 + s.diagonal().cwiseAbs().maxCoeff()) : jitter * 100;
    if (jitter > 1e-4) return 0.0;
    sj = s + jitter * RMat::Identity(n, n);
    llt.compute(sj);
  }
  const RMat l = llt.matrixL();
  RMat w = l.triangularView<Eigen::Lower>().solve(d);
  w = l.triangularView<Eigen::Lower>().solve(w.transpose()).transpose().eval();
  symmetrize(w);
  Eigen::SelfAdjointEigenSolver<RMat> es(w, Eigen::EigenvaluesOnly);
  const double lambda_min = es.eigenvalues().minCoeff();
  if (lambda_min >= -1e-13) return kInf;
  return -1.0 / lambda_min;
}

struct RealData {
  std::vector<Index> dim;                                       // embedded block dims
  std::vector<RMat> cost;                                       // embedded costs
  std::vector<std::vector<std::pair<int, RMat>>> block_coeffs;  // per block: (k, A_kb)
  RVec rhs;                                                     // doubled right-hand sides
  Index n_total = 0;
};

struct Iterate {
  std::vector<RMat> x;
  std::vector<RMat> z;
  RVec y;
};

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolverConfig& config) {
  problem.validate();
  if (config.gap_tol <= 0 || config.feas_tol <= 0)
    throw ValidationError("config: tolerances must be positive");
  if (config.max_iterations < 1)
    throw ValidationError("config: max_iterations must be positive");

  const std::size_t nblocks = problem.blocks.size();
  const int m = static_cast<int>(problem.constraints.size());

  RealData data;
  data.dim.resize(nblocks);
  data.cost.resize(nblocks);
  data.block_coeffs.resize(nblocks);
  for (std::size_t b = 0; b < nblocks; ++b) {
    data.dim[b] = 2 * problem.blocks[b].dim;
    data.cost[b] = embed_complex(problem.objective[b]);
    data.n_total += data.dim[b];
  }
  data.rhs.resize(m);
  for (int k = 0; k < m; ++k) {
    data.rhs(k) = 2.0 * problem.constraints[k].rhs;
    for (const auto& [b, a] : problem.constraints[k].coefficients)
      data.block_coeffs[b].emplace_back(k, embed_complex(a));
  }

  // Initial point: scaled identities sized to dominate the expected solution
  // and data norms, in the usual interior-point fashion.
  double max_a_norm = 0.0;
  for (std::size_t b = 0; b < nblocks; ++b)
    for (const auto& [k, a] : data.block_coeffs[b]) max_a_norm = std::max(max_a_norm, a.norm());
  double max_c_norm = 0.0;
  for (std::size_t b = 0; b < nblocks; ++b) max_c_norm = std::max(max_c_norm, data.cost[b].norm());
  const double rhs_inf = m > 0 ? data.rhs.cwiseAbs().maxCoeff() : 0.0;
  const double n_tot = static_cast<double>(data.n_total);
  const double xi_primal =
      config.initial_scaling *
      std::max({10.0, std::sqrt(n_tot), n_tot * rhs_inf / (1.0 + max_a_norm)});
  const double xi_dual =
      config.initial_scaling * std::max({10.0, std::sqrt(n_tot), max_c_norm, max_a_norm});

  Iterate it;
  it.x.resize(nblocks);
  it.z.resize(nblocks);
  for (std::size_t b = 0; b < nblocks; ++b) {
    it.x[b] = xi_primal * RMat::Identity(data.dim[b], data.dim[b]);
    it.z[b] = xi_dual * RMat::Identity(data.dim[b], data.dim[b]);
  }
  it.y = RVec::Zero(m);

  SdpSolution sol;
  sol.trace.reserve(config.max_iterations);

  Iterate best = it;
  double best_merit = kInf;
  SdpStatus status = SdpStatus::MaxIterations;
  int stall_count = 0;
  int no_progress_count = 0;
  int iterations_done = 0;

  std::vector<RMat> zinv(nblocks), rd(nblocks);
  RVec rp(m);

  auto apply_adjoint = [&](const RVec& w, std::size_t b) {
    RMat s = RMat::Zero(data.dim[b], data.dim[b]);
    for (const auto& [k, a] : data.block_coeffs[b]) s += w(k) * a;
    return s;
  };

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    // Residuals, objectives, duality measure.
    rp = data.rhs;
    for (std::size_t b = 0; b < nblocks; ++b)
      for (const auto& [k, a] : data.block_coeffs[b]) rp(k) -= frob_inner(a, it.x[b]);
    double mu = 0.0, p_real = 0.0, x_norm2 = 0.0, dres = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b) {
      rd[b] = data.cost[b] - apply_adjoint(it.y, b) - it.z[b];
      mu += frob_inner(it.x[b], it.z[b]);
      p_real += frob_inner(data.cost[b], it.x[b]);
      x_norm2 += it.x[b].squaredNorm();
      dres = std::max(dres, rd[b].norm());
    }
    mu /= n_tot;
    const double d_real = data.rhs.dot(it.y);
    const double p_obj = 0.5 * p_real;
    const double d_obj = 0.5 * d_real;
    const double rel_gap = std::abs(p_obj - d_obj) / (1.0 + std::abs(p_obj));
    const double pres_c = 0.5 * rp.cwiseAbs().maxCoeff();
    const double dres_c = 0.5 * [&] {
      double v = 0.0;
      for (std::size_t b = 0; b < nblocks; ++b) v = std::max(v, max_abs(rd[b]));
      return v;
    }();

    sol.trace.push_back(IterationStat{iter, mu, p_obj, d_obj, rp.norm(), dres,
                                      std::sqrt(x_norm2), it.y.norm()});
    iterations_done = iter;

    const double merit = std::max({rel_gap, pres_c, dres_c});
    if (merit < 0.99 * best_merit) {
      no_progress_count = 0;
    } else if (++no_progress_count >= 15) {
      break;  // converged as far as the arithmetic allows; best iterate stands
    }
    if (merit < best_merit) {
      best_merit = merit;
      best = it;
    }

    if (rel_gap <= config.gap_tol && pres_c <= config.feas_tol && dres_c <= config.feas_tol) {
      status = SdpStatus::Optimal;
      best = it;
      break;
    }
    if (it.y.cwiseAbs().maxCoeff() > 1e8 * (1.0 + rhs_inf) && pres_c > 100.0 * config.feas_tol) {
      status = SdpStatus::Infeasible;
      break;
    }

    // Factor Z blocks; escalating jitter covers roundoff-scale indefiniteness.
    std::vector<Eigen::LLT<RMat>> zllt(nblocks);
    bool factor_ok = true;
    for (std::size_t b = 0; b < nblocks && factor_ok; ++b) {
      const double z_scale = 1.0 + it.z[b].diagonal().cwiseAbs().maxCoeff();
      double jitter = 0.0;
      zllt[b].compute(it.z[b]);
      while (zllt[b].info() != Eigen::Success) {
        jitter = (jitter == 0.0) ? 1e-15 * z_scale : jitter * 100;
        if (jitter > 1e-3 * z_scale) {
          factor_ok = false;
          break;
        }
        zllt[b].compute(it.z[b] + jitter * RMat::Identity(data.dim[b], data.dim[b]));
      }
    }
    if (!factor_ok) {
      status = SdpStatus::NumericalFailure;
      break;
    }
    for (std::size_t b = 0; b < nblocks; ++b)
      zinv[b] = zllt[b].solve(RMat::Identity(data.dim[b], data.dim[b]));

    // Schur complement M(k,l) = sum_b tr(A_k Z^-1 A_l X); symmetric positive
    // definite for linearly independent constraints. The factorization runs
    // in extended precision: near the optimum of thin-interior instances the
    // conditioning exhausts doubles well before the iterate stops improving.
    RMat schur = RMat::Zero(m, m);
    for (std::size_t b = 0; b < nblocks; ++b) {
      const auto& entries = data.block_coeffs[b];
      std::vector<RMat> t(entries.size());
      for (std::size_t i = 0; i < entries.size(); ++i)
        t[i] = zinv[b] * entries[i].second * it.x[b];
      for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
          schur(entries[i].first, entries[j].first) += frob_inner(entries[j].second, t[i]);
    }
    for (int k = 0; k < m; ++k)
      for (int l = k + 1; l < m; ++l) schur(k, l) = schur(l, k);

    using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const LMat schur_l = schur.cast<long double>();
    Eigen::LLT<LMat> mllt(schur_l);
    double ridge = 0.0;
    const double diag_scale = std::max(schur.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    while (mllt.info() != Eigen::Success && ridge < 1e-2 * diag_scale) {
      ridge = (ridge == 0.0) ? 1e-16 * diag_scale : ridge * 1000;
      mllt.compute(schur_l + ridge * LMat::Identity(m, m));
    }
    if (mllt.info() != Eigen::Success) {
      status = SdpStatus::NumericalFailure;
      break;
    }
    auto solve_schur = [&](const RVec& rhs_vec) {
      const LVec rhs_l = rhs_vec.cast<long double>();
      LVec dy = mllt.solve(rhs_l);
      dy += mllt.solve(rhs_l - schur_l * dy);  // one refinement step
      return RVec(dy.cast<double>());
    };

    std::vector<RMat> g1(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) g1[b] = zinv[b] * rd[b] * it.x[b];

    // Predictor (affine-scaling) direction.
    RVec rhs1 = data.rhs;
    for (std::size_t b = 0; b < nblocks; ++b)
      for (const auto& [k, a] : data.block_coeffs[b]) rhs1(k) += frob_inner(a, g1[b]);
    const RVec dy_aff = solve_schur(rhs1);
    std::vector<RMat> dz_aff(nblocks), dx_aff(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) {
      const RMat s = apply_adjoint(dy_aff, b);
      dz_aff[b] = rd[b] - s;
      dx_aff[b] = -it.x[b] - g1[b] + zinv[b] * s * it.x[b];
      symmetrize(dx_aff[b]);
    }

    double alpha_p_aff = 1.0, alpha_d_aff = 1.0;
    for (std::size_t b = 0; b < nblocks; ++b) {
      alpha_p_aff = std::min(alpha_p_aff, max_step_length(it.x[b], dx_aff[b]));
      alpha_d_aff = std::min(alpha_d_aff, max_step_length(it.z[b], dz_aff[b]));
    }

    double mu_aff = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b)
      mu_aff += frob_inner(it.x[b] + alpha_p_aff * dx_aff[b], it.z[b] + alpha_d_aff * dz_aff[b]);
    mu_aff = std::max(mu_aff / n_tot, 0.0);
    const double sigma =
        mu > 0 ? std::clamp((mu_aff / mu) * (mu_aff / mu) * (mu_aff / mu), 1e-8, 1.0) : 0.0;

    // Corrector direction with the Mehrotra second-order term.
    RVec rhs2 = data.rhs;
    for (std::size_t b = 0; b < nblocks; ++b) {
      const RMat g2 = zinv[b] * (dz_aff[b] * dx_aff[b]);
      g1[b] += g2;  // fold the corrector term into the same pipeline
      for (const auto& [k, a] : data.block_coeffs[b])
        rhs2(k) += frob_inner(a, g1[b]) - sigma * mu * frob_inner(a, zinv[b]);
    }
    const RVec dy = solve_schur(rhs2);
    std::vector<RMat> dz(nblocks), dx(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) {
      const RMat s = apply_adjoint(dy, b);
      dz[b] = rd[b] - s;
      dx[b] = sigma * mu * zinv[b] - it.x[b] - g1[b] + zinv[b] * s * it.x[b];
      symmetrize(dx[b]);
    }

    const double gamma = iter < 2 ? 0.9 : 0.98;
    double alpha_p = 1.0, alpha_d = 1.0;
    for (std::size_t b = 0; b < nblocks; ++b) {
      alpha_p = std::min(alpha_p, gamma * max_step_length(it.x[b], dx[b]));
      alpha_d = std::min(alpha_d, gamma * max_step_length(it.z[b], dz[b]));
    }
    alpha_p = std::min(alpha_p, 1.0);
    alpha_d = std::min(alpha_d, 1.0);

    for (std::size_t b = 0; b < nblocks; ++b) {
      it.x[b] += alpha_p * dx[b];
      it.z[b] += alpha_d * dz[b];
      symmetrize(it.x[b]);
      symmetrize(it.z[b]);
    }
    it.y += alpha_d * dy;

    if (alpha_p < 1e-6 && alpha_d < 1e-6) {
      if (++stall_count >= 3) break;  // no progress; report the best iterate
    } else {
      stall_count = 0;
    }
  }

  // Read out the best iterate in the complex scale. At Optimal this is the
  // converged point; otherwise it is the lowest-merit iterate seen.
  const Iterate& out = best;
  sol.block_values.resize(nblocks);
  double p_real = 0.0;
  for (std::size_t b = 0; b < nblocks; ++b) {
    sol.block_values[b] = extract_complex(out.x[b]);
    p_real += frob_inner(data.cost[b], out.x[b]);
  }
  sol.dual_values = out.y;
  sol.primal_objective = 0.5 * p_real;
  sol.dual_objective = 0.5 * data.rhs.dot(out.y);
  sol.gap = std::abs(sol.primal_objective - sol.dual_objective);
  RVec rp_final = data.rhs;
  for (std::size_t b = 0; b < nblocks; ++b)
    for (const auto& [k, a] : data.block_coeffs[b]) rp_final(k) -= frob_inner(a, out.x[b]);
  sol.max_constraint_residual = m > 0 ? 0.5 * rp_final.cwiseAbs().maxCoeff() : 0.0;
  sol.status = status;
  sol.iterations = iterations_done + 1;
  return sol;
}

}  // namespace qotc
