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

#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qotc/types.hpp"

namespace qotc {

/// Kronecker product with composite index (i*cols_b + k, j*cols_b + l).
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
    -> Eigen::Matrix<decltype(typename DerivedA::Scalar() * typename DerivedB::Scalar()),
                     Eigen::Dynamic, Eigen::Dynamic> {
  using Scalar = decltype(typename DerivedA::Scalar() * typename DerivedB::Scalar());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

enum class Subsystem { A, B };

/// Partial trace over the named subsystem of a (d*d)x(d*d) operator.
/// Tracing out A returns the B-side reduction and vice versa.
template <typename Derived>
auto partial_trace(const Eigen::MatrixBase<Derived>& m, Subsystem which)
    -> Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> {
  const Index total = m.rows();
  if (m.cols() != total) throw ValidationError("partial_trace: matrix must be square");
  const Index d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(total))));
  if (d * d != total)
    throw ValidationError("partial_trace: dimension " + std::to_string(total) +
                          " is not a perfect square");
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(d, d);
  if (which == Subsystem::A) {
    for (Index k = 0; k < d; ++k)
      for (Index l = 0; l < d; ++l)
        for (Index i = 0; i < d; ++i) out(k, l) += m(i * d + k, i * d + l);
  } else {
    for (Index i = 0; i < d; ++i)
      for (Index ip = 0; ip < d; ++ip)
        for (Index j = 0; j < d; ++j) out(i, ip) += m(i * d + j, ip * d + j);
  }
  return out;
}

inline CMat partial_trace(const BipartiteOperator& op, Subsystem which) {
  return partial_trace(op.matrix(), which);
}

/// Exchange unitary S|i>|j> = |j>|i>; entries are exactly 0 or 1.
inline BipartiteOperator swap_operator(Index d) {
  if (d < 1) throw ValidationError("swap_operator: dimension must be positive");
  CMat s = CMat::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) s(i * d + j, j * d + i) = Complex(1.0, 0.0);
  return BipartiteOperator(d, std::move(s));
}

/// Projector (I + S)/2 onto the symmetric subspace.
inline BipartiteOperator sym_projector(Index d) {
  const CMat s = swap_operator(d).matrix();
  return BipartiteOperator(d, 0.5 * (CMat::Identity(d * d, d * d) + s));
}

/// Projector (I - S)/2 onto the antisymmetric subspace; rank d(d-1)/2.
inline BipartiteOperator asym_projector(Index d) {
  const CMat s = swap_operator(d).matrix();
  return BipartiteOperator(d, 0.5 * (CMat::Identity(d * d, d * d) - s));
}

struct HermitianEigen {
  RVec values;   // descending
  CMat vectors;  // orthonormal columns, matching order
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// Rejects non-Hermitian input with the measured asymmetry.
inline HermitianEigen eig_hermitian(const CMat& m, double herm_tol = kHermitianTol) {
  const double defect = hermiticity_defect(m);
  if (defect > herm_tol)
    throw ValidationError("eig_hermitian: max asymmetry " + std::to_string(defect) +
                          " exceeds tolerance " + std::to_string(herm_tol));
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver did not converge");
  HermitianEigen out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

inline double min_eigenvalue(const CMat& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(hermitian), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Count of eigenvalues above tol * largest eigenvalue.
inline Index numerical_rank(const CMat& hermitian, double tol = kRankTol) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(hermitian), Eigen::EigenvaluesOnly);
  const double largest = es.eigenvalues().maxCoeff();
  if (largest <= 0.0) return 0;
  const double threshold = tol * largest;
  Index rank = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > threshold) ++rank;
  return rank;
}

struct RankOneFactorization {
  CMat marginal_a;  // trace over B
  CMat marginal_b;  // trace over A
  double residual;  // max|x - marginal_a (x) marginal_b / tr(x)|
};

/// Splits a bipartite substate (PSD, trace <= 1) with a rank-1 marginal into
/// the product of its reductions. The residual certifies the factorization.
inline RankOneFactorization factor_rank_one_marginal(const BipartiteOperator& x,
                                                     double tol = 1e-9) {
  const CMat& m = x.matrix();
  const double min_eig = min_eigenvalue(m);
  if (min_eig < -tol)
    throw ValidationError("factor_rank_one_marginal: input not PSD, min eigenvalue " +
                          std::to_string(min_eig));
  const Complex tr = m.trace();
  if (tr.real() > 1.0 + tol || std::abs(tr.imag()) > tol)
    throw ValidationError("factor_rank_one_marginal: trace exceeds 1");
  RankOneFactorization out;
  out.marginal_a = partial_trace(m, Subsystem::B);
  out.marginal_b = partial_trace(m, Subsystem::A);
  const Index rank_a = numerical_rank(out.marginal_a, tol);
  const Index rank_b = numerical_rank(out.marginal_b, tol);
  if (rank_a != 1 && rank_b != 1)
    throw ValidationError("factor_rank_one_marginal: neither marginal has rank 1 (ranks " +
                          std::to_string(rank_a) + ", " + std::to_string(rank_b) + ")");
  out.residual = max_abs_diff(m, CMat(kron(out.marginal_a, out.marginal_b) / tr.real()));
  return out;
}

}  // namespace qotc
