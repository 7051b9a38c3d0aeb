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

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace qotc {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

/// Default tolerances for state validation. Constructors accept overrides
/// because interior-point outputs are only approximately feasible.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kRankTol = 1e-8;

/// Thrown when an input value violates a documented invariant. The message
/// names the offending field or quantity.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.rows() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                    const Eigen::MatrixBase<DerivedB>& b) {
  return max_abs(a - b);
}

/// Elementwise comparison with an explicit tolerance.
template <typename DerivedA, typename DerivedB>
bool approx_equal(const Eigen::MatrixBase<DerivedA>& a,
                  const Eigen::MatrixBase<DerivedB>& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs_diff(a, b) <= tol;
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m - m.adjoint());
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

inline CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

/// A normalized state vector over the fixed computational basis.
class PureState {
 public:
  explicit PureState(CVec amplitudes, double norm_tol = kTraceTol)
      : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) throw ValidationError("amplitudes: empty state vector");
    const double n2 = amplitudes_.squaredNorm();
    if (std::abs(n2 - 1.0) > norm_tol)
      throw ValidationError("amplitudes: squared norm " + std::to_string(n2) +
                            " deviates from 1 beyond tolerance");
  }

  Index dim() const { return amplitudes_.size(); }
  const CVec& amplitudes() const { return amplitudes_; }
  CMat projector() const { return amplitudes_ * amplitudes_.adjoint(); }

  /// Index of the largest |amplitude|; ties resolve to the lowest index.
  Index dominant_basis_index() const {
    Index best = 0;
    double best_mag = std::norm(amplitudes_(0));
    for (Index i = 1; i < dim(); ++i) {
      const double mag = std::norm(amplitudes_(i));
      if (mag > best_mag) {
        best = i;
        best_mag = mag;
      }
    }
    return best;
  }

  static PureState basis_state(Index dim, Index i) {
    CVec v = CVec::Zero(dim);
    v(i) = Complex(1.0, 0.0);
    return PureState(std::move(v));
  }

 private:
  CVec amplitudes_;
};

inline Complex overlap(const PureState& a, const PureState& b) {
  return a.amplitudes().dot(b.amplitudes());  // conjugates the left argument
}

inline double fidelity(const PureState& a, const PureState& b) {
  return std::abs(overlap(a, b));
}

/// Hermitian, positive semidefinite, unit-trace operator with a fixed
/// incoherent (computational) basis.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMat m, double herm_tol = kHermitianTol,
                         double psd_tol = kPsdTol, double trace_tol = kTraceTol)
      : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1)
      throw ValidationError("matrix: expected a nonempty square matrix, got " +
                            std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()));
    const double defect = hermiticity_defect(matrix_);
    if (defect > herm_tol)
      throw ValidationError("matrix: hermiticity defect " + std::to_string(defect) +
                            " exceeds tolerance");
    const Complex tr = matrix_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > trace_tol)
      throw ValidationError("matrix: trace (" + std::to_string(tr.real()) + "," +
                            std::to_string(tr.imag()) + ") deviates from 1");
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(matrix_),
                                           Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol)
      throw ValidationError("matrix: negative eigenvalue " +
                            std::to_string(es.eigenvalues().minCoeff()));
  }

  static DensityMatrix from_pure(const PureState& psi) {
    return DensityMatrix(psi.projector());
  }

  static DensityMatrix maximally_mixed(Index dim) {
    return DensityMatrix(CMat::Identity(dim, dim) / static_cast<double>(dim));
  }

  Index dim() const { return matrix_.rows(); }
  const CMat& matrix() const { return matrix_; }

  double max_offdiagonal() const {
    double m = 0.0;
    for (Index i = 0; i < dim(); ++i)
      for (Index j = 0; j < dim(); ++j)
        if (i != j) m = std::max(m, std::abs(matrix_(i, j)));
    return m;
  }

  bool is_diagonal(double tol = kHermitianTol) const { return max_offdiagonal() <= tol; }

 private:
  CMat matrix_;
};

/// Operator on a d*d-dimensional bipartite space. Composite index convention:
/// row/column i*d + j addresses |i>_A (x) |j>_B.
class BipartiteOperator {
 public:
  BipartiteOperator(Index local_dim, CMat m) : local_dim_(local_dim), matrix_(std::move(m)) {
    if (local_dim_ < 1) throw ValidationError("local_dim: must be positive");
    const Index expected = local_dim_ * local_dim_;
    if (matrix_.rows() != expected || matrix_.cols() != expected)
      throw ValidationError("matrix: expected dim " + std::to_string(expected) +
                            " for local dim " + std::to_string(local_dim_) + ", got " +
                            std::to_string(matrix_.rows()));
  }

  Index local_dim() const { return local_dim_; }
  Index dim() const { return matrix_.rows(); }
  const CMat& matrix() const { return matrix_; }

 private:
  Index local_dim_;
  CMat matrix_;
};

}  // namespace qotc
