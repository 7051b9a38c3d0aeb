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

#include <cstdint>
#include <random>
#include <vector>

#include "qotc/linalg.hpp"
#include "qotc/types.hpp"

namespace qotc {

/// splitmix64 step; used to derive independent per-trial seeds from a master
/// seed so that trials are reproducible and order-independent.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic sampler for states, unitaries, and ensembles.
class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed) : gen_(seed) {}

  double gaussian() { return normal_(gen_); }

  Complex complex_gaussian() { return Complex(normal_(gen_), normal_(gen_)); }

  double uniform() { return uniform_(gen_); }

  Index uniform_index(Index n) {
    std::uniform_int_distribution<Index> dist(0, n - 1);
    return dist(gen_);
  }

  CVec ginibre_vector(Index d) {
    CVec v(d);
    for (Index i = 0; i < d; ++i) v(i) = complex_gaussian();
    return v;
  }

  CMat ginibre_matrix(Index rows, Index cols) {
    CMat g(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) g(i, j) = complex_gaussian();
    return g;
  }

  PureState pure_state(Index d) {
    CVec v = ginibre_vector(d);
    return PureState(v / v.norm());
  }

  /// Hilbert-Schmidt-style random state G G^dag / tr, rank-controlled via the
  /// Ginibre factor width.
  DensityMatrix density_matrix(Index d, Index rank = 0) {
    if (rank <= 0 || rank > d) rank = d;
    const CMat g = ginibre_matrix(d, rank);
    CMat rho = g * g.adjoint();
    rho = hermitian_part(rho);
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
  }

  DensityMatrix diagonal_state(Index d) {
    RVec p(d);
    for (Index i = 0; i < d; ++i) p(i) = -std::log(std::max(uniform(), 1e-300));
    p /= p.sum();
    CMat rho = CMat::Zero(d, d);
    for (Index i = 0; i < d; ++i) rho(i, i) = p(i);
    return DensityMatrix(std::move(rho));
  }

  /// Haar-like random unitary: QR of a Ginibre matrix with phase-fixed R.
  CMat unitary(Index d) {
    const CMat g = ginibre_matrix(d, d);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < d; ++i) {
      const Complex rii = r(i, i);
      const double mag = std::abs(rii);
      if (mag > 0) q.col(i) *= rii / mag;
    }
    return q;
  }

  RVec probability_vector(Index n) {
    RVec p(n);
    for (Index i = 0; i < n; ++i) p(i) = -std::log(std::max(uniform(), 1e-300));
    p /= p.sum();
    return p;
  }

  std::vector<Index> permutation(Index n) {
    std::vector<Index> perm(n);
    for (Index i = 0; i < n; ++i) perm[i] = i;
    for (Index i = n - 1; i > 0; --i) {
      std::uniform_int_distribution<Index> dist(0, i);
      std::swap(perm[i], perm[dist(gen_)]);
    }
    return perm;
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace qotc
