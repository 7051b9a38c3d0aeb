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
#include <string>
#include <utility>
#include <vector>

#include "qotc/types.hpp"

namespace qotc {

/// Minimizes sum_b tr(C_b X_b) over Hermitian PSD blocks X_b subject to
/// linear equality constraints sum_b tr(A_{k,b} X_b) = r_k.
struct SdpProblem {
  struct Block {
    std::string name;
    Index dim;  // complex Hermitian dimension
  };
  struct Constraint {
    // (block index, Hermitian coefficient matrix); blocks absent from the
    // list have a zero coefficient.
    std::vector<std::pair<std::size_t, CMat>> coefficients;
    double rhs = 0.0;
  };

  std::vector<Block> blocks;
  std::vector<CMat> objective;  // one Hermitian cost matrix per block
  std::vector<Constraint> constraints;

  void validate(double herm_tol = kHermitianTol) const;
};

enum class SdpStatus { Optimal, MaxIterations, Infeasible, NumericalFailure };

std::string to_string(SdpStatus status);

struct SolverConfig {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iterations = 200;
  double initial_scaling = 1.0;
  std::uint64_t seed = 0;  // reserved for perturbation strategies; solve is deterministic
};

struct IterationStat {
  int iteration = 0;
  double mu = 0.0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;  // ||r - A(X)||_2
  double dual_residual = 0.0;    // max_b ||C - A*(y) - Z||_F
  double x_norm = 0.0;           // sqrt(sum_b ||X_b||_F^2)
  double y_norm = 0.0;
};

struct SdpSolution {
  std::vector<CMat> block_values;  // Hermitian, PSD within feas_tol at Optimal
  RVec dual_values;                // one real multiplier per constraint
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;  // |primal - dual|
  SdpStatus status = SdpStatus::NumericalFailure;
  int iterations = 0;
  double max_constraint_residual = 0.0;
  std::vector<IterationStat> trace;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(SdpStatus status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  SdpStatus status() const { return status_; }

 private:
  SdpStatus status_;
};

/// Realification [[Re h, -Im h], [Im h, Re h]] of a Hermitian matrix.
/// Eigenvalues are preserved with doubled multiplicity; the trace doubles.
RMat embed_complex(const CMat& h);

/// Inverse of embed_complex up to averaging: maps a real symmetric matrix to
/// the Hermitian matrix whose embedding is the projection of the input onto
/// the embedded subalgebra. PSD is preserved.
CMat extract_complex(const RMat& s);

/// Primal-dual path-following interior-point solve; dense factorizations.
/// Complex Hermitian blocks are embedded to real symmetric blocks internally
/// and the doubled objective/constraint values are halved on read-out.
SdpSolution solve(const SdpProblem& problem, const SolverConfig& config = {});

}  // namespace qotc
