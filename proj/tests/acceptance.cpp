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

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion numbering matches the README's verification table.

#include <array>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "qotc/coherence.hpp"
#include "qotc/io.hpp"
#include "qotc/random_states.hpp"
#include "qotc/speedlimit.hpp"
#include "qotc/verify.hpp"

#ifndef QOTC_CLI_PATH
#define QOTC_CLI_PATH "build/tools/qotc"
#endif
#ifndef QOTC_FIXTURES_DIR
#define QOTC_FIXTURES_DIR "fixtures"
#endif

namespace {

using namespace qotc;

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

// Runs a verify suite and reports it as one criterion line, quoting the
// worst upper-bound check.
void criterion_from_suite(int criterion, const std::string& label, const std::string& suite,
                          const VerifyConfig& cfg) {
  const std::vector<SuiteReport> reports = run_verify(suite, cfg);
  bool pass = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string worst = "";
  for (const auto& rep : reports) {
    for (const auto& c : rep.checks) {
      pass = pass && c.pass;
      const double margin = c.upper_bound ? c.bound - c.measured : c.measured - c.bound;
      if (margin < worst_margin) {
        worst_margin = margin;
        worst = c.name + " measured " + fmt(c.measured) + (c.upper_bound ? " <= " : " >= ") +
                fmt(c.bound);
      }
    }
  }
  report(criterion, label, pass, "tightest check: " + worst);
}

void criterion_convex_roof() {
  SolverConfig solver;
  RoofConfig roof;
  roof.seed = 4242;

  // Pure states: the roof must reproduce the closed form.
  double max_pure_dev = 0.0;
  for (int t = 0; t < 50; ++t) {
    StateSampler sampler(derive_seed(4242, 90'000 + t));
    const PureState psi = sampler.pure_state(2 + (t % 3));
    const RoofResult r = convex_roof_coherence(DensityMatrix::from_pure(psi), roof);
    max_pure_dev = std::max(max_pure_dev, std::abs(r.value - transport_coherence_pure(psi)));
  }
  bool pass = max_pure_dev <= 1e-7;

  // Maximally-mixed-style diagonal mixtures decompose incoherently.
  double max_diag = 0.0;
  max_diag = std::max(max_diag, convex_roof_coherence(DensityMatrix::maximally_mixed(2), roof).value);
  max_diag = std::max(max_diag, convex_roof_coherence(DensityMatrix::maximally_mixed(3), roof).value);
  max_diag = std::max(max_diag, convex_roof_coherence(DensityMatrix::maximally_mixed(4), roof).value);
  {
    CMat diag = CMat::Zero(3, 3);
    diag(0, 0) = 0.5;
    diag(1, 1) = 0.3;
    diag(2, 2) = 0.2;
    max_diag = std::max(max_diag, convex_roof_coherence(DensityMatrix(diag), roof).value);
  }
  pass = pass && max_diag <= 1e-6;

  // The eigen-ensemble is always an admissible decomposition, and the roof
  // dominates the joint-minimization quantifier.
  double max_excess = -std::numeric_limits<double>::infinity();
  double max_dominance_violation = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < 20; ++t) {
    StateSampler sampler(derive_seed(4242, 91'000 + t));
    const Index d = 2 + (t % 2);
    const DensityMatrix rho = sampler.density_matrix(d);
    const HermitianEigen eig = eig_hermitian(rho.matrix());
    double eigen_average = 0.0;
    for (Index j = 0; j < d; ++j)
      if (eig.values(j) > 1e-14)
        eigen_average +=
            eig.values(j) * transport_coherence_pure(PureState(eig.vectors.col(j), 1e-6));
    const RoofResult r = convex_roof_coherence(rho, roof);
    max_excess = std::max(max_excess, r.value - eigen_average);
    max_dominance_violation = std::max(
        max_dominance_violation, transport_coherence(rho, solver).value - r.value);
  }
  pass = pass && max_excess <= 1e-9 && max_dominance_violation <= 1e-6;

  report(6, "convex roof sanity", pass,
         "pure deviation " + fmt(max_pure_dev) + " <= 1e-7, diagonal roof " + fmt(max_diag) +
             " <= 1e-6, eigen-average excess " + fmt(max_excess) +
             " <= 1e-9, dominance violation " + fmt(max_dominance_violation) + " <= 1e-6");
}

std::string run_cli(const std::string& args, int& exit_code) {
  const std::string cmd = std::string(QOTC_CLI_PATH) + " " + args + " 2>&1";
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    exit_code = -1;
    return output;
  }
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
  exit_code = pclose(pipe);
  return output;
}

void criterion_determinism() {
  const std::string args =
      "verify all --seed 42 --fixtures " + std::string(QOTC_FIXTURES_DIR);
  int code1 = 0, code2 = 0;
  const std::string first = run_cli(args, code1);
  const std::string second = run_cli(args, code2);
  const bool pass = !first.empty() && first == second && code1 == 0 && code2 == 0;
  report(9, "byte-identical repeated verify", pass,
         "two runs of `qotc " + args + "`: " + std::to_string(first.size()) + " vs " +
             std::to_string(second.size()) + " bytes, " +
             (first == second ? "identical" : "DIFFER") + ", exit codes " +
             std::to_string(code1) + "/" + std::to_string(code2));
}

}  // namespace

int main() {
  VerifyConfig cfg;
  cfg.fixtures_dir = QOTC_FIXTURES_DIR;

  cfg.trials = 100;
  cfg.seed = 1001;
  criterion_from_suite(1, "pure-state closed form vs SDP, 100 states per d in 2..5",
                       "theorem2", cfg);

  cfg.trials = 5;
  cfg.seed = 1002;
  criterion_from_suite(2, "dimension-5 block-mixture counterexample", "c3-counterexample",
                       cfg);

  cfg.trials = 50;
  cfg.seed = 1003;
  criterion_from_suite(3, "strong duality on 50 pairs per d in 2..4", "duality", cfg);

  cfg.trials = 10;
  cfg.seed = 1004;
  criterion_from_suite(4, "fixed-ancilla identity on 20 pairs", "ancilla", cfg);

  cfg.trials = 10;
  cfg.seed = 1005;
  criterion_from_suite(5, "faithfulness", "b1", cfg);
  cfg.trials = 50;
  cfg.seed = 1006;
  criterion_from_suite(5, "monotonicity under 50 incoherent channels", "b2", cfg);
  cfg.seed = 1007;
  criterion_from_suite(5, "convexity on 50 ensembles", "b4", cfg);
  cfg.trials = 20;
  cfg.seed = 1008;
  criterion_from_suite(5, "subadditivity on 20 qubit product pairs", "subadditivity", cfg);

  criterion_convex_roof();

  cfg.trials = 100;
  cfg.seed = 1009;
  criterion_from_suite(7, "rank-one marginal factorization, 100 substates", "rank-lemma",
                       cfg);

  cfg.trials = 200;
  cfg.seed = 1010;
  criterion_from_suite(8, "speed-limit identity and saturation on 200 states", "theorem3",
                       cfg);

  criterion_determinism();

  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return 1;
}
