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

#include "qotc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "qotc/io.hpp"
#include "qotc/random_states.hpp"
#include "qotc/speedlimit.hpp"
#include "qotc/transport.hpp"

namespace qotc {

namespace {

VerifyCheck upper(const std::string& name, double measured, double bound) {
  return {name, measured, bound, true, measured <= bound};
}

VerifyCheck lower(const std::string& name, double measured, double bound) {
  return {name, measured, bound, false, measured >= bound};
}

// Distinct seed streams per suite keep trials decorrelated while remaining
// reproducible from the single master seed.
enum SeedStream : std::uint64_t {
  kTheorem2 = 1'000'000,
  kDuality = 2'000'000,
  kAncilla = 3'000'000,
  kB1 = 4'000'000,
  kB2 = 5'000'000,
  kB4 = 6'000'000,
  kSubadd = 7'000'000,
  kTheorem3 = 8'000'000,
  kRankLemma = 9'000'000,
};

SuiteReport suite_theorem2(const VerifyConfig& cfg) {
  SuiteReport rep{"theorem2", {}};
  double max_dev = 0.0;
  for (Index d = 2; d <= 5; ++d) {
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler sampler(derive_seed(cfg.seed, kTheorem2 + 1000 * d + t));
      const PureState psi = sampler.pure_state(d);
      const CoherenceResult res =
          transport_coherence(DensityMatrix::from_pure(psi), cfg.solver);
      max_dev = std::max(max_dev, std::abs(res.value - transport_coherence_pure(psi)));
    }
  }
  rep.checks.push_back(upper("theorem2.max_deviation_from_closed_form", max_dev, 1e-6));
  return rep;
}

SuiteReport suite_duality(const VerifyConfig& cfg) {
  SuiteReport rep{"duality", {}};
  double max_gap = 0.0;
  double min_feas = 0.0;
  for (Index d = 2; d <= 4; ++d) {
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler sampler(derive_seed(cfg.seed, kDuality + 1000 * d + t));
      const DensityMatrix rho = sampler.density_matrix(d);
      const DensityMatrix sigma = sampler.density_matrix(d);
      const CouplingWitness primal = revised_cost(rho, sigma, cfg.solver);
      const DualCertificate dual = revised_cost_dual(rho, sigma, cfg.solver);
      max_gap = std::max(max_gap, std::abs(primal.value - dual.value));
      min_feas = std::min(min_feas, dual.min_lmi_eigenvalue);
    }
  }
  rep.checks.push_back(upper("duality.max_primal_dual_gap", max_gap, 1e-6));
  rep.checks.push_back(lower("duality.min_dual_lmi_eigenvalue", min_feas, -1e-9));

  // The point H1 = H2 = -I is strictly feasible: both shifted projectors have
  // smallest eigenvalue exactly 2.
  double slater_margin = std::numeric_limits<double>::infinity();
  for (Index d = 2; d <= 4; ++d) {
    const CMat two_eye = 2.0 * CMat::Identity(d * d, d * d);
    slater_margin = std::min(
        {slater_margin, min_eigenvalue(CMat(sym_projector(d).matrix() + two_eye)),
         min_eigenvalue(CMat(asym_projector(d).matrix() + two_eye))});
  }
  rep.checks.push_back(lower("duality.slater_point_min_eigenvalue", slater_margin, 2.0 - 1e-9));
  return rep;
}

SuiteReport suite_ancilla(const VerifyConfig& cfg) {
  SuiteReport rep{"ancilla", {}};
  double max_dev = 0.0;
  for (Index d = 2; d <= 3; ++d) {
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler sampler(derive_seed(cfg.seed, kAncilla + 1000 * d + t));
      const DensityMatrix rho = sampler.density_matrix(d);
      const DensityMatrix sigma = sampler.density_matrix(d);
      const CouplingWitness primal = revised_cost(rho, sigma, cfg.solver);
      const TransportResult lifted = revised_cost_via_ancilla(rho, sigma, cfg.solver);
      max_dev = std::max(max_dev, std::abs(primal.value - lifted.value));
    }
  }
  rep.checks.push_back(upper("ancilla.max_identity_deviation", max_dev, 1e-6));
  return rep;
}

SuiteReport suite_b1(const VerifyConfig& cfg) {
  SuiteReport rep{"b1", {}};
  double diag_max = 0.0;
  double coherent_min = std::numeric_limits<double>::infinity();
  double offdiag_min = std::numeric_limits<double>::infinity();
  for (Index d = 2; d <= 5; ++d) {
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler sampler(derive_seed(cfg.seed, kB1 + 1000 * d + t));
      const DensityMatrix diag = sampler.diagonal_state(d);
      diag_max = std::max(diag_max, transport_coherence(diag, cfg.solver).value);
      const DensityMatrix coherent = sampler.density_matrix(d);
      offdiag_min = std::min(offdiag_min, coherent.max_offdiagonal());
      coherent_min = std::min(coherent_min, transport_coherence(coherent, cfg.solver).value);
    }
  }
  rep.checks.push_back(upper("b1.diagonal_max_value", diag_max, 1e-6));
  rep.checks.push_back(lower("b1.coherent_min_offdiagonal", offdiag_min, 1e-5));
  rep.checks.push_back(lower("b1.coherent_min_value", coherent_min, 1e-6));
  return rep;
}

SuiteReport suite_b2(const VerifyConfig& cfg) {
  SuiteReport rep{"b2", {}};
  double max_violation = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    const Index d = 2 + (t % 3);
    StateSampler sampler(derive_seed(cfg.seed, kB2 + t));
    const DensityMatrix rho = sampler.density_matrix(d);
    const IncoherentChannel channel =
        sample_incoherent_channel(d, 1 + (t % 4), derive_seed(cfg.seed, kB2 + 500 + t));
    const double before = transport_coherence(rho, cfg.solver).value;
    const double after = transport_coherence(channel.apply(rho), cfg.solver).value;
    max_violation = std::max(max_violation, after - before);
  }
  rep.checks.push_back(upper("b2.max_monotonicity_violation", max_violation, 1e-6));
  return rep;
}

SuiteReport suite_b4(const VerifyConfig& cfg) {
  SuiteReport rep{"b4", {}};
  double max_violation = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    const Index d = 2 + (t % 2);
    const int parts = 2 + (t % 2);
    StateSampler sampler(derive_seed(cfg.seed, kB4 + t));
    const RVec p = sampler.probability_vector(parts);
    CMat mix = CMat::Zero(d, d);
    double average = 0.0;
    for (int i = 0; i < parts; ++i) {
      const DensityMatrix part = sampler.density_matrix(d);
      mix += p(i) * part.matrix();
      average += p(i) * transport_coherence(part, cfg.solver).value;
    }
    const double mixed = transport_coherence(DensityMatrix(mix), cfg.solver).value;
    max_violation = std::max(max_violation, mixed - average);
  }
  rep.checks.push_back(upper("b4.max_convexity_violation", max_violation, 1e-6));
  return rep;
}

SuiteReport suite_subadditivity(const VerifyConfig& cfg) {
  SuiteReport rep{"subadditivity", {}};
  double max_violation = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    StateSampler sampler(derive_seed(cfg.seed, kSubadd + t));
    const DensityMatrix rho = sampler.density_matrix(2);
    const DensityMatrix sigma = sampler.density_matrix(2);
    const double separate = transport_coherence(rho, cfg.solver).value +
                            transport_coherence(sigma, cfg.solver).value;
    const DensityMatrix product(kron(rho.matrix(), sigma.matrix()));
    const double joint = transport_coherence(product, cfg.solver).value;
    max_violation = std::max(max_violation, joint - separate);
  }
  rep.checks.push_back(upper("subadditivity.max_violation", max_violation, 1e-6));
  return rep;
}

SuiteReport suite_c3(const VerifyConfig& cfg) {
  SuiteReport rep{"c3-counterexample", {}};
  const CounterexampleReport cex = block_additivity_counterexample(cfg.solver);
  for (const auto& c : cex.checks)
    rep.checks.push_back({"c3." + c.name, c.measured, c.bound, c.upper_bound, c.pass});

  // When the shipped fixture files are present, cross-check them against the
  // built-in construction and re-evaluate the witness objective from disk.
  namespace fs = std::filesystem;
  const fs::path dir(cfg.fixtures_dir);
  const fs::path rho1_path = dir / "counterexample_rho1.json";
  const fs::path rho2_path = dir / "counterexample_rho2.json";
  const fs::path rho_path = dir / "counterexample_rho.json";
  const fs::path witness_path = dir / "counterexample_witness.json";
  if (fs::exists(rho1_path) && fs::exists(rho2_path) && fs::exists(rho_path) &&
      fs::exists(witness_path)) {
    double dev = 0.0;
    dev = std::max(dev, max_abs_diff(load_density_matrix(rho1_path.string()).matrix(),
                                     counterexample_rho1().matrix()));
    dev = std::max(dev, max_abs_diff(load_density_matrix(rho2_path.string()).matrix(),
                                     counterexample_rho2().matrix()));
    dev = std::max(dev, max_abs_diff(load_density_matrix(rho_path.string()).matrix(),
                                     counterexample_mixture().matrix()));
    const Json jw = load_json(witness_path.string());
    const CMat x = matrix_from_json(jw.at("x_ab"), witness_path.string() + ": x_ab");
    const CMat y = matrix_from_json(jw.at("y_ab"), witness_path.string() + ": y_ab");
    const CMat delta = matrix_from_json(jw.at("delta"), witness_path.string() + ": delta");
    const CounterexampleWitness built = counterexample_witness();
    dev = std::max(dev, max_abs_diff(x, built.x_ab.matrix()));
    dev = std::max(dev, max_abs_diff(y, built.y_ab.matrix()));
    dev = std::max(dev, max_abs_diff(delta, built.delta.matrix()));
    rep.checks.push_back(upper("c3.fixture_files_match_builtin", dev, 1e-12));
    const double file_value =
        (x * sym_projector(5).matrix() + y * asym_projector(5).matrix()).trace().real();
    rep.checks.push_back(
        upper("c3.fixture_witness_objective_vs_quarter", std::abs(file_value - 0.25), 1e-10));
  }
  return rep;
}

SuiteReport suite_theorem3(const VerifyConfig& cfg) {
  SuiteReport rep{"theorem3", {}};
  double max_identity_dev = 0.0;
  double min_fidelity = 1.0;
  double max_order_violation = 0.0;
  double prev_value = -1.0, prev_tau = 0.0;
  for (int t = 0; t < cfg.trials; ++t) {
    const Index d = 2 + (t % 5);
    StateSampler sampler(derive_seed(cfg.seed, kTheorem3 + t));
    const PureState psi = sampler.pure_state(d);
    const SpeedLimitReport report = time_to_incoherent(psi, cfg.omega);
    const double from_value =
        time_from_coherence(transport_coherence_pure(psi), cfg.omega);
    max_identity_dev = std::max(max_identity_dev, std::abs(report.tau - from_value));
    if (report.tau > 0.0) min_fidelity = std::min(min_fidelity, report.fidelity_at_tau);
    if (prev_value >= 0.0) {
      // Larger pure-state coherence must never give a shorter time.
      const double hi = std::max(prev_value, transport_coherence_pure(psi));
      const double hi_tau = hi == prev_value ? prev_tau : report.tau;
      const double lo_tau = hi == prev_value ? report.tau : prev_tau;
      max_order_violation = std::max(max_order_violation, lo_tau - hi_tau);
    }
    prev_value = transport_coherence_pure(psi);
    prev_tau = report.tau;
  }
  CVec plus(2);
  plus << Complex(1.0 / std::sqrt(2.0), 0.0), Complex(1.0 / std::sqrt(2.0), 0.0);
  const double tau_plus = time_to_incoherent(PureState(plus), 1.0).tau;

  rep.checks.push_back(upper("theorem3.max_identity_deviation", max_identity_dev, 1e-12));
  rep.checks.push_back(lower("theorem3.min_saturation_fidelity", min_fidelity, 1.0 - 1e-7));
  rep.checks.push_back(upper("theorem3.max_order_violation", max_order_violation, 1e-12));
  rep.checks.push_back(
      upper("theorem3.plus_state_tau_vs_pi_4", std::abs(tau_plus - M_PI / 4.0), 1e-12));
  return rep;
}

SuiteReport suite_rank_lemma(const VerifyConfig& cfg) {
  SuiteReport rep{"rank-lemma", {}};
  double max_residual = 0.0;
  double max_recovery_dev = 0.0;
  for (int t = 0; t < cfg.trials; ++t) {
    const Index d = 2 + (t % 3);
    StateSampler sampler(derive_seed(cfg.seed, kRankLemma + t));
    const double mass = 0.05 + 0.95 * sampler.uniform();
    const DensityMatrix rho_a = sampler.density_matrix(d);
    const PureState phi = sampler.pure_state(d);
    const BipartiteOperator x(d, mass * kron(rho_a.matrix(), phi.projector()));
    const RankOneFactorization f = factor_rank_one_marginal(x, 1e-9);
    max_residual = std::max(max_residual, f.residual);
    max_recovery_dev =
        std::max(max_recovery_dev,
                 max_abs_diff(f.marginal_a, CMat(mass * rho_a.matrix())));
  }
  rep.checks.push_back(upper("rank_lemma.max_product_residual", max_residual, 1e-9));
  rep.checks.push_back(upper("rank_lemma.max_marginal_recovery_error", max_recovery_dev, 1e-8));

  int rejected = 0;
  const int entangled_cases = 4;
  for (int t = 0; t < entangled_cases; ++t) {
    const Index d = 2 + (t % 2);
    CVec v = CVec::Zero(d * d);
    for (Index i = 0; i < d; ++i) v(i * d + i) = Complex(1.0 / std::sqrt(double(d)), 0.0);
    try {
      factor_rank_one_marginal(BipartiteOperator(d, v * v.adjoint()), 1e-9);
    } catch (const ValidationError&) {
      ++rejected;
    }
  }
  rep.checks.push_back(lower("rank_lemma.entangled_inputs_rejected",
                             static_cast<double>(rejected),
                             static_cast<double>(entangled_cases)));
  return rep;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {
      "b1",       "b2",       "b4",            "c3-counterexample", "duality",
      "theorem2", "theorem3", "subadditivity", "rank-lemma",        "ancilla"};
  return names;
}

std::vector<SuiteReport> run_verify(const std::string& suite, const VerifyConfig& config) {
  std::vector<SuiteReport> out;
  auto run_one = [&](const std::string& name) {
    if (name == "b1") out.push_back(suite_b1(config));
    else if (name == "b2") out.push_back(suite_b2(config));
    else if (name == "b4") out.push_back(suite_b4(config));
    else if (name == "c3-counterexample") out.push_back(suite_c3(config));
    else if (name == "duality") out.push_back(suite_duality(config));
    else if (name == "theorem2") out.push_back(suite_theorem2(config));
    else if (name == "theorem3") out.push_back(suite_theorem3(config));
    else if (name == "subadditivity") out.push_back(suite_subadditivity(config));
    else if (name == "rank-lemma") out.push_back(suite_rank_lemma(config));
    else if (name == "ancilla") out.push_back(suite_ancilla(config));
    else throw ValidationError("suite: unknown suite '" + name + "'");
  };
  if (suite == "all") {
    for (const auto& name : verify_suite_names()) run_one(name);
  } else {
    run_one(suite);
  }
  return out;
}

}  // namespace qotc
