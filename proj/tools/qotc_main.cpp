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

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qotc/io.hpp"
#include "qotc/verify.hpp"

namespace {

// Exit codes: 0 success, 1 verification failure, 2 input error, 3 solver error.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitSolverError = 3;

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level_from_env() {
  const char* raw = std::getenv("QOT_LOG_LEVEL");
  if (raw == nullptr) return LogLevel::Error;
  const std::string level(raw);
  if (level == "debug") return LogLevel::Debug;
  if (level == "info") return LogLevel::Info;
  return LogLevel::Error;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void log_solver(const std::string& label, qotc::SdpStatus status,
                const std::vector<qotc::IterationStat>& trace) {
  const LogLevel level = log_level_from_env();
  if (level >= LogLevel::Info)
    std::cerr << "# " << label << ": status " << qotc::to_string(status) << " after "
              << trace.size() << " iterations\n";
  if (level >= LogLevel::Debug) {
    std::cerr << "# iteration,gap,primal_res,dual_res\n";
    for (const auto& s : trace)
      std::cerr << s.iteration << ',' << fmt(s.primal_objective - s.dual_objective) << ','
                << fmt(s.primal_residual) << ',' << fmt(s.dual_residual) << '\n';
  }
}

struct GlobalOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  std::uint64_t seed = 1;
  int starts = 32;
  std::string output = "text";
  double omega = 1.0;

  qotc::SolverConfig solver() const {
    qotc::SolverConfig cfg;
    cfg.gap_tol = gap_tol;
    cfg.feas_tol = feas_tol;
    cfg.seed = seed;
    return cfg;
  }

  qotc::RoofConfig roof() const {
    qotc::RoofConfig cfg;
    cfg.starts = starts;
    cfg.seed = seed;
    return cfg;
  }

  bool json() const { return output == "json"; }
};

void emit(const GlobalOptions& opts, const qotc::Json& doc) {
  if (opts.json()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object() || value.is_array()) continue;  // matrices stay in JSON mode
    std::cout << key << ": "
              << (value.is_number_float() ? fmt(value.get<double>()) : value.dump()) << '\n';
  }
}

int exit_code_for(qotc::SdpStatus status) {
  return status == qotc::SdpStatus::Optimal ? kExitOk : kExitSolverError;
}

int run_transport(const GlobalOptions& opts, const std::string& rho_file,
                  const std::string& sigma_file, bool revised, bool dual,
                  bool ancilla_check) {
  const qotc::DensityMatrix rho = qotc::load_density_matrix(rho_file);
  const qotc::DensityMatrix sigma = qotc::load_density_matrix(sigma_file);
  if (rho.dim() != sigma.dim())
    throw qotc::ValidationError(sigma_file + ": dimension does not match " + rho_file);

  qotc::Json doc;
  qotc::SdpStatus status = qotc::SdpStatus::Optimal;
  if (revised || dual || ancilla_check) {
    const qotc::CouplingWitness w = qotc::revised_cost(rho, sigma, opts.solver());
    log_solver("revised_cost", w.status, w.trace);
    doc["quantity"] = "revised_transport_cost";
    doc["value"] = w.value;
    doc["gap"] = w.gap;
    doc["status"] = qotc::to_string(w.status);
    status = w.status;
    if (dual) {
      const qotc::DualCertificate cert = qotc::revised_cost_dual(rho, sigma, opts.solver());
      log_solver("revised_cost_dual", cert.status, cert.trace);
      doc["dual_value"] = cert.value;
      doc["duality_gap"] = std::abs(w.value - cert.value);
      doc["dual_min_lmi_eigenvalue"] = cert.min_lmi_eigenvalue;
      if (cert.status != qotc::SdpStatus::Optimal) status = cert.status;
    }
    if (ancilla_check) {
      const qotc::TransportResult lifted =
          qotc::revised_cost_via_ancilla(rho, sigma, opts.solver());
      log_solver("revised_cost_via_ancilla", lifted.status, lifted.trace);
      doc["ancilla_value"] = lifted.value;
      doc["ancilla_deviation"] = std::abs(lifted.value - w.value);
      if (lifted.status != qotc::SdpStatus::Optimal) status = lifted.status;
    }
  } else {
    const qotc::TransportResult res = qotc::transport_cost(rho, sigma, opts.solver());
    log_solver("transport_cost", res.status, res.trace);
    doc["quantity"] = "transport_cost";
    doc["value"] = res.value;
    doc["gap"] = res.gap;
    doc["status"] = qotc::to_string(res.status);
    status = res.status;
  }
  emit(opts, doc);
  return exit_code_for(status);
}

int run_coherence(const GlobalOptions& opts, const std::string& rho_file, bool pure_analytic,
                  bool convex_roof, const std::string& witness_out) {
  const qotc::DensityMatrix rho = qotc::load_density_matrix(rho_file);
  const qotc::CoherenceResult res = qotc::transport_coherence(rho, opts.solver());
  log_solver("transport_coherence", res.status, res.witness.trace);

  qotc::Json doc;
  doc["quantity"] = "transport_coherence";
  doc["value"] = res.value;
  doc["gap"] = res.gap;
  doc["status"] = qotc::to_string(res.status);

  if (pure_analytic) {
    if (qotc::numerical_rank(rho.matrix()) == 1) {
      const qotc::HermitianEigen eig = qotc::eig_hermitian(rho.matrix());
      const qotc::PureState psi(eig.vectors.col(0), 1e-6);
      const double analytic = qotc::transport_coherence_pure(psi);
      doc["analytic_value"] = analytic;
      doc["analytic_deviation"] = std::abs(res.value - analytic);
    } else {
      doc["analytic_value"] = nullptr;
      doc["analytic_note"] = "input is not pure; closed form not applicable";
    }
  }
  if (convex_roof) {
    const qotc::RoofResult roof = qotc::convex_roof_coherence(rho, opts.roof());
    doc["convex_roof_value"] = roof.value;
    doc["convex_roof_converged_starts"] = roof.converged_starts;
    doc["convex_roof_ensemble_size"] = static_cast<int>(roof.decomposition.states.size());
  }
  if (!witness_out.empty()) {
    qotc::save_json(witness_out, qotc::coherence_result_to_json(res));
    doc["witness_file"] = witness_out;
  }
  emit(opts, doc);
  return exit_code_for(res.status);
}

int run_speedlimit(const GlobalOptions& opts, const std::string& psi_file) {
  const qotc::PureState psi = qotc::load_pure_state(psi_file);
  const qotc::SpeedLimitReport report = qotc::time_to_incoherent(psi, opts.omega);
  qotc::Json doc = qotc::speed_limit_report_to_json(report);
  doc["quantity"] = "time_to_incoherent";
  emit(opts, doc);
  return kExitOk;
}

int run_verify_cmd(const GlobalOptions& opts, const std::string& suite, int trials,
                   const std::string& fixtures_dir) {
  qotc::VerifyConfig cfg;
  cfg.trials = trials;
  cfg.seed = opts.seed;
  cfg.solver = opts.solver();
  cfg.roof = opts.roof();
  cfg.omega = opts.omega;
  cfg.fixtures_dir = fixtures_dir;
  const std::vector<qotc::SuiteReport> reports = qotc::run_verify(suite, cfg);

  bool all_pass = true;
  std::string first_failure;
  qotc::Json doc;
  doc["suite"] = suite;
  doc["seed"] = opts.seed;
  doc["trials"] = trials;
  qotc::Json suites = qotc::Json::array();
  for (const auto& rep : reports) {
    qotc::Json checks = qotc::Json::array();
    for (const auto& c : rep.checks) {
      qotc::Json jc;
      jc["name"] = c.name;
      jc["measured"] = c.measured;
      jc["tolerance"] = c.bound;
      jc["comparison"] = c.upper_bound ? "<=" : ">=";
      jc["pass"] = c.pass;
      checks.push_back(jc);
      if (!c.pass && first_failure.empty()) first_failure = c.name;
      all_pass = all_pass && c.pass;
    }
    qotc::Json jr;
    jr["suite"] = rep.suite;
    jr["pass"] = rep.pass();
    jr["checks"] = checks;
    suites.push_back(jr);
  }
  doc["suites"] = suites;
  doc["pass"] = all_pass;

  if (opts.json()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "verify " << suite << " (seed=" << opts.seed << ", trials=" << trials
              << ")\n";
    for (const auto& rep : reports) {
      std::cout << "suite " << rep.suite << '\n';
      for (const auto& c : rep.checks)
        std::cout << "  check " << c.name << ": measured=" << fmt(c.measured) << ' '
                  << (c.upper_bound ? "<=" : ">=") << " tol=" << fmt(c.bound) << " : "
                  << (c.pass ? "pass" : "FAIL") << '\n';
    }
    std::cout << "result: " << (all_pass ? "PASS" : "FAIL") << '\n';
  }
  if (!all_pass) {
    std::cerr << "verification failed: " << first_failure << '\n';
    return kExitVerifyFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum optimal transport coherence toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  GlobalOptions opts;
  app.add_option("--gap-tol", opts.gap_tol, "Solver duality gap tolerance");
  app.add_option("--feas-tol", opts.feas_tol, "Solver feasibility tolerance");
  app.add_option("--seed", opts.seed, "Master seed for randomized routines");
  app.add_option("--starts", opts.starts, "Multi-starts for the convex roof search");
  app.add_option("--output", opts.output, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--omega", opts.omega, "Angular frequency for speed-limit quantities");

  auto* transport = app.add_subcommand("transport", "Transport cost between two states");
  std::string rho_file, sigma_file;
  bool revised = false, dual = false, ancilla = false;
  transport->add_option("rho", rho_file, "Density matrix JSON file")->required();
  transport->add_option("sigma", sigma_file, "Density matrix JSON file")->required();
  transport->add_flag("--revised", revised, "Compute the revised (monotone) cost");
  transport->add_flag("--dual", dual, "Also solve the dual route and report the gap");
  transport->add_flag("--ancilla-check", ancilla, "Cross-check via the fixed-ancilla identity");

  auto* coherence = app.add_subcommand("coherence", "Coherence of a state");
  std::string coh_file, witness_out;
  bool pure_analytic = false, convex_roof = false;
  coherence->add_option("rho", coh_file, "Density matrix JSON file")->required();
  coherence->add_flag("--pure-analytic", pure_analytic,
                      "Cross-check against the pure-state closed form");
  coherence->add_flag("--convex-roof", convex_roof, "Also compute the convex-roof measure");
  coherence->add_option("--witness-out", witness_out, "Write the witness JSON to this file");

  auto* speedlimit = app.add_subcommand("speedlimit", "Time to the nearest incoherent state");
  std::string psi_file;
  speedlimit->add_option("psi", psi_file, "Pure state JSON file")->required();

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite = "all";
  int trials = 5;
  std::string fixtures_dir = "fixtures";
  auto suite_names = qotc::verify_suite_names();
  suite_names.push_back("all");
  verify->add_option("suite", suite, "Suite name or 'all'")
      ->required()
      ->check(CLI::IsMember(suite_names));
  verify->add_option("--trials", trials, "Trials per suite (see README for semantics)");
  verify->add_option("--fixtures", fixtures_dir, "Directory with shipped fixture files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (transport->parsed())
      return run_transport(opts, rho_file, sigma_file, revised, dual, ancilla);
    if (coherence->parsed())
      return run_coherence(opts, coh_file, pure_analytic, convex_roof, witness_out);
    if (speedlimit->parsed()) return run_speedlimit(opts, psi_file);
    if (verify->parsed()) return run_verify_cmd(opts, suite, trials, fixtures_dir);
  } catch (const qotc::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolverError;
  } catch (const qotc::ValidationError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolverError;
  }
  return kExitOk;
}
