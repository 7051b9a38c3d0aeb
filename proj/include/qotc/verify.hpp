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
#include <vector>

#include "qotc/coherence.hpp"
#include "qotc/sdp.hpp"

namespace qotc {

struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool upper_bound = true;  // pass iff measured <= bound; otherwise measured >= bound
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<VerifyCheck> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct VerifyConfig {
  // Trial count; per sampled dimension for theorem2/duality/ancilla/b1, total
  // across dimensions for the remaining randomized suites.
  int trials = 5;
  std::uint64_t seed = 1;
  SolverConfig solver;
  RoofConfig roof;
  double omega = 1.0;
  std::string fixtures_dir = "fixtures";
};

/// Suite names accepted by run_verify, excluding the "all" alias.
const std::vector<std::string>& verify_suite_names();

/// Runs one named suite, or every suite for "all".
std::vector<SuiteReport> run_verify(const std::string& suite, const VerifyConfig& config);

}  // namespace qotc
