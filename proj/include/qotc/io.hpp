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

#include <string>

#include <json.hpp>

#include "qotc/coherence.hpp"
#include "qotc/speedlimit.hpp"
#include "qotc/transport.hpp"
#include "qotc/types.hpp"

namespace qotc {

using Json = nlohmann::ordered_json;

// Matrix exchange format: {"dim": d, "entries": [[re, im], ...]} row-major.
// Pure states use {"dim": d, "amplitudes": [[re, im], ...]}.

Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j, const std::string& context = "matrix");

Json pure_state_to_json(const PureState& psi);
PureState pure_state_from_json(const Json& j, const std::string& context = "state");

Json witness_to_json(const CouplingWitness& w);
Json coherence_result_to_json(const CoherenceResult& r);
Json speed_limit_report_to_json(const SpeedLimitReport& r);

/// Parses and validates a density matrix file; errors name the offending
/// field or the violated invariant.
DensityMatrix load_density_matrix(const std::string& path);
PureState load_pure_state(const std::string& path);
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

}  // namespace qotc
