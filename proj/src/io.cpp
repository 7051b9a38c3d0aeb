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

#include "qotc/io.hpp"

#include <fstream>

namespace qotc {

namespace {

// Reads {"dim": d, "<field>": [[re, im], ...]} into a flat complex array.
CVec complex_array_from_json(const Json& j, const std::string& field, Index expected,
                             const std::string& context) {
  if (!j.contains(field))
    throw ValidationError(context + ": missing field '" + field + "'");
  const Json& arr = j.at(field);
  if (!arr.is_array())
    throw ValidationError(context + ": field '" + field + "' must be an array");
  if (static_cast<Index>(arr.size()) != expected)
    throw ValidationError(context + ": field '" + field + "' has " +
                          std::to_string(arr.size()) + " entries, expected " +
                          std::to_string(expected));
  CVec out(expected);
  for (Index k = 0; k < expected; ++k) {
    const Json& pair = arr.at(static_cast<std::size_t>(k));
    if (!pair.is_array() || pair.size() != 2 || !pair.at(0).is_number() ||
        !pair.at(1).is_number())
      throw ValidationError(context + ": " + field + "[" + std::to_string(k) +
                            "] must be a [re, im] pair of numbers");
    out(k) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  return out;
}

Index dim_from_json(const Json& j, const std::string& context) {
  if (!j.is_object()) throw ValidationError(context + ": expected a JSON object");
  if (!j.contains("dim"))
    throw ValidationError(context + ": missing field 'dim'");
  if (!j.at("dim").is_number_integer() || j.at("dim").get<long long>() < 1)
    throw ValidationError(context + ": field 'dim' must be a positive integer");
  return static_cast<Index>(j.at("dim").get<long long>());
}

Json complex_array_to_json(const CVec& v) {
  Json arr = Json::array();
  for (Index k = 0; k < v.size(); ++k)
    arr.push_back(Json::array({v(k).real(), v(k).imag()}));
  return arr;
}

}  // namespace

Json matrix_to_json(const CMat& m) {
  Json j;
  j["dim"] = m.rows();
  CVec flat(m.size());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) flat(r * m.cols() + c) = m(r, c);
  j["entries"] = complex_array_to_json(flat);
  return j;
}

CMat matrix_from_json(const Json& j, const std::string& context) {
  const Index d = dim_from_json(j, context);
  const CVec flat = complex_array_from_json(j, "entries", d * d, context);
  CMat m(d, d);
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c) m(r, c) = flat(r * d + c);
  return m;
}

Json pure_state_to_json(const PureState& psi) {
  Json j;
  j["dim"] = psi.dim();
  j["amplitudes"] = complex_array_to_json(psi.amplitudes());
  return j;
}

PureState pure_state_from_json(const Json& j, const std::string& context) {
  const Index d = dim_from_json(j, context);
  return PureState(complex_array_from_json(j, "amplitudes", d, context));
}

Json witness_to_json(const CouplingWitness& w) {
  Json j;
  j["value"] = w.value;
  j["gap"] = w.gap;
  j["x_ab"] = matrix_to_json(w.x_ab.matrix());
  j["y_ab"] = matrix_to_json(w.y_ab.matrix());
  j["h1"] = matrix_to_json(w.dual_h1);
  j["h2"] = matrix_to_json(w.dual_h2);
  return j;
}

Json coherence_result_to_json(const CoherenceResult& r) {
  Json j;
  j["value"] = r.value;
  Json delta = Json::array();
  for (Index i = 0; i < r.optimal_delta.dim(); ++i)
    delta.push_back(r.optimal_delta.matrix()(i, i).real());
  j["delta"] = delta;
  j["witness"] = witness_to_json(r.witness);
  return j;
}

Json speed_limit_report_to_json(const SpeedLimitReport& r) {
  Json j;
  j["tau"] = r.tau;
  j["target_index"] = r.target_index;
  j["fidelity_at_tau"] = r.fidelity_at_tau;
  return j;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": invalid JSON: " + e.what());
  }
  return j;
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError(path + ": cannot open file for writing");
  out << j.dump(2) << '\n';
}

DensityMatrix load_density_matrix(const std::string& path) {
  const CMat m = matrix_from_json(load_json(path), path);
  try {
    return DensityMatrix(m);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

PureState load_pure_state(const std::string& path) {
  const Json j = load_json(path);
  try {
    return pure_state_from_json(j, path);
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    throw ValidationError(msg.rfind(path, 0) == 0 ? msg : path + ": " + msg);
  }
}

}  // namespace qotc
