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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qotc/io.hpp"
#include "qotc/transport.hpp"
#include "test_support.hpp"

using namespace qotc;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = (std::filesystem::temp_directory_path() / name).string();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("matrix json round trip") {
  StateSampler sampler(301);
  for (int t = 0; t < 20; ++t) {
    const Index d = 1 + (t % 5);
    const CMat m = sampler.ginibre_matrix(d, d);
    const CMat back = matrix_from_json(matrix_to_json(m));
    CHECK(max_abs_diff(m, back) == 0.0);  // doubles survive json round trips
  }
}

TEST_CASE("pure state json round trip") {
  StateSampler sampler(307);
  for (int t = 0; t < 10; ++t) {
    const PureState psi = sampler.pure_state(2 + (t % 4));
    const PureState back = pure_state_from_json(pure_state_to_json(psi));
    CHECK(max_abs_diff(psi.amplitudes(), back.amplitudes()) == 0.0);
  }
}

TEST_CASE("parse errors name the offending field") {
  CHECK_THROWS_WITH_AS(matrix_from_json(Json::parse(R"({"entries": []})"), "m"),
                       doctest::Contains("dim"), ValidationError);
  CHECK_THROWS_WITH_AS(matrix_from_json(Json::parse(R"({"dim": 0, "entries": []})"), "m"),
                       doctest::Contains("dim"), ValidationError);
  CHECK_THROWS_WITH_AS(
      matrix_from_json(Json::parse(R"({"dim": 2, "entries": [[1,0]]})"), "m"),
      doctest::Contains("entries"), ValidationError);
  CHECK_THROWS_WITH_AS(
      matrix_from_json(
          Json::parse(R"({"dim": 1, "entries": [[1,"x"]]})"), "m"),
      doctest::Contains("entries[0]"), ValidationError);
  CHECK_THROWS_WITH_AS(pure_state_from_json(Json::parse(R"({"dim": 2})"), "s"),
                       doctest::Contains("amplitudes"), ValidationError);
}

TEST_CASE("file loading validates state invariants") {
  TempFile good("qotc_io_good.json");
  save_json(good.path, matrix_to_json(CMat(0.5 * CMat::Identity(2, 2))));
  const DensityMatrix rho = load_density_matrix(good.path);
  CHECK(rho.dim() == 2);

  TempFile bad_trace("qotc_io_bad_trace.json");
  save_json(bad_trace.path, matrix_to_json(CMat(CMat::Identity(2, 2))));
  CHECK_THROWS_WITH_AS(load_density_matrix(bad_trace.path), doctest::Contains("trace"),
                       ValidationError);

  TempFile not_json("qotc_io_not_json.json");
  {
    std::ofstream out(not_json.path);
    out << "not json at all";
  }
  CHECK_THROWS_WITH_AS(load_density_matrix(not_json.path), doctest::Contains("invalid JSON"),
                       ValidationError);

  CHECK_THROWS_AS(load_density_matrix("/nonexistent/qotc.json"), ValidationError);
}

TEST_CASE("witness serialization carries the full certificate") {
  StateSampler sampler(311);
  const DensityMatrix rho = sampler.density_matrix(2);
  const DensityMatrix sigma = sampler.density_matrix(2);
  const CouplingWitness w = revised_cost(rho, sigma);
  const Json j = witness_to_json(w);
  CHECK(j.at("value").get<double>() == w.value);
  CHECK(j.at("gap").get<double>() == w.gap);
  CHECK(max_abs_diff(matrix_from_json(j.at("x_ab")), w.x_ab.matrix()) == 0.0);
  CHECK(max_abs_diff(matrix_from_json(j.at("h1")), w.dual_h1) == 0.0);
}

TEST_CASE("shipped fixture files parse and match the built-in construction") {
  const std::string dir = "fixtures";
  REQUIRE(std::filesystem::exists(dir + "/counterexample_rho.json"));

  CHECK(max_abs_diff(load_density_matrix(dir + "/counterexample_rho1.json").matrix(),
                     counterexample_rho1().matrix()) <= 1e-15);
  CHECK(max_abs_diff(load_density_matrix(dir + "/counterexample_rho2.json").matrix(),
                     counterexample_rho2().matrix()) <= 1e-15);
  CHECK(max_abs_diff(load_density_matrix(dir + "/counterexample_rho.json").matrix(),
                     counterexample_mixture().matrix()) <= 1e-15);

  const Json jw = load_json(dir + "/counterexample_witness.json");
  const CounterexampleWitness built = counterexample_witness();
  CHECK(max_abs_diff(matrix_from_json(jw.at("x_ab")), built.x_ab.matrix()) <= 1e-15);
  CHECK(max_abs_diff(matrix_from_json(jw.at("y_ab")), built.y_ab.matrix()) <= 1e-15);
  CHECK(max_abs_diff(matrix_from_json(jw.at("delta")), built.delta.matrix()) <= 1e-15);

  const PureState plus = load_pure_state(dir + "/plus_state.json");
  CHECK(plus.dim() == 2);
  CHECK(std::abs(plus.amplitudes()(0) - Complex(1.0 / std::sqrt(2.0), 0.0)) == 0.0);
}
