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

// Regenerates the JSON fixture files shipped under fixtures/.

#include <cmath>
#include <filesystem>
#include <iostream>

#include "qotc/coherence.hpp"
#include "qotc/io.hpp"

int main(int argc, char** argv) {
  using namespace qotc;
  const std::string dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);

  const double s2 = 1.0 / std::sqrt(2.0);
  const double s3 = 1.0 / std::sqrt(3.0);

  // Pure states.
  CVec zero2 = CVec::Zero(2), one2 = CVec::Zero(2), plus2(2), max3(3);
  zero2(0) = 1.0;
  one2(1) = 1.0;
  plus2 << Complex(s2, 0.0), Complex(s2, 0.0);
  max3 << Complex(s3, 0.0), Complex(s3, 0.0), Complex(s3, 0.0);
  save_json(dir + "/zero_state.json", pure_state_to_json(PureState(zero2)));
  save_json(dir + "/one_state.json", pure_state_to_json(PureState(one2)));
  save_json(dir + "/plus_state.json", pure_state_to_json(PureState(plus2)));
  save_json(dir + "/max_coherent_d3_state.json", pure_state_to_json(PureState(max3)));

  // Density-matrix forms of the same states.
  save_json(dir + "/zero_dm.json", matrix_to_json(PureState(zero2).projector()));
  save_json(dir + "/one_dm.json", matrix_to_json(PureState(one2).projector()));
  save_json(dir + "/plus_dm.json", matrix_to_json(PureState(plus2).projector()));
  save_json(dir + "/max_coherent_d3_dm.json", matrix_to_json(PureState(max3).projector()));

  // The dimension-5 additivity counterexample and its explicit witness.
  save_json(dir + "/counterexample_rho1.json", matrix_to_json(counterexample_rho1().matrix()));
  save_json(dir + "/counterexample_rho2.json", matrix_to_json(counterexample_rho2().matrix()));
  save_json(dir + "/counterexample_rho.json",
            matrix_to_json(counterexample_mixture().matrix()));
  const CounterexampleWitness w = counterexample_witness();
  Json jw;
  jw["delta"] = matrix_to_json(w.delta.matrix());
  jw["x_ab"] = matrix_to_json(w.x_ab.matrix());
  jw["y_ab"] = matrix_to_json(w.y_ab.matrix());
  save_json(dir + "/counterexample_witness.json", jw);

  std::cout << "fixtures written to " << dir << '\n';
  return 0;
}
