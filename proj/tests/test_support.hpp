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

#include <cmath>

#include "qotc/linalg.hpp"
#include "qotc/random_states.hpp"
#include "qotc/types.hpp"

namespace qotc::testing {

inline PureState plus_state() {
  CVec v(2);
  v << Complex(1.0 / std::sqrt(2.0), 0.0), Complex(1.0 / std::sqrt(2.0), 0.0);
  return PureState(v);
}

inline PureState minus_state() {
  CVec v(2);
  v << Complex(1.0 / std::sqrt(2.0), 0.0), Complex(-1.0 / std::sqrt(2.0), 0.0);
  return PureState(v);
}

inline PureState max_coherent(Index d) {
  CVec v = CVec::Constant(d, Complex(1.0 / std::sqrt(double(d)), 0.0));
  return PureState(v);
}

inline PureState bell_state(Index d) {
  CVec v = CVec::Zero(d * d);
  for (Index i = 0; i < d; ++i) v(i * d + i) = Complex(1.0 / std::sqrt(double(d)), 0.0);
  return PureState(v);
}

/// Reference partial trace with naive index bookkeeping, kept independent of
/// the library loops on purpose.
inline CMat naive_partial_trace(const CMat& m, Index d, bool trace_out_a) {
  CMat out = CMat::Zero(d, d);
  for (Index r = 0; r < d * d; ++r) {
    for (Index c = 0; c < d * d; ++c) {
      const Index ra = r / d, rb = r % d;
      const Index ca = c / d, cb = c % d;
      if (trace_out_a && ra == ca) out(rb, cb) += m(r, c);
      if (!trace_out_a && rb == cb) out(ra, ca) += m(r, c);
    }
  }
  return out;
}

}  // namespace qotc::testing
