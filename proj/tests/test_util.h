// Copyright 2026 The deploylab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DEPLOYLAB_TESTS_TEST_UTIL_H_
#define DEPLOYLAB_TESTS_TEST_UTIL_H_

#include <cmath>
#include <vector>

#include "deploylab/game.h"
#include "deploylab/random.h"

namespace deploylab::testing {

inline Matrix Rps() {
  Matrix c(3, 3);
  c << 0, -1, 1, 1, 0, -1, -1, 1, 0;
  return c;
}

inline Matrix Dominant() {
  Matrix c(2, 2);
  c << 1, 1, 0, 0;
  return c;
}

inline Matrix StagHuntRow() {
  Matrix a(2, 2);
  a << 10, -1, 0, 0;
  return a;
}

// Naive double loop, independent of Eigen's product.
inline std::vector<double> NaiveProduct(const Matrix& c, const Vector& x) {
  std::vector<double> out(c.rows(), 0.0);
  for (int i = 0; i < c.rows(); ++i) {
    for (int j = 0; j < c.cols(); ++j) out[i] += c(i, j) * x[j];
  }
  return out;
}

inline MixedStrategy RandomInterior(int n, Rng& rng) {
  while (true) {
    MixedStrategy x = SampleSimplexUniform(n, rng);
    if (x.IsInterior()) return x;
  }
}

}  // namespace deploylab::testing

#endif  // DEPLOYLAB_TESTS_TEST_UTIL_H_
