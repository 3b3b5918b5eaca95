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

#ifndef DEPLOYLAB_RANDOM_H_
#define DEPLOYLAB_RANDOM_H_

#include <cstdint>
#include <random>

#include "deploylab/game.h"

namespace deploylab {

using Rng = std::mt19937_64;

// Counter-based seed derivation: stream `index` of `seed` is reproducible
// without drawing streams 0..index-1.
uint64_t DeriveSeed(uint64_t seed, uint64_t index);

inline Rng StreamRng(uint64_t seed, uint64_t index) {
  return Rng(DeriveSeed(seed, index));
}

// Uniform on [0, 1).
double Uniform01(Rng& rng);

// Dirichlet(1, ..., 1), i.e. uniform on the simplex. Always interior.
MixedStrategy SampleSimplexUniform(int n, Rng& rng);

// Matrix with i.i.d. Uniform[0, 1) entries.
Matrix SampleUniformMatrix(int rows, int cols, Rng& rng);

}  // namespace deploylab

#endif  // DEPLOYLAB_RANDOM_H_
