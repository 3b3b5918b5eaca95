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

#ifndef DEPLOYLAB_SUPPORT_ENUMERATION_H_
#define DEPLOYLAB_SUPPORT_ENUMERATION_H_

#include <string>
#include <vector>

#include "deploylab/game.h"

namespace deploylab {

struct EquilibriumPair {
  MixedStrategy p;
  MixedStrategy q;
};

struct SupportEnumerationResult {
  std::vector<EquilibriumPair> equilibria;
  // Support pairs whose equalization system was singular.
  int skipped_degenerate = 0;
  std::vector<std::string> diagnostics;
};

// Enumerates equal-size support pairs up to max_support (0 means
// min(rows, cols)). Complete for nondegenerate games.
SupportEnumerationResult SupportEnumerationEquilibria(const BimatrixGame& game,
                                                      int max_support = 0);

// True if the two pairs agree coordinatewise within tol.
bool SamePair(const EquilibriumPair& a, const EquilibriumPair& b,
              double tol = kEquilibriumTol);

}  // namespace deploylab

#endif  // DEPLOYLAB_SUPPORT_ENUMERATION_H_
