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

// Reduction of bimatrix equilibria to symmetric equilibria of the
// Gale-Kuhn-Tucker symmetrized game, solved with Hedge.

#ifndef DEPLOYLAB_SYMMETRIZATION_H_
#define DEPLOYLAB_SYMMETRIZATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deploylab/game.h"
#include "deploylab/hedge.h"
#include "deploylab/support_enumeration.h"

namespace deploylab {

// A' = (A + shift_a) * scale, B' = (B + shift_b) * scale.
struct NormalizationRecord {
  double shift_a = 0.0;
  double shift_b = 0.0;
  double scale = 1.0;
  bool identity = true;
  // Bounds of the normalized game.
  double min_a = 0.0;
  double max_a = 0.0;
  double min_b = 0.0;
  double max_b = 0.0;
};

// Output satisfies 0 < A' <= 1 and -1 <= B' < 0. Already normalized games
// are returned unchanged with an identity record.
std::pair<BimatrixGame, NormalizationRecord> NormalizeBimatrix(
    const BimatrixGame& game);

bool IsNormalized(const BimatrixGame& game);

// C = [[0, A, -1], [B^T, 0, 1], [1^T, -1^T, 0]] of size a + b + 1.
struct GktGame {
  Matrix c;
  int a = 0;
  int b = 0;
};

// Requires A > 0 and B < 0 elementwise.
GktGame GktSymmetrize(const BimatrixGame& game);

struct RecoveredPairs {
  EquilibriumPair first;
  EquilibriumPair second;
};

// first = (X_a / |X_a|, Y_b / |Y_b|), second = (Y_a / |Y_a|, X_b / |X_b|).
// Throws std::domain_error on a block with no mass.
RecoveredPairs RecoverEquilibria(const MixedStrategy& x_star,
                                 const MixedStrategy& y_star, int a, int b);

struct WellSupportedResult {
  MixedStrategy p;
  MixedStrategy q;
  double achieved_eps = 0.0;
  int rounds = 0;
};

// Purges mass from pure strategies more than eps/2 below the best response
// value, renormalizes, and repeats until stable. Payoffs must lie in [0, 1]
// and (p, q) must be an (eps^2 / 8)-approximate equilibrium; otherwise
// std::invalid_argument. Throws std::runtime_error if the output fails the
// well-supported predicate at eps.
WellSupportedResult ApproxToWellSupported(const BimatrixGame& game,
                                          const MixedStrategy& p,
                                          const MixedStrategy& q, double eps);

struct EpsilonBudget {
  double target_eps = 0.0;
  // Normalization scale c' and the rescale factor c of the GKT matrix.
  double c_prime = 1.0;
  double c = 1.0;
  double gkt_shift = 0.0;
  // c' eps: well-supported level on the GKT matrix C and on (A', B').
  double eps_normalized = 0.0;
  // c c' eps: well-supported level on the rescaled matrix C0.
  double eps_unit = 0.0;
  // (c c' eps)^2 / 8: approximate level Hedge must reach on C0.
  double eps_approx = 0.0;
  // min{1/3, min A', min(-B')}.
  double constraint_bound = 0.0;
};

// Throws std::invalid_argument when c' eps violates the constraint.
EpsilonBudget MakeEpsilonBudget(const BimatrixGame& game, double eps);

struct ChainVerdicts {
  bool approx_on_unit = false;
  bool well_supported_on_unit = false;
  bool well_supported_on_gkt = false;
  bool well_supported_on_normalized = false;
  bool approx_on_original = false;
};

struct PipelineResult {
  bool success = false;
  std::optional<EquilibriumPair> pair;
  // "trivial", "last-iterate", or "averaged-iterate" on success.
  std::string source;
  std::string failure;
  EpsilonBudget budget;
  NormalizationRecord normalization;
  ChainVerdicts chain;
  int64_t iterations = 0;
  std::string stop_reason;
  double last_regret = 0.0;
  double averaged_regret = 0.0;
  double best_regret = 0.0;
  double achieved_eps = 0.0;
  std::vector<MixedStrategy> trace_tail;
};

// normalize -> symmetrize -> rescale into [0, 1] -> Hedge from uniform ->
// well-supported conversion -> recovery. Never fabricates a pair: on failure
// `pair` is empty and the diagnostics say why.
PipelineResult SolveBimatrixViaHedge(const BimatrixGame& game, double eps,
                                     const LearningRateSchedule& schedule,
                                     int64_t max_iters);

}  // namespace deploylab

#endif  // DEPLOYLAB_SYMMETRIZATION_H_
