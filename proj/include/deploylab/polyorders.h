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

// Sampled falsifiers for segment-wise dominance relations and stability
// concepts. A "confirmed" verdict only means no sample violated the
// inequality.

#ifndef DEPLOYLAB_POLYORDERS_H_
#define DEPLOYLAB_POLYORDERS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deploylab/game.h"

namespace deploylab {

inline constexpr double kStrictTol = 1e-10;

class SegmentGrid {
 public:
  // Throws unless strictly increasing, within [0, 1], and containing both
  // endpoints.
  explicit SegmentGrid(std::vector<double> epsilons);
  // `count` evenly spaced points from 0 to 1.
  static SegmentGrid Uniform(int count = 101);

  const std::vector<double>& epsilons() const { return epsilons_; }
  int count() const { return static_cast<int>(epsilons_.size()); }

 private:
  std::vector<double> epsilons_;
};

enum class SamplingScheme { kUniformDirichlet, kGrid, kVerticesPlusRandom };

struct SampleBudget {
  int simplex_samples = 2000;
  uint64_t seed = 0;
  SamplingScheme scheme = SamplingScheme::kVerticesPlusRandom;
};

// Deterministic sample set. kGrid uses the finest simplex lattice with at
// most simplex_samples points. Sample i of the random schemes depends only
// on (seed, i).
std::vector<MixedStrategy> SampleSimplex(int n, const SampleBudget& budget);

enum class VerdictStatus { kConfirmedOnSamples, kFalsified, kExact };

std::string VerdictStatusName(VerdictStatus status);

struct StabilityVerdict {
  VerdictStatus status = VerdictStatus::kConfirmedOnSamples;
  std::optional<MixedStrategy> witness;
  // Second point of a violating pair for the monotonicity check.
  std::optional<MixedStrategy> partner;
  int samples_used = 0;
  // Smallest tested gap; the violated quantity when falsified.
  double worst_gap = 0.0;
  // The segment parameter at which a relation check failed, if any.
  std::optional<double> epsilon;

  bool falsified() const { return status == VerdictStatus::kFalsified; }
};

enum class PolyorderKind { kStrict, kDrifting };

struct RelationResult {
  bool holds = true;
  std::optional<double> first_failing_epsilon;
};

// With Y_e = e y + (1 - e) x: strict needs x.F(Y_e) > y.F(Y_e) + tol for all
// grid e; drifting needs x.F(Y_e) >= y.F(Y_e) - tol.
RelationResult EvaluateRelation(const PayoffOperator& op,
                                const MixedStrategy& x, const MixedStrategy& y,
                                const SegmentGrid& grid, PolyorderKind kind,
                                double tol = kStrictTol);

enum class StabilityConcept { kESS, kNSS, kGESS, kGNSS, kEDS };

std::string StabilityConceptName(StabilityConcept kind);

// Gap (x* - X).F(X) at X.
double SuperiorityGap(const PayoffOperator& op, const MixedStrategy& x_star,
                      const MixedStrategy& x);

// Tests (x* - X).F(X) over sampled X, locally (ESS, NSS; radius required)
// or globally. Strict concepts need gap > tol off x*, weak ones gap >= -tol.
// EDS needs x* to be a symmetric equilibrium and allows a zero gap only at
// sampled symmetric equilibria.
StabilityVerdict CheckStability(const PayoffOperator& op,
                                const MixedStrategy& x_star,
                                StabilityConcept kind,
                                const SampleBudget& budget,
                                std::optional<double> neighborhood_radius = {},
                                double tol = kStrictTol);

// Closed-form verdict for a 2 x 2 matrix. Returns kExact or kFalsified.
StabilityVerdict ExactTwoStrategyStability(
    const Matrix& c, const MixedStrategy& x_star, StabilityConcept kind,
    std::optional<double> neighborhood_radius = {}, double tol = kStrictTol);

enum class VariationalKind { kCritical, kMinty, kMonotone };

// critical: (x* - X).F(x*) >= -tol; minty: (x* - X).F(X) >= -tol;
// monotone: (X - Y).(F(Y) - F(X)) >= -tol over sample pairs (x* ignored).
StabilityVerdict CheckVariational(const PayoffOperator& op,
                                  const MixedStrategy& x_star,
                                  VariationalKind kind,
                                  const SampleBudget& budget,
                                  double tol = kStrictTol);

// For each sampled X, with X_e = e X + (1 - e) x* and
// g(e) = (x* - X).F(X_e), requires (g >= -tol on the grid) or (g > tol
// somewhere). A violation means X drifting-dominates x*.
StabilityVerdict DriftingMaximalityFalsifier(const PayoffOperator& op,
                                             const MixedStrategy& x_star,
                                             const SampleBudget& budget,
                                             const SegmentGrid& grid,
                                             double tol = kStrictTol);

}  // namespace deploylab

#endif  // DEPLOYLAB_POLYORDERS_H_
