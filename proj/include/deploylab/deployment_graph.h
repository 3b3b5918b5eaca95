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

#ifndef DEPLOYLAB_DEPLOYMENT_GRAPH_H_
#define DEPLOYLAB_DEPLOYMENT_GRAPH_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "deploylab/game.h"

namespace deploylab {

enum class GraphKind { kStrict, kOrdinal };
enum class ArcPolarity : uint8_t { kPositive, kNeutral };

struct Arc {
  int64_t target;
  int player;
  ArcPolarity polarity;
};

// Unilateral-deviation digraph over pure profiles in compressed row form.
class DeploymentGraph {
 public:
  DeploymentGraph(GraphKind kind, std::vector<int64_t> offsets,
                  std::vector<Arc> arcs);

  GraphKind kind() const { return kind_; }
  int64_t profile_count() const {
    return static_cast<int64_t>(offsets_.size()) - 1;
  }
  int64_t arc_count() const { return static_cast<int64_t>(arcs_.size()); }
  std::span<const Arc> OutArcs(int64_t profile) const {
    return {arcs_.data() + offsets_[profile],
            static_cast<size_t>(offsets_[profile + 1] - offsets_[profile])};
  }

 private:
  GraphKind kind_;
  std::vector<int64_t> offsets_;
  std::vector<Arc> arcs_;
};

inline constexpr int64_t kDefaultArcCap = 2'000'000;

// Strict: arcs for deviations gaining more than tie_tol. Ordinal: arcs for
// deviations gaining at least -tie_tol; gains within +-tie_tol are neutral.
// Throws std::length_error past arc_cap.
DeploymentGraph BuildGraph(const StrategicGame& game, GraphKind kind,
                           double tie_tol = 0.0,
                           int64_t arc_cap = kDefaultArcCap);

// Components are numbered in topological order of the condensation: every
// dag arc goes from a lower to a higher id.
struct Condensation {
  std::vector<int> component_of;
  std::vector<std::vector<int64_t>> components;
  std::vector<std::pair<int, int>> dag_arcs;
  std::vector<int> sinks;
};

// Iterative Tarjan.
Condensation Condense(const DeploymentGraph& graph);

struct PureNashEntry {
  int64_t profile;
  bool strict;
};

// Profiles where no deviation gains more than tol. Strict when every
// deviation loses more than tol.
std::vector<PureNashEntry> PureNash(const StrategicGame& game,
                                    double tol = 0.0);

struct AcyclicityFlags {
  bool ordinally_acyclic = false;
  bool weakly_acyclic = false;
  bool weakly_ordinally_acyclic = false;
};

enum class MaximalityKind { kWeak, kStrong };

struct MaximalAnalysis {
  std::vector<int64_t> maximal_states;
  // Sink components.
  std::vector<std::vector<int64_t>> classes;
  std::vector<int64_t> pure_nash;
  AcyclicityFlags flags;
};

// Weak: sink components of the strict graph. Strong: sink components of the
// ordinal graph.
MaximalAnalysis MaximalStates(const StrategicGame& game, MaximalityKind kind,
                              double tie_tol = 0.0);

// Sink components of the ordinal graph made up entirely of pure equilibria.
std::vector<std::vector<int64_t>> StronglyMaximalEquilibriumClasses(
    const StrategicGame& game, double tie_tol = 0.0);

AcyclicityFlags ClassifyAcyclicity(const StrategicGame& game,
                                   double tie_tol = 0.0);

// Present iff the game is ordinally acyclic. Values are the topological
// positions of the ordinal-graph components.
std::optional<std::vector<double>> BuildOrdinalPotential(
    const StrategicGame& game, double tie_tol = 0.0);

// True if sign(u_i(s') - u_i(s)) > 0 <=> potential(s') - potential(s) > 0 on
// every unilateral deviation, with gains within tie_tol counted as zero.
bool IsOrdinalPotential(const StrategicGame& game,
                        const std::vector<double>& potential,
                        double tie_tol = 0.0);

struct WalkRecord {
  int64_t start = 0;
  int64_t final_profile = 0;
  int64_t steps = 0;
  // The walk stopped at a profile without out-arcs.
  bool terminated = false;
  std::map<int64_t, int64_t> visits;
};

// Follows a uniformly random out-arc at each step.
WalkRecord BetterResponseWalk(const DeploymentGraph& graph, int64_t start,
                              uint64_t seed, int64_t max_steps);
WalkRecord BetterResponseWalk(const StrategicGame& game,
                              const PureProfile& start, GraphKind kind,
                              uint64_t seed, int64_t max_steps);

// Graphviz text for the condensation; sinks are drawn doubled.
std::string CondensationToDot(const StrategicGame& game,
                              const Condensation& condensation);

std::string ProfileName(const StrategicGame& game, int64_t profile);

}  // namespace deploylab

#endif  // DEPLOYLAB_DEPLOYMENT_GRAPH_H_
