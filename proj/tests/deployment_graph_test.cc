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

#include "deploylab/deployment_graph.h"

#include <set>
#include <string>
#include <vector>

#include "deploylab/experiments.h"
#include "deploylab/game.h"
#include "deploylab/mechanisms.h"
#include "gtest/gtest.h"

namespace deploylab {
namespace {

StrategicGame TwoHunters() {
  return BuildStagHunt(StagHuntSpec{2, {-1.0, 10.0}, 0.0, {}});
}

// Row player 0, column player 1.
StrategicGame MondererShapley() {
  return StrategicGame({2, 2}, {1, 0, 2, 0, 2, 0, 0, 1});
}

std::vector<std::vector<bool>> Reachability(const DeploymentGraph& g) {
  int64_t n = g.profile_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int64_t s = 0; s < n; ++s) {
    r[s][s] = true;
    for (const Arc& a : g.OutArcs(s)) r[s][a.target] = true;
  }
  for (int64_t k = 0; k < n; ++k) {
    for (int64_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (int64_t j = 0; j < n; ++j) {
        if (r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

TEST(BuildGraphTest, StagHuntArcs) {
  DeploymentGraph g = BuildGraph(TwoHunters(), GraphKind::kStrict);
  EXPECT_EQ(g.profile_count(), 4);
  EXPECT_EQ(g.arc_count(), 4);
  EXPECT_TRUE(g.OutArcs(0).empty());
  EXPECT_TRUE(g.OutArcs(3).empty());
  ASSERT_EQ(g.OutArcs(1).size(), 2u);
}

TEST(BuildGraphTest, OrdinalAddsNeutralArcs) {
  DeploymentGraph strict = BuildGraph(MondererShapley(), GraphKind::kStrict);
  DeploymentGraph ordinal = BuildGraph(MondererShapley(), GraphKind::kOrdinal);
  EXPECT_EQ(strict.arc_count(), 3);
  EXPECT_EQ(ordinal.arc_count(), 5);
  int neutral = 0;
  for (int64_t s = 0; s < 4; ++s) {
    for (const Arc& a : ordinal.OutArcs(s)) neutral += a.polarity == ArcPolarity::kNeutral;
  }
  EXPECT_EQ(neutral, 2);
}

TEST(BuildGraphTest, TieToleranceAndCap) {
  StrategicGame game({2, 2}, {0, 0, 1e-9, 0, 0, 0, 0, 0});
  EXPECT_EQ(BuildGraph(game, GraphKind::kStrict).arc_count(), 1);
  EXPECT_EQ(BuildGraph(game, GraphKind::kStrict, 1e-6).arc_count(), 0);
  EXPECT_THROW(BuildGraph(TwoHunters(), GraphKind::kStrict, 0.0, 3), std::length_error);
  EXPECT_THROW(BuildGraph(TwoHunters(), GraphKind::kStrict, -1.0), std::invalid_argument);
}

TEST(CondenseTest, MatchesTransitiveClosure) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    std::vector<int> counts = seed % 2 ? std::vector<int>{3, 3} : std::vector<int>{2, 2, 3};
    StrategicGame game = GenRandomStrategic(counts, seed, 3);
    for (GraphKind kind : {GraphKind::kStrict, GraphKind::kOrdinal}) {
      DeploymentGraph g = BuildGraph(game, kind);
      Condensation c = Condense(g);
      std::vector<std::vector<bool>> r = Reachability(g);
      int64_t n = g.profile_count();
      for (int64_t i = 0; i < n; ++i) {
        for (int64_t j = 0; j < n; ++j) {
          EXPECT_EQ(c.component_of[i] == c.component_of[j], r[i][j] && r[j][i]);
        }
      }
      for (const auto& [from, to] : c.dag_arcs) EXPECT_LT(from, to);
      std::set<int> sinks(c.sinks.begin(), c.sinks.end());
      for (int64_t i = 0; i < n; ++i) {
        bool escapes = false;
        for (int64_t j = 0; j < n; ++j) {
          if (r[i][j] && !r[j][i]) escapes = true;
        }
        EXPECT_EQ(sinks.count(c.component_of[i]) == 1, !escapes);
      }
    }
  }
}

TEST(PureNashTest, StagHunt) {
  std::vector<PureNashEntry> ne = PureNash(TwoHunters());
  ASSERT_EQ(ne.size(), 2u);
  EXPECT_EQ(ne[0].profile, 0);
  EXPECT_TRUE(ne[0].strict);
  EXPECT_EQ(ne[1].profile, 3);
  EXPECT_TRUE(ne[1].strict);
}

TEST(PureNashTest, WeakEquilibrium) {
  std::vector<PureNashEntry> ne = PureNash(MondererShapley());
  ASSERT_EQ(ne.size(), 1u);
  EXPECT_EQ(ne[0].profile, 1);
  EXPECT_FALSE(ne[0].strict);
}

TEST(MaximalStatesTest, StagHunt) {
  MaximalAnalysis weak = MaximalStates(TwoHunters(), MaximalityKind::kWeak);
  MaximalAnalysis strong = MaximalStates(TwoHunters(), MaximalityKind::kStrong);
  EXPECT_EQ(weak.maximal_states, (std::vector<int64_t>{0, 3}));
  EXPECT_EQ(strong.maximal_states, (std::vector<int64_t>{0, 3}));
  EXPECT_EQ(weak.pure_nash, (std::vector<int64_t>{0, 3}));
  EXPECT_TRUE(weak.flags.ordinally_acyclic);
  EXPECT_TRUE(weak.flags.weakly_acyclic);
  EXPECT_TRUE(weak.flags.weakly_ordinally_acyclic);
  std::optional<std::vector<double>> potential = BuildOrdinalPotential(TwoHunters());
  ASSERT_TRUE(potential.has_value());
  EXPECT_EQ(*potential, (std::vector<double>{3, 1, 0, 2}));
  EXPECT_TRUE(IsOrdinalPotential(TwoHunters(), *potential));
}

TEST(MaximalStatesTest, MondererShapley) {
  StrategicGame game = MondererShapley();
  MaximalAnalysis weak = MaximalStates(game, MaximalityKind::kWeak);
  MaximalAnalysis strong = MaximalStates(game, MaximalityKind::kStrong);
  EXPECT_EQ(weak.maximal_states, (std::vector<int64_t>{1}));
  EXPECT_EQ(strong.maximal_states, (std::vector<int64_t>{0, 1, 2, 3}));
  EXPECT_FALSE(weak.flags.ordinally_acyclic);
  EXPECT_TRUE(weak.flags.weakly_acyclic);
  EXPECT_FALSE(weak.flags.weakly_ordinally_acyclic);
  EXPECT_TRUE(StronglyMaximalEquilibriumClasses(game).empty());
  EXPECT_FALSE(BuildOrdinalPotential(game).has_value());
}

TEST(MaximalStatesTest, MatchingPenniesCycles) {
  StrategicGame game({2, 2}, {1, -1, -1, 1, -1, 1, 1, -1});
  MaximalAnalysis weak = MaximalStates(game, MaximalityKind::kWeak);
  EXPECT_EQ(weak.classes.size(), 1u);
  EXPECT_EQ(weak.maximal_states.size(), 4u);
  EXPECT_TRUE(weak.pure_nash.empty());
  EXPECT_FALSE(weak.flags.weakly_acyclic);
}

TEST(MaximalStatesTest, SinkEquilibriumEquivalence) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    StrategicGame game = GenRandomStrategic({3, 2, 2}, seed, 4);
    MaximalAnalysis weak = MaximalStates(game, MaximalityKind::kWeak);
    std::set<int64_t> nash(weak.pure_nash.begin(), weak.pure_nash.end());
    for (const std::vector<int64_t>& cls : weak.classes) {
      if (cls.size() == 1) EXPECT_EQ(nash.count(cls[0]), 1u);
    }
    for (int64_t s : weak.pure_nash) {
      bool singleton_sink = false;
      for (const std::vector<int64_t>& cls : weak.classes) {
        singleton_sink = singleton_sink || (cls.size() == 1 && cls[0] == s);
      }
      EXPECT_TRUE(singleton_sink);
    }
  }
}

TEST(MaximalStatesTest, StrongRefinesNothingWithoutTies) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    StrategicGame game = GenRandomStrategic({2, 3}, seed, 1000000);
    EXPECT_EQ(MaximalStates(game, MaximalityKind::kWeak).maximal_states,
              MaximalStates(game, MaximalityKind::kStrong).maximal_states);
  }
}

TEST(PotentialTest, ExistsExactlyWhenOrdinallyAcyclic) {
  int with_potential = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    StrategicGame game = GenRandomStrategic({2, 2, 2}, seed, 3);
    std::optional<std::vector<double>> p = BuildOrdinalPotential(game);
    EXPECT_EQ(p.has_value(), ClassifyAcyclicity(game).ordinally_acyclic);
    if (p) {
      ++with_potential;
      EXPECT_TRUE(IsOrdinalPotential(game, *p));
    }
  }
  EXPECT_GT(with_potential, 0);
}

TEST(PotentialTest, StagHuntsAreWeaklyAcyclic) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    StagHuntSpec spec = GenRandomStagHunt(2 + static_cast<int>(seed % 4), seed);
    EXPECT_TRUE(ClassifyAcyclicity(BuildStagHunt(spec)).weakly_acyclic);
  }
}

TEST(WalkTest, AbsorbedInMaximalStates) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    StrategicGame game = BuildStagHunt(GenRandomStagHunt(4, seed));
    MaximalAnalysis weak = MaximalStates(game, MaximalityKind::kWeak);
    std::set<int64_t> maximal(weak.maximal_states.begin(), weak.maximal_states.end());
    DeploymentGraph g = BuildGraph(game, GraphKind::kStrict);
    for (int64_t start = 0; start < game.num_profiles(); ++start) {
      WalkRecord w = BetterResponseWalk(g, start, seed, 1000);
      EXPECT_TRUE(w.terminated);
      EXPECT_EQ(maximal.count(w.final_profile), 1u);
    }
  }
}

TEST(WalkTest, CyclingWalkStaysInClass) {
  StrategicGame game({2, 2}, {1, -1, -1, 1, -1, 1, 1, -1});
  WalkRecord w = BetterResponseWalk(game, {0, 0}, GraphKind::kStrict, 7, 100);
  EXPECT_FALSE(w.terminated);
  EXPECT_EQ(w.steps, 100);
  EXPECT_EQ(w.visits.size(), 4u);
  WalkRecord again = BetterResponseWalk(game, {0, 0}, GraphKind::kStrict, 7, 100);
  EXPECT_EQ(w.visits, again.visits);
}

TEST(DotTest, MarksSinks) {
  StrategicGame game = TwoHunters();
  std::string dot = CondensationToDot(game, Condense(BuildGraph(game, GraphKind::kStrict)));
  EXPECT_NE(dot.find("digraph condensation"), std::string::npos);
  EXPECT_NE(dot.find("(0,0)\", peripheries=2"), std::string::npos);
  EXPECT_NE(dot.find("(1,1)\", peripheries=2"), std::string::npos);
  EXPECT_EQ(ProfileName(game, 2), "(1,0)");
}

}  // namespace
}  // namespace deploylab
