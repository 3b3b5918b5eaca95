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

#ifndef DEPLOYLAB_MECHANISMS_H_
#define DEPLOYLAB_MECHANISMS_H_

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "deploylab/game.h"

namespace deploylab {

// Strategy indices of the stag hunt and the induced games.
inline constexpr int kAdopt = 0;
inline constexpr int kDefect = 1;
// Insured adoption (insurance) or conditional vote (election).
inline constexpr int kInsureOrVote = 2;
// Vote and adopt unconditionally (election).
inline constexpr int kVoteAndAdopt = 3;

// Adopters receive benefit[k - 1] when k players adopt; defectors receive c.
struct StagHuntSpec {
  int n = 2;
  std::vector<double> benefit;
  double c = 0.0;
  // Optional per-player benefit tables overriding `benefit`.
  std::vector<std::vector<double>> player_benefit;

  double Benefit(int player, int adopters) const;
  // Throws std::invalid_argument on a violated invariant: n >= 2,
  // nondecreasing benefits, benefit(n) > c, benefit(1) < c.
  void Validate() const;
};

StrategicGame BuildStagHunt(const StagHuntSpec& spec);

// u_i = beta_i(size of i's adopter component) - gamma_i if i adopts, else 0.
struct AdoptionNetwork {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  // beta[i][k - 1] for component size k.
  std::vector<std::vector<double>> beta;
  std::vector<double> gamma;

  void Validate() const;
};

StrategicGame NetworkAdoptionGame(const AdoptionNetwork& net);

struct InsuranceParams {
  double premium = 0.0;
  double surplus = 0.0;
};

// Throws unless 0 < premium < surplus and, for every player,
// benefit(n) > c + surplus - premium.
void ValidateInsurance(const StagHuntSpec& spec, const InsuranceParams& params);

// Strategies A, D, X. X pays max(benefit(k), c + surplus) - premium.
StrategicGame ApplyInsurance(const StagHuntSpec& spec,
                             const InsuranceParams& params);

struct ElectionParams {
  // Documents the commitment penalty that lets the model drop
  // commitment-breaking strategies. Must exceed every deployment cost,
  // taken as c - benefit(1).
  double penalty = std::numeric_limits<double>::infinity();
};

// Strategies A, D, X (vote, adopt iff everybody voted), Y (vote, adopt).
StrategicGame ApplyElection(const StagHuntSpec& spec,
                            const ElectionParams& params = {});

enum class DominanceKind { kStrict, kWeak };
enum class EliminationOrder { kDeterministic, kAllOrders };

struct Elimination {
  int player;
  int strategy;
  int dominated_by;
  int round;
};

struct DominanceRecord {
  std::vector<Elimination> eliminations;
  // Surviving strategies per player.
  std::vector<std::vector<int>> remaining;
  int rounds = 0;
  // Strict: the one-at-a-time order reached the same survivors as the
  // round-based one. Weak all-orders: every order reached the same survivors.
  // Weak deterministic: not examined, left true.
  bool order_independent = true;
  // Weak all-orders: every distinct terminal survivor set.
  std::vector<std::vector<std::vector<int>>> terminal_outcomes;
};

inline constexpr int kMaxAllOrdersStrategies = 12;

// Pure-strategy dominance in rounds: each round removes every dominated
// strategy of every player at once. Weak all-orders additionally explores
// every one-at-a-time sequence and requires at most kMaxAllOrdersStrategies
// strategies in total.
DominanceRecord IteratedDominance(const StrategicGame& game,
                                  DominanceKind kind,
                                  EliminationOrder order =
                                      EliminationOrder::kDeterministic);

// One strategy at a time, lowest player first, then lowest strategy index,
// restarting after every removal.
DominanceRecord IteratedDominanceOneAtATime(const StrategicGame& game,
                                           DominanceKind kind);

std::string StrategyLabel(int strategy, int strategy_count);

}  // namespace deploylab

#endif  // DEPLOYLAB_MECHANISMS_H_
