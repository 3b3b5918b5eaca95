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

#include "deploylab/mechanisms.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace deploylab {
namespace {

void CheckTable(const std::vector<double>& table, int n, double c) {
  if (static_cast<int>(table.size()) != n) {
    throw std::invalid_argument("benefit table needs one entry per count");
  }
  for (int k = 1; k < n; ++k) {
    if (table[k] < table[k - 1]) {
      throw std::invalid_argument("benefit must be nondecreasing");
    }
  }
  if (!(table[n - 1] > c)) {
    throw std::invalid_argument("universal adoption must beat defection");
  }
  if (!(table[0] < c)) {
    throw std::invalid_argument("unilateral adoption must be harmful");
  }
}

template <typename PayoffFn>
StrategicGame Tabulate(int n, int strategies, PayoffFn payoff) {
  std::vector<int> counts(n, strategies);
  int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= strategies;
  std::vector<double> payoffs;
  payoffs.reserve(total * n);
  PureProfile profile(n, 0);
  for (int64_t s = 0; s < total; ++s) {
    int64_t rest = s;
    for (int i = n - 1; i >= 0; --i) {
      profile[i] = static_cast<int>(rest % strategies);
      rest /= strategies;
    }
    for (int i = 0; i < n; ++i) payoffs.push_back(payoff(profile, i));
  }
  return StrategicGame(std::move(counts), std::move(payoffs));
}

using Alive = std::vector<std::vector<bool>>;

// Compares strategies a and b of `player` over opponent profiles drawn from
// the surviving strategies.
bool Dominates(const StrategicGame& game, const Alive& alive, int player,
               int a, int b, DominanceKind kind) {
  bool some_strict = false;
  for (int64_t s = 0; s < game.num_profiles(); ++s) {
    if (game.StrategyOf(s, player) != b) continue;
    bool live = true;
    for (int j = 0; j < game.num_players() && live; ++j) {
      if (j != player) live = alive[j][game.StrategyOf(s, j)];
    }
    if (!live) continue;
    double ub = game.Payoff(s, player);
    double ua = game.Payoff(game.Deviate(s, player, a), player);
    if (kind == DominanceKind::kStrict) {
      if (!(ua > ub)) return false;
    } else {
      if (ua < ub) return false;
      if (ua > ub) some_strict = true;
    }
  }
  return kind == DominanceKind::kStrict || some_strict;
}

// Lowest-index surviving strategy dominating b, or -1.
int FindDominator(const StrategicGame& game, const Alive& alive, int player,
                  int b, DominanceKind kind) {
  for (int a = 0; a < game.strategy_counts()[player]; ++a) {
    if (a != b && alive[player][a] && Dominates(game, alive, player, a, b, kind)) {
      return a;
    }
  }
  return -1;
}

std::vector<std::vector<int>> Survivors(const Alive& alive) {
  std::vector<std::vector<int>> out(alive.size());
  for (size_t i = 0; i < alive.size(); ++i) {
    for (size_t s = 0; s < alive[i].size(); ++s) {
      if (alive[i][s]) out[i].push_back(static_cast<int>(s));
    }
  }
  return out;
}

Alive AllAlive(const StrategicGame& game) {
  Alive alive;
  for (int c : game.strategy_counts()) alive.emplace_back(c, true);
  return alive;
}

DominanceRecord ByRounds(const StrategicGame& game, DominanceKind kind) {
  Alive alive = AllAlive(game);
  DominanceRecord record;
  while (true) {
    std::vector<Elimination> round;
    for (int i = 0; i < game.num_players(); ++i) {
      for (int b = 0; b < game.strategy_counts()[i]; ++b) {
        if (!alive[i][b]) continue;
        int a = FindDominator(game, alive, i, b, kind);
        if (a >= 0) round.push_back({i, b, a, record.rounds + 1});
      }
    }
    if (round.empty()) break;
    ++record.rounds;
    for (const Elimination& e : round) alive[e.player][e.strategy] = false;
    record.eliminations.insert(record.eliminations.end(), round.begin(),
                               round.end());
  }
  record.remaining = Survivors(alive);
  return record;
}

DominanceRecord OneAtATime(const StrategicGame& game, DominanceKind kind) {
  Alive alive = AllAlive(game);
  DominanceRecord record;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i < game.num_players() && !progress; ++i) {
      for (int b = 0; b < game.strategy_counts()[i] && !progress; ++b) {
        if (!alive[i][b]) continue;
        int a = FindDominator(game, alive, i, b, kind);
        if (a < 0) continue;
        alive[i][b] = false;
        ++record.rounds;
        record.eliminations.push_back({i, b, a, record.rounds});
        progress = true;
      }
    }
  }
  record.remaining = Survivors(alive);
  return record;
}

std::vector<std::vector<std::vector<int>>> AllOrderOutcomes(
    const StrategicGame& game, DominanceKind kind) {
  int total = std::accumulate(game.strategy_counts().begin(),
                              game.strategy_counts().end(), 0);
  if (total > kMaxAllOrdersStrategies) {
    throw std::invalid_argument("all-orders search is limited to " +
                                std::to_string(kMaxAllOrdersStrategies) +
                                " strategies");
  }
  std::vector<int> offset(game.num_players(), 0);
  for (int i = 1; i < game.num_players(); ++i) {
    offset[i] = offset[i - 1] + game.strategy_counts()[i - 1];
  }
  auto decode = [&](uint32_t mask) {
    Alive alive = AllAlive(game);
    for (int i = 0; i < game.num_players(); ++i) {
      for (int s = 0; s < game.strategy_counts()[i]; ++s) {
        alive[i][s] = (mask >> (offset[i] + s)) & 1u;
      }
    }
    return alive;
  };

  std::unordered_set<uint32_t> seen;
  std::set<uint32_t> terminal;
  std::vector<uint32_t> pending = {(1u << total) - 1u};
  seen.insert(pending.back());
  while (!pending.empty()) {
    uint32_t mask = pending.back();
    pending.pop_back();
    Alive alive = decode(mask);
    bool any = false;
    for (int i = 0; i < game.num_players(); ++i) {
      for (int b = 0; b < game.strategy_counts()[i]; ++b) {
        if (!alive[i][b] || FindDominator(game, alive, i, b, kind) < 0) continue;
        any = true;
        uint32_t next = mask & ~(1u << (offset[i] + b));
        if (seen.insert(next).second) pending.push_back(next);
      }
    }
    if (!any) terminal.insert(mask);
  }
  std::vector<std::vector<std::vector<int>>> out;
  for (uint32_t mask : terminal) out.push_back(Survivors(decode(mask)));
  return out;
}

}  // namespace

double StagHuntSpec::Benefit(int player, int adopters) const {
  if (adopters < 1 || adopters > n) {
    throw std::invalid_argument("adopter count out of range");
  }
  if (!player_benefit.empty()) return player_benefit[player][adopters - 1];
  return benefit[adopters - 1];
}

void StagHuntSpec::Validate() const {
  if (n < 2) throw std::invalid_argument("a stag hunt needs two players");
  if (player_benefit.empty()) {
    CheckTable(benefit, n, c);
    return;
  }
  if (static_cast<int>(player_benefit.size()) != n) {
    throw std::invalid_argument("one benefit table per player");
  }
  for (const std::vector<double>& table : player_benefit) CheckTable(table, n, c);
}

StrategicGame BuildStagHunt(const StagHuntSpec& spec) {
  spec.Validate();
  return Tabulate(spec.n, 2, [&](const PureProfile& s, int i) {
    if (s[i] != kAdopt) return spec.c;
    int k = static_cast<int>(std::count(s.begin(), s.end(), kAdopt));
    return spec.Benefit(i, k);
  });
}

void AdoptionNetwork::Validate() const {
  if (n < 1) throw std::invalid_argument("network needs a node");
  if (static_cast<int>(beta.size()) != n || static_cast<int>(gamma.size()) != n) {
    throw std::invalid_argument("beta and gamma need one entry per player");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(beta[i].size()) != n) {
      throw std::invalid_argument("beta needs one entry per component size");
    }
    for (int k = 1; k < n; ++k) {
      if (beta[i][k] < beta[i][k - 1]) {
        throw std::invalid_argument("beta must be nondecreasing");
      }
    }
    if (!(gamma[i] > 0.0)) throw std::invalid_argument("gamma must be > 0");
  }
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
  }
}

StrategicGame NetworkAdoptionGame(const AdoptionNetwork& net) {
  net.Validate();
  return Tabulate(net.n, 2, [&](const PureProfile& s, int i) {
    if (s[i] != kAdopt) return 0.0;
    std::vector<int> parent(net.n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
      return parent[v] == v ? v : parent[v] = find(parent[v]);
    };
    for (const auto& [u, v] : net.edges) {
      if (s[u] == kAdopt && s[v] == kAdopt) parent[find(u)] = find(v);
    }
    int size = 0;
    for (int j = 0; j < net.n; ++j) {
      if (s[j] == kAdopt && find(j) == find(i)) ++size;
    }
    return net.beta[i][size - 1] - net.gamma[i];
  });
}

void ValidateInsurance(const StagHuntSpec& spec, const InsuranceParams& params) {
  spec.Validate();
  if (!(params.premium > 0.0) || !(params.surplus > 0.0)) {
    throw std::invalid_argument("premium and surplus must be positive");
  }
  if (!(params.premium < params.surplus)) {
    throw std::invalid_argument("premium must be below the surplus");
  }
  for (int i = 0; i < spec.n; ++i) {
    if (!(spec.Benefit(i, spec.n) > spec.c + params.surplus - params.premium)) {
      throw std::invalid_argument(
          "universal adoption must beat the insured payoff c + surplus - premium");
    }
  }
}

StrategicGame ApplyInsurance(const StagHuntSpec& spec,
                             const InsuranceParams& params) {
  ValidateInsurance(spec, params);
  return Tabulate(spec.n, 3, [&](const PureProfile& s, int i) {
    if (s[i] == kDefect) return spec.c;
    int k = static_cast<int>(std::count_if(
        s.begin(), s.end(), [](int x) { return x != kDefect; }));
    double adoption = spec.Benefit(i, k);
    if (s[i] == kAdopt) return adoption;
    return std::max(adoption, spec.c + params.surplus) - params.premium;
  });
}

StrategicGame ApplyElection(const StagHuntSpec& spec,
                            const ElectionParams& params) {
  spec.Validate();
  double cost = 0.0;
  for (int i = 0; i < spec.n; ++i) {
    cost = std::max(cost, spec.c - spec.Benefit(i, 1));
  }
  if (!(params.penalty > cost)) {
    throw std::invalid_argument("penalty must exceed every deployment cost");
  }
  return Tabulate(spec.n, 4, [&](const PureProfile& s, int i) {
    bool all_voted = std::all_of(s.begin(), s.end(), [](int x) {
      return x == kInsureOrVote || x == kVoteAndAdopt;
    });
    auto adopts = [&](int x) {
      return x == kAdopt || x == kVoteAndAdopt ||
             (x == kInsureOrVote && all_voted);
    };
    if (!adopts(s[i])) return spec.c;
    int k = static_cast<int>(std::count_if(s.begin(), s.end(), adopts));
    return spec.Benefit(i, k);
  });
}

DominanceRecord IteratedDominance(const StrategicGame& game,
                                  DominanceKind kind, EliminationOrder order) {
  if (kind == DominanceKind::kStrict) {
    DominanceRecord record = ByRounds(game, kind);
    record.order_independent =
        OneAtATime(game, kind).remaining == record.remaining;
    return record;
  }
  DominanceRecord record = ByRounds(game, kind);
  if (order == EliminationOrder::kAllOrders) {
    record.terminal_outcomes = AllOrderOutcomes(game, kind);
    record.order_independent = record.terminal_outcomes.size() == 1;
  }
  return record;
}

DominanceRecord IteratedDominanceOneAtATime(const StrategicGame& game,
                                           DominanceKind kind) {
  return OneAtATime(game, kind);
}

std::string StrategyLabel(int strategy, int strategy_count) {
  static const char* kLabels[] = {"A", "D", "X", "Y"};
  if (strategy_count >= 2 && strategy_count <= 4 && strategy >= 0 &&
      strategy < strategy_count) {
    return kLabels[strategy];
  }
  return std::to_string(strategy);
}

}  // namespace deploylab
