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

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "deploylab/random.h"

namespace deploylab {

DeploymentGraph::DeploymentGraph(GraphKind kind, std::vector<int64_t> offsets,
                                 std::vector<Arc> arcs)
    : kind_(kind), offsets_(std::move(offsets)), arcs_(std::move(arcs)) {
  if (offsets_.empty() || offsets_.back() != arc_count()) {
    throw std::invalid_argument("malformed adjacency offsets");
  }
}

DeploymentGraph BuildGraph(const StrategicGame& game, GraphKind kind,
                           double tie_tol, int64_t arc_cap) {
  if (tie_tol < 0.0) throw std::invalid_argument("tie_tol must be >= 0");
  int64_t profiles = game.num_profiles();
  std::vector<int64_t> offsets(profiles + 1, 0);
  std::vector<Arc> arcs;
  for (int64_t s = 0; s < profiles; ++s) {
    for (int i = 0; i < game.num_players(); ++i) {
      int own = game.StrategyOf(s, i);
      double base = game.Payoff(s, i);
      for (int t = 0; t < game.strategy_counts()[i]; ++t) {
        if (t == own) continue;
        int64_t target = game.Deviate(s, i, t);
        double gain = game.Payoff(target, i) - base;
        if (gain > tie_tol) {
          arcs.push_back({target, i, ArcPolarity::kPositive});
        } else if (kind == GraphKind::kOrdinal && gain >= -tie_tol) {
          arcs.push_back({target, i, ArcPolarity::kNeutral});
        } else {
          continue;
        }
        if (static_cast<int64_t>(arcs.size()) > arc_cap) {
          throw std::length_error("deployment graph exceeds the arc cap");
        }
      }
    }
    offsets[s + 1] = static_cast<int64_t>(arcs.size());
  }
  return DeploymentGraph(kind, std::move(offsets), std::move(arcs));
}

Condensation Condense(const DeploymentGraph& graph) {
  const int64_t n = graph.profile_count();
  std::vector<int64_t> index(n, -1);
  std::vector<int64_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int64_t> stack;
  std::vector<int> emitted(n, -1);
  int emitted_count = 0;
  int64_t counter = 0;

  struct Frame {
    int64_t v;
    size_t next;
  };
  std::vector<Frame> frames;
  for (int64_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    auto open = [&](int64_t v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      frames.push_back({v, 0});
    };
    open(root);
    while (!frames.empty()) {
      Frame& frame = frames.back();
      int64_t v = frame.v;
      std::span<const Arc> out = graph.OutArcs(v);
      if (frame.next < out.size()) {
        int64_t w = out[frame.next++].target;
        if (index[w] == -1) {
          open(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      frames.pop_back();
      if (low[v] == index[v]) {
        int64_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          emitted[w] = emitted_count;
        } while (w != v);
        ++emitted_count;
      }
      if (!frames.empty()) {
        int64_t parent = frames.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }

  // Tarjan emits components in reverse topological order.
  Condensation out;
  out.component_of.resize(n);
  out.components.assign(emitted_count, {});
  for (int64_t v = 0; v < n; ++v) {
    int id = emitted_count - 1 - emitted[v];
    out.component_of[v] = id;
    out.components[id].push_back(v);
  }
  std::vector<bool> has_out(emitted_count, false);
  for (int64_t v = 0; v < n; ++v) {
    int from = out.component_of[v];
    for (const Arc& arc : graph.OutArcs(v)) {
      int to = out.component_of[arc.target];
      if (to != from) {
        out.dag_arcs.push_back({from, to});
        has_out[from] = true;
      }
    }
  }
  std::sort(out.dag_arcs.begin(), out.dag_arcs.end());
  out.dag_arcs.erase(std::unique(out.dag_arcs.begin(), out.dag_arcs.end()),
                     out.dag_arcs.end());
  for (int c = 0; c < emitted_count; ++c) {
    if (!has_out[c]) out.sinks.push_back(c);
  }
  return out;
}

std::vector<PureNashEntry> PureNash(const StrategicGame& game, double tol) {
  std::vector<PureNashEntry> out;
  for (int64_t s = 0; s < game.num_profiles(); ++s) {
    bool nash = true;
    bool strict = true;
    for (int i = 0; i < game.num_players() && nash; ++i) {
      int own = game.StrategyOf(s, i);
      double base = game.Payoff(s, i);
      for (int t = 0; t < game.strategy_counts()[i]; ++t) {
        if (t == own) continue;
        double gain = game.Payoff(game.Deviate(s, i, t), i) - base;
        if (gain > tol) {
          nash = false;
          break;
        }
        if (gain >= -tol) strict = false;
      }
    }
    if (nash) out.push_back({s, strict});
  }
  return out;
}

namespace {

std::vector<bool> NashMask(const StrategicGame& game, double tol) {
  std::vector<bool> mask(game.num_profiles(), false);
  for (const PureNashEntry& e : PureNash(game, tol)) mask[e.profile] = true;
  return mask;
}

bool AllNash(const std::vector<int64_t>& states,
             const std::vector<bool>& nash) {
  return std::all_of(states.begin(), states.end(),
                     [&](int64_t s) { return nash[s]; });
}

AcyclicityFlags Classify(const Condensation& strict_cond,
                         const DeploymentGraph& ordinal,
                         const Condensation& ordinal_cond,
                         const std::vector<bool>& nash) {
  AcyclicityFlags flags;
  flags.ordinally_acyclic = true;
  for (int64_t s = 0; s < ordinal.profile_count() && flags.ordinally_acyclic;
       ++s) {
    for (const Arc& arc : ordinal.OutArcs(s)) {
      if (arc.polarity == ArcPolarity::kPositive &&
          ordinal_cond.component_of[arc.target] == ordinal_cond.component_of[s]) {
        flags.ordinally_acyclic = false;
        break;
      }
    }
  }
  flags.weakly_acyclic = true;
  for (int c : strict_cond.sinks) {
    flags.weakly_acyclic =
        flags.weakly_acyclic && AllNash(strict_cond.components[c], nash);
  }
  flags.weakly_ordinally_acyclic = true;
  for (int c : ordinal_cond.sinks) {
    flags.weakly_ordinally_acyclic = flags.weakly_ordinally_acyclic &&
                                     AllNash(ordinal_cond.components[c], nash);
  }
  return flags;
}

}  // namespace

AcyclicityFlags ClassifyAcyclicity(const StrategicGame& game, double tie_tol) {
  DeploymentGraph strict = BuildGraph(game, GraphKind::kStrict, tie_tol);
  DeploymentGraph ordinal = BuildGraph(game, GraphKind::kOrdinal, tie_tol);
  return Classify(Condense(strict), ordinal, Condense(ordinal),
                  NashMask(game, tie_tol));
}

MaximalAnalysis MaximalStates(const StrategicGame& game, MaximalityKind kind,
                              double tie_tol) {
  DeploymentGraph strict = BuildGraph(game, GraphKind::kStrict, tie_tol);
  DeploymentGraph ordinal = BuildGraph(game, GraphKind::kOrdinal, tie_tol);
  Condensation strict_cond = Condense(strict);
  Condensation ordinal_cond = Condense(ordinal);
  std::vector<bool> nash = NashMask(game, tie_tol);

  MaximalAnalysis out;
  const Condensation& cond =
      kind == MaximalityKind::kWeak ? strict_cond : ordinal_cond;
  for (int c : cond.sinks) {
    out.classes.push_back(cond.components[c]);
    out.maximal_states.insert(out.maximal_states.end(),
                              cond.components[c].begin(),
                              cond.components[c].end());
  }
  std::sort(out.maximal_states.begin(), out.maximal_states.end());
  for (int64_t s = 0; s < game.num_profiles(); ++s) {
    if (nash[s]) out.pure_nash.push_back(s);
  }
  out.flags = Classify(strict_cond, ordinal, ordinal_cond, nash);
  return out;
}

std::vector<std::vector<int64_t>> StronglyMaximalEquilibriumClasses(
    const StrategicGame& game, double tie_tol) {
  Condensation cond = Condense(BuildGraph(game, GraphKind::kOrdinal, tie_tol));
  std::vector<bool> nash = NashMask(game, tie_tol);
  std::vector<std::vector<int64_t>> out;
  for (int c : cond.sinks) {
    if (AllNash(cond.components[c], nash)) out.push_back(cond.components[c]);
  }
  return out;
}

std::optional<std::vector<double>> BuildOrdinalPotential(
    const StrategicGame& game, double tie_tol) {
  if (!ClassifyAcyclicity(game, tie_tol).ordinally_acyclic) return std::nullopt;
  Condensation cond = Condense(BuildGraph(game, GraphKind::kOrdinal, tie_tol));
  std::vector<double> potential(game.num_profiles());
  for (int64_t s = 0; s < game.num_profiles(); ++s) {
    potential[s] = cond.component_of[s];
  }
  return potential;
}

bool IsOrdinalPotential(const StrategicGame& game,
                        const std::vector<double>& potential, double tie_tol) {
  if (static_cast<int64_t>(potential.size()) != game.num_profiles()) {
    return false;
  }
  for (int64_t s = 0; s < game.num_profiles(); ++s) {
    for (int i = 0; i < game.num_players(); ++i) {
      for (int t = 0; t < game.strategy_counts()[i]; ++t) {
        int64_t target = game.Deviate(s, i, t);
        if (target == s) continue;
        bool gains = game.Payoff(target, i) - game.Payoff(s, i) > tie_tol;
        bool rises = potential[target] - potential[s] > 0.0;
        if (gains != rises) return false;
      }
    }
  }
  return true;
}

WalkRecord BetterResponseWalk(const DeploymentGraph& graph, int64_t start,
                              uint64_t seed, int64_t max_steps) {
  if (start < 0 || start >= graph.profile_count()) {
    throw std::invalid_argument("walk start out of range");
  }
  Rng rng = StreamRng(seed, 0);
  WalkRecord record;
  record.start = start;
  int64_t current = start;
  record.visits[current] = 1;
  while (record.steps < max_steps) {
    std::span<const Arc> out = graph.OutArcs(current);
    if (out.empty()) {
      record.terminated = true;
      break;
    }
    size_t pick = static_cast<size_t>(Uniform01(rng) * out.size());
    current = out[std::min(pick, out.size() - 1)].target;
    ++record.steps;
    ++record.visits[current];
  }
  if (!record.terminated && graph.OutArcs(current).empty()) {
    record.terminated = true;
  }
  record.final_profile = current;
  return record;
}

WalkRecord BetterResponseWalk(const StrategicGame& game,
                              const PureProfile& start, GraphKind kind,
                              uint64_t seed, int64_t max_steps) {
  return BetterResponseWalk(BuildGraph(game, kind), game.Encode(start), seed,
                            max_steps);
}

std::string ProfileName(const StrategicGame& game, int64_t profile) {
  std::string out = "(";
  PureProfile p = game.Decode(profile);
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out + ")";
}

std::string CondensationToDot(const StrategicGame& game,
                              const Condensation& condensation) {
  std::vector<bool> sink(condensation.components.size(), false);
  for (int c : condensation.sinks) sink[c] = true;
  std::ostringstream out;
  out << "digraph condensation {\n";
  for (size_t c = 0; c < condensation.components.size(); ++c) {
    out << "  c" << c << " [label=\"";
    for (size_t k = 0; k < condensation.components[c].size(); ++k) {
      if (k) out << "\\n";
      out << ProfileName(game, condensation.components[c][k]);
    }
    out << "\"" << (sink[c] ? ", peripheries=2" : "") << "];\n";
  }
  for (const auto& [from, to] : condensation.dag_arcs) {
    out << "  c" << from << " -> c" << to << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace deploylab
