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

// deploylab <subcommand> [options]
//
//   solve          equilibria of a bimatrix or symmetric game
//   symmetrize     GKT reduction and the Hedge pipeline
//   analyze-graph  deployment-graph maximality analysis
//   mechanism      insurance or election game induced by a stag hunt
//   experiment     batch experiments and reports
//
// Exit codes: 0 success, 1 experiment failures, 2 configuration error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "deploylab/deployment_graph.h"
#include "deploylab/experiments.h"
#include "deploylab/hedge.h"
#include "deploylab/io.h"
#include "deploylab/mechanisms.h"
#include "deploylab/support_enumeration.h"
#include "deploylab/symmetrization.h"

namespace deploylab {
namespace {

constexpr int kExitFailures = 1;
constexpr int kExitConfig = 2;

struct GlobalOptions {
  uint64_t seed = 0;
  std::string out = ".";
  std::string format = "json";
};

struct ScheduleOptions {
  std::string form = "harmonic";
  double c = 1.0;
  double exponent = 1.0;

  LearningRateSchedule Make() const {
    return LearningRateSchedule::Make(ParseScheduleForm(form), c, exponent);
  }
};

void AddScheduleOptions(CLI::App* cmd, ScheduleOptions* s) {
  cmd->add_option("--schedule", s->form, "constant, harmonic, or power")
      ->capture_default_str();
  cmd->add_option("--schedule-c", s->c, "schedule constant")->capture_default_str();
  cmd->add_option("--schedule-exponent", s->exponent, "power-form exponent")
      ->capture_default_str();
}

std::string OutPath(const GlobalOptions& g, const std::string& name) {
  return (std::filesystem::path(g.out) / name).string();
}

void Emit(const GlobalOptions& g, const std::string& name, const Json& j) {
  std::string path = OutPath(g, name);
  WriteTextFile(path, j.dump(2) + "\n");
  std::cout << path << "\n";
}

std::vector<std::string> SplitCsv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Json ProfileJson(const StrategicGame& game, int64_t profile) {
  Json labels = Json::array();
  PureProfile p = game.Decode(profile);
  for (size_t i = 0; i < p.size(); ++i) {
    labels.push_back(StrategyLabel(p[i], game.strategy_counts()[i]));
  }
  return Json{{"index", profile}, {"profile", p}, {"labels", labels}};
}

Json ProfileSetJson(const StrategicGame& game, const std::vector<int64_t>& set) {
  Json out = Json::array();
  for (int64_t s : set) out.push_back(ProfileJson(game, s));
  return out;
}

Json FlagsJson(const AcyclicityFlags& f) {
  return Json{{"ordinally_acyclic", f.ordinally_acyclic},
              {"weakly_acyclic", f.weakly_acyclic},
              {"weakly_ordinally_acyclic", f.weakly_ordinally_acyclic}};
}

Json GraphAnalysisJson(const StrategicGame& game, double tie_tol) {
  MaximalAnalysis weak = MaximalStates(game, MaximalityKind::kWeak, tie_tol);
  MaximalAnalysis strong = MaximalStates(game, MaximalityKind::kStrong, tie_tol);
  Json nash = Json::array();
  for (const PureNashEntry& e : PureNash(game, tie_tol)) {
    Json p = ProfileJson(game, e.profile);
    p["strict"] = e.strict;
    nash.push_back(std::move(p));
  }
  Json classes = Json::array();
  for (const auto& c : strong.classes) classes.push_back(ProfileSetJson(game, c));
  Json equilibrium_classes = Json::array();
  for (const auto& c : StronglyMaximalEquilibriumClasses(game, tie_tol)) {
    equilibrium_classes.push_back(ProfileSetJson(game, c));
  }
  Json out{{"players", game.num_players()},
           {"strategy_counts", game.strategy_counts()},
           {"pure_nash", std::move(nash)},
           {"weak_maximal", ProfileSetJson(game, weak.maximal_states)},
           {"strong_maximal", ProfileSetJson(game, strong.maximal_states)},
           {"classes", std::move(classes)},
           {"strongly_maximal_equilibrium_classes", std::move(equilibrium_classes)},
           {"flags", FlagsJson(strong.flags)}};
  if (auto potential = BuildOrdinalPotential(game, tie_tol)) {
    out["potential"] = *potential;
  }
  return out;
}

Json DominanceJson(const StrategicGame& game, const DominanceRecord& r) {
  Json elims = Json::array();
  for (const Elimination& e : r.eliminations) {
    int count = game.strategy_counts()[e.player];
    elims.push_back(Json{{"player", e.player},
                         {"strategy", StrategyLabel(e.strategy, count)},
                         {"dominated_by", StrategyLabel(e.dominated_by, count)},
                         {"round", e.round}});
  }
  auto labels = [&](const std::vector<std::vector<int>>& sets) {
    Json out = Json::array();
    for (size_t i = 0; i < sets.size(); ++i) {
      Json row = Json::array();
      for (int s : sets[i]) row.push_back(StrategyLabel(s, game.strategy_counts()[i]));
      out.push_back(std::move(row));
    }
    return out;
  };
  Json outcomes = Json::array();
  for (const auto& o : r.terminal_outcomes) outcomes.push_back(labels(o));
  return Json{{"eliminations", std::move(elims)},
              {"remaining", labels(r.remaining)},
              {"rounds", r.rounds},
              {"order_independent", r.order_independent},
              {"terminal_outcomes", std::move(outcomes)}};
}

Json BudgetJson(const EpsilonBudget& b) {
  return Json{{"target_eps", b.target_eps},         {"c_prime", b.c_prime},
              {"c", b.c},                           {"gkt_shift", b.gkt_shift},
              {"eps_normalized", b.eps_normalized}, {"eps_unit", b.eps_unit},
              {"eps_approx", b.eps_approx},         {"constraint_bound", b.constraint_bound}};
}

Json PipelineJson(const PipelineResult& r) {
  Json out{{"success", r.success},
           {"source", r.source},
           {"failure", r.failure},
           {"eps_chain", BudgetJson(r.budget)},
           {"normalization",
            {{"shift_a", r.normalization.shift_a},
             {"shift_b", r.normalization.shift_b},
             {"scale", r.normalization.scale},
             {"identity", r.normalization.identity}}},
           {"iterations", r.iterations},
           {"stop_reason", r.stop_reason},
           {"last_regret", r.last_regret},
           {"averaged_regret", r.averaged_regret},
           {"best_regret", r.best_regret},
           {"achieved_eps", r.achieved_eps},
           {"verdicts",
            {{"approx_on_unit", r.chain.approx_on_unit},
             {"well_supported_on_unit", r.chain.well_supported_on_unit},
             {"well_supported_on_gkt", r.chain.well_supported_on_gkt},
             {"well_supported_on_normalized", r.chain.well_supported_on_normalized},
             {"approx_on_original", r.chain.approx_on_original}}}};
  out["recovered_pair"] = r.pair ? PairToJson(*r.pair) : Json(nullptr);
  return out;
}

struct SolveOptions {
  std::string game;
  std::string method = "support";
  double eps = 1e-3;
  int64_t max_iters = 1'000'000;
  ScheduleOptions schedule;
};

int RunSolve(const GlobalOptions& g, const SolveOptions& o) {
  GameFile file = ReadGameFile(o.game);
  if (!file.bimatrix) throw std::invalid_argument("solve needs a bimatrix or symmetric game");
  const BimatrixGame& game = *file.bimatrix;
  Json out{{"method", o.method}};
  if (o.method == "support") {
    SupportEnumerationResult r = SupportEnumerationEquilibria(game);
    Json eqs = Json::array();
    for (const EquilibriumPair& e : r.equilibria) eqs.push_back(PairToJson(e));
    out["equilibria"] = std::move(eqs);
    out["skipped_degenerate"] = r.skipped_degenerate;
    out["diagnostics"] = r.diagnostics;
  } else if (o.method == "hedge") {
    if (file.kind == GameFileKind::kSymmetric) {
      PayoffOperator op = PayoffOperator::Linear(game.A());
      HedgeOptions options;
      options.max_iters = o.max_iters;
      options.stop_regret = o.eps;
      options.record_every = std::max<int64_t>(1, o.max_iters / 1000);
      HedgeTrace trace = RunHedge(op, MixedStrategy::Uniform(game.rows()),
                                  o.schedule.Make(), options);
      MixedStrategy avg = AverageIterates(trace, AverageWindow::All());
      double last = SymmetricRegret(op, trace.last());
      double averaged = SymmetricRegret(op, avg);
      out["iterations"] = trace.iterations;
      out["stop_reason"] = StopReasonName(trace.stop_reason);
      out["last_iterate"] = VectorToJson(trace.last().weights());
      out["last_regret"] = last;
      out["average_iterate"] = VectorToJson(avg.weights());
      out["average_regret"] = averaged;
      out["success"] = std::min(last, averaged) <= o.eps;
    } else {
      out["pipeline"] = PipelineJson(
          SolveBimatrixViaHedge(game, o.eps, o.schedule.Make(), o.max_iters));
    }
  } else {
    throw std::invalid_argument("unknown method: " + o.method);
  }
  Emit(g, "solution.json", out);
  return 0;
}

struct SymmetrizeOptions {
  std::string game;
  double eps = 0.05;
  int64_t max_iters = 1'000'000;
  ScheduleOptions schedule;
};

int RunSymmetrize(const GlobalOptions& g, const SymmetrizeOptions& o) {
  GameFile file = ReadGameFile(o.game);
  if (!file.bimatrix) throw std::invalid_argument("symmetrize needs a bimatrix game");
  auto [normalized, record] = NormalizeBimatrix(*file.bimatrix);
  GktGame gkt = GktSymmetrize(normalized);
  Json gkt_json = SymmetricToJson(gkt.c);
  gkt_json["a"] = gkt.a;
  gkt_json["b"] = gkt.b;
  Emit(g, "gkt_game.json", gkt_json);
  PipelineResult r =
      SolveBimatrixViaHedge(*file.bimatrix, o.eps, o.schedule.Make(), o.max_iters);
  Emit(g, "pipeline_report.json", PipelineJson(r));
  return 0;
}

struct GraphOptions {
  std::string game;
  double tie_tol = 0.0;
  bool dot = false;
};

int RunAnalyzeGraph(const GlobalOptions& g, const GraphOptions& o) {
  GameFile file = ReadGameFile(o.game);
  const StrategicGame& game = *file.strategic;
  Emit(g, "analysis.json", GraphAnalysisJson(game, o.tie_tol));
  if (o.dot) {
    Condensation cond = Condense(BuildGraph(game, GraphKind::kOrdinal, o.tie_tol));
    std::string path = OutPath(g, "condensation.dot");
    WriteTextFile(path, CondensationToDot(game, cond));
    std::cout << path << "\n";
  }
  return 0;
}

struct MechanismOptions {
  std::string type;
  int n = 2;
  std::string benefit;
  double c = 0.0;
  double premium = 0.0;
  double surplus = 0.0;
  double penalty = std::numeric_limits<double>::infinity();
};

int RunMechanism(const GlobalOptions& g, const MechanismOptions& o) {
  StagHuntSpec spec;
  spec.n = o.n;
  for (const std::string& b : SplitCsv(o.benefit)) spec.benefit.push_back(std::stod(b));
  spec.c = o.c;
  spec.Validate();
  StrategicGame game = o.type == "insurance"
                           ? ApplyInsurance(spec, {o.premium, o.surplus})
                       : o.type == "election"
                           ? ApplyElection(spec, {o.penalty})
                           : throw std::invalid_argument("unknown mechanism: " + o.type);
  Emit(g, "induced_game.json", StrategicToJson(game));
  Json analysis = GraphAnalysisJson(game, 0.0);
  analysis["mechanism"] = o.type;
  analysis["strict_dominance"] =
      DominanceJson(game, IteratedDominance(game, DominanceKind::kStrict));
  analysis["weak_dominance"] =
      DominanceJson(game, IteratedDominance(game, DominanceKind::kWeak));
  analysis["weak_dominance_one_at_a_time"] = DominanceJson(
      game, IteratedDominanceOneAtATime(game, DominanceKind::kWeak));
  int total = 0;
  for (int count : game.strategy_counts()) total += count;
  if (total <= kMaxAllOrdersStrategies) {
    analysis["weak_dominance_all_orders"] = DominanceJson(
        game, IteratedDominance(game, DominanceKind::kWeak, EliminationOrder::kAllOrders));
  }
  Emit(g, "analysis.json", analysis);
  return 0;
}

struct ExperimentOptions {
  std::string experiment;
  ExperimentConfig values;
  std::string schedule_form;
  std::map<std::string, CLI::Option*> given;
};

int RunExperimentCommand(const GlobalOptions& g, const ExperimentOptions& o) {
  ExperimentConfig config = DefaultConfig(ParseExperimentKind(o.experiment));
  auto set = [&](const char* name) { return o.given.at(name)->count() > 0; };
  const ExperimentConfig& v = o.values;
  if (set("--trials")) config.trials = v.trials;
  if (set("--dim-min")) config.dim_min = v.dim_min;
  if (set("--dim-max")) config.dim_max = v.dim_max;
  if (set("--eps")) config.eps = v.eps;
  if (set("--max-iters")) config.max_iters = v.max_iters;
  if (set("--repulsion-steps")) config.repulsion_steps = v.repulsion_steps;
  if (set("--workers")) config.workers = v.workers;
  if (set("--schedule")) config.schedule_form = ParseScheduleForm(o.schedule_form);
  if (set("--schedule-c")) config.schedule_c = v.schedule_c;
  if (set("--schedule-exponent")) config.schedule_exponent = v.schedule_exponent;
  config.seed = g.seed;
  std::set<ReportFormat> formats;
  for (const std::string& f : SplitCsv(g.format)) formats.insert(ParseReportFormat(f));
  config.Validate();
  ExperimentReport report = RunExperiment(config);
  for (const std::string& path : EmitReport(report, formats, g.out)) {
    std::cout << path << "\n";
  }
  std::cout << report.successes << "/" << config.trials << " trials succeeded\n";
  for (const TrialRecord& t : report.trials) {
    if (!t.success) {
      std::cout << "failed trial " << t.index << " seed " << t.seed << ": "
                << t.outcome << "\n";
    }
  }
  return report.successes == config.trials ? 0 : kExitFailures;
}

int Main(int argc, char** argv) {
  CLI::App app{"Incremental-deployability game laboratory"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--out", g.out, "output directory")->capture_default_str();
  app.add_option("--format", g.format, "report formats: json,csv,svg")
      ->capture_default_str();

  SolveOptions solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "equilibria of a two-player game");
  solve_cmd->add_option("--game", solve.game, "game JSON")->required();
  solve_cmd->add_option("--method", solve.method, "support or hedge")
      ->capture_default_str();
  solve_cmd->add_option("--eps", solve.eps)->capture_default_str();
  solve_cmd->add_option("--max-iters", solve.max_iters)->capture_default_str();
  AddScheduleOptions(solve_cmd, &solve.schedule);

  SymmetrizeOptions sym;
  CLI::App* sym_cmd = app.add_subcommand("symmetrize", "GKT reduction and Hedge pipeline");
  sym_cmd->add_option("--game", sym.game, "bimatrix game JSON")->required();
  sym_cmd->add_option("--eps", sym.eps)->capture_default_str();
  sym_cmd->add_option("--max-iters", sym.max_iters)->capture_default_str();
  AddScheduleOptions(sym_cmd, &sym.schedule);

  GraphOptions graph;
  CLI::App* graph_cmd = app.add_subcommand("analyze-graph", "deployment-graph analysis");
  graph_cmd->add_option("--game", graph.game, "game JSON")->required();
  graph_cmd->add_option("--tie-tol", graph.tie_tol)->capture_default_str();
  graph_cmd->add_flag("--dot", graph.dot, "also write condensation.dot");

  MechanismOptions mech;
  CLI::App* mech_cmd = app.add_subcommand("mechanism", "stag-hunt mechanisms");
  mech_cmd->add_option("--type", mech.type, "insurance or election")->required();
  mech_cmd->add_option("--n", mech.n, "players")->capture_default_str();
  mech_cmd->add_option("--benefit", mech.benefit, "benefit(1),...,benefit(n)")->required();
  mech_cmd->add_option("--c", mech.c, "defection payoff")->required();
  mech_cmd->add_option("--premium", mech.premium);
  mech_cmd->add_option("--surplus", mech.surplus);
  mech_cmd->add_option("--penalty", mech.penalty);

  ExperimentOptions exp;
  CLI::App* exp_cmd = app.add_subcommand(
      "experiment", "batch experiments; unset options take per-experiment defaults");
  exp_cmd->add_option("--experiment", exp.experiment,
                      "random-symmetric-hedge, rps-repulsion, gkt-roundtrip, "
                      "stag-hunt-suite, mechanism-suite")
      ->required();
  ExperimentConfig& v = exp.values;
  exp.given["--trials"] = exp_cmd->add_option("--trials", v.trials);
  exp.given["--dim-min"] = exp_cmd->add_option("--dim-min", v.dim_min);
  exp.given["--dim-max"] = exp_cmd->add_option("--dim-max", v.dim_max);
  exp.given["--eps"] = exp_cmd->add_option("--eps", v.eps);
  exp.given["--max-iters"] = exp_cmd->add_option("--max-iters", v.max_iters);
  exp.given["--repulsion-steps"] =
      exp_cmd->add_option("--repulsion-steps", v.repulsion_steps);
  exp.given["--workers"] = exp_cmd->add_option("--workers", v.workers);
  exp.given["--schedule"] = exp_cmd->add_option(
      "--schedule", exp.schedule_form, "constant, harmonic, or power");
  exp.given["--schedule-c"] = exp_cmd->add_option("--schedule-c", v.schedule_c);
  exp.given["--schedule-exponent"] =
      exp_cmd->add_option("--schedule-exponent", v.schedule_exponent);

  for (CLI::App* cmd : {solve_cmd, sym_cmd, graph_cmd, mech_cmd, exp_cmd}) {
    cmd->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*solve_cmd) return RunSolve(g, solve);
    if (*sym_cmd) return RunSymmetrize(g, sym);
    if (*graph_cmd) return RunAnalyzeGraph(g, graph);
    if (*mech_cmd) return RunMechanism(g, mech);
    return RunExperimentCommand(g, exp);
  } catch (const std::exception& e) {
    std::cerr << "deploylab: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace
}  // namespace deploylab

int main(int argc, char** argv) { return deploylab::Main(argc, argv); }
