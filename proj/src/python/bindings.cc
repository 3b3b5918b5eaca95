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

// Python bindings. Mixed strategies cross the boundary as 1-D numpy arrays
// and games as 2-D arrays; structured results come back as dicts.

#include <optional>
#include <string>
#include <vector>

#include "deploylab/deployment_graph.h"
#include "deploylab/experiments.h"
#include "deploylab/game.h"
#include "deploylab/hedge.h"
#include "deploylab/mechanisms.h"
#include "deploylab/polyorders.h"
#include "deploylab/support_enumeration.h"
#include "deploylab/symmetrization.h"
#include "pybind11/eigen.h"
#include "pybind11/pybind11.h"
#include "pybind11/stl.h"

namespace deploylab {
namespace {

namespace py = pybind11;

MixedStrategy ToStrategy(const Vector& v) { return MixedStrategy(v); }

py::dict PairDict(const EquilibriumPair& pair) {
  py::dict d;
  d["p"] = pair.p.weights();
  d["q"] = pair.q.weights();
  return d;
}

py::dict VerdictDict(const StabilityVerdict& v) {
  py::dict d;
  d["status"] = VerdictStatusName(v.status);
  d["falsified"] = v.falsified();
  d["witness"] = v.witness ? py::cast(v.witness->weights()) : py::none();
  d["samples_used"] = v.samples_used;
  d["worst_gap"] = v.worst_gap;
  return d;
}

py::dict AnalysisDict(const MaximalAnalysis& a) {
  py::dict flags;
  flags["ordinally_acyclic"] = a.flags.ordinally_acyclic;
  flags["weakly_acyclic"] = a.flags.weakly_acyclic;
  flags["weakly_ordinally_acyclic"] = a.flags.weakly_ordinally_acyclic;
  py::dict d;
  d["maximal_states"] = a.maximal_states;
  d["classes"] = a.classes;
  d["pure_nash"] = a.pure_nash;
  d["flags"] = flags;
  return d;
}

py::dict DominanceDict(const DominanceRecord& r) {
  py::dict d;
  d["remaining"] = r.remaining;
  d["rounds"] = r.rounds;
  d["order_independent"] = r.order_independent;
  d["terminal_outcomes"] = r.terminal_outcomes;
  return d;
}

StagHuntSpec MakeSpec(int n, std::vector<double> benefit, double c) {
  StagHuntSpec spec;
  spec.n = n;
  spec.benefit = std::move(benefit);
  spec.c = c;
  spec.Validate();
  return spec;
}

StabilityConcept ParseConcept(const std::string& name) {
  for (StabilityConcept kind :
       {StabilityConcept::kESS, StabilityConcept::kNSS, StabilityConcept::kGESS,
        StabilityConcept::kGNSS, StabilityConcept::kEDS}) {
    if (StabilityConceptName(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown stability concept: " + name);
}

PYBIND11_MODULE(deploylab, m) {
  m.doc() = "Incremental-deployability game laboratory";

  py::class_<StrategicGame>(m, "StrategicGame")
      .def(py::init<std::vector<int>, std::vector<double>>(),
           py::arg("strategy_counts"), py::arg("payoffs"))
      .def_property_readonly("num_players", &StrategicGame::num_players)
      .def_property_readonly("num_profiles", &StrategicGame::num_profiles)
      .def_property_readonly("strategy_counts", &StrategicGame::strategy_counts)
      .def("encode", &StrategicGame::Encode)
      .def("decode", &StrategicGame::Decode)
      .def("payoff", [](const StrategicGame& g, int64_t profile, int player) {
        return g.Payoff(profile, player);
      });

  m.def(
      "hedge_step",
      [](const Matrix& c, const Vector& x, double alpha) {
        return HedgeStep(PayoffOperator::Linear(c), ToStrategy(x), alpha).weights();
      },
      py::arg("c"), py::arg("x"), py::arg("alpha"));
  m.def(
      "relative_entropy",
      [](const Vector& p, const Vector& q) {
        return RelativeEntropy(ToStrategy(p), ToStrategy(q));
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "is_fixed_point",
      [](const Matrix& c, const Vector& x, double tol) {
        return IsFixedPoint(PayoffOperator::Linear(c), ToStrategy(x), tol);
      },
      py::arg("c"), py::arg("x"), py::arg("tol") = kEquilibriumTol);
  m.def(
      "symmetric_regret",
      [](const Matrix& c, const Vector& x) {
        return SymmetricRegret(PayoffOperator::Linear(c), ToStrategy(x));
      },
      py::arg("c"), py::arg("x"));
  m.def(
      "bimatrix_regret",
      [](const Matrix& a, const Matrix& b, const Vector& p, const Vector& q) {
        return BimatrixRegret(BimatrixGame(a, b), ToStrategy(p), ToStrategy(q));
      },
      py::arg("a"), py::arg("b"), py::arg("p"), py::arg("q"));
  m.def(
      "run_hedge",
      [](const Matrix& c, const Vector& x0, const std::string& schedule,
         double rate, double exponent, int64_t max_iters,
         std::optional<double> stop_regret, int64_t record_every) {
        HedgeOptions options;
        options.max_iters = max_iters;
        options.stop_regret = stop_regret;
        options.record_every = record_every;
        HedgeTrace trace = RunHedge(
            PayoffOperator::Linear(c), ToStrategy(x0),
            LearningRateSchedule::Make(ParseScheduleForm(schedule), rate, exponent),
            options);
        std::vector<Vector> iterates;
        for (const MixedStrategy& x : trace.iterates) iterates.push_back(x.weights());
        py::dict d;
        d["indices"] = trace.indices;
        d["iterates"] = iterates;
        d["iterations"] = trace.iterations;
        d["stop_reason"] = StopReasonName(trace.stop_reason);
        d["last"] = trace.last().weights();
        d["average"] = AverageIterates(trace, AverageWindow::All()).weights();
        return d;
      },
      py::arg("c"), py::arg("x0"), py::arg("schedule") = "harmonic",
      py::arg("rate") = 1.0, py::arg("exponent") = 1.0,
      py::arg("max_iters") = 100000, py::arg("stop_regret") = py::none(),
      py::arg("record_every") = 1);

  m.def(
      "support_enumeration",
      [](const Matrix& a, const Matrix& b) {
        py::list out;
        for (const EquilibriumPair& e :
             SupportEnumerationEquilibria(BimatrixGame(a, b)).equilibria) {
          out.append(PairDict(e));
        }
        return out;
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "check_stability",
      [](const Matrix& c, const Vector& x_star, const std::string& kind,
         int samples, uint64_t seed, std::optional<double> radius) {
        SampleBudget budget;
        budget.simplex_samples = samples;
        budget.seed = seed;
        return VerdictDict(CheckStability(PayoffOperator::Linear(c),
                                          ToStrategy(x_star), ParseConcept(kind),
                                          budget, radius));
      },
      py::arg("c"), py::arg("x_star"), py::arg("kind"), py::arg("samples") = 2000,
      py::arg("seed") = 0, py::arg("radius") = py::none());

  m.def(
      "gkt_symmetrize",
      [](const Matrix& a, const Matrix& b) {
        return GktSymmetrize(NormalizeBimatrix(BimatrixGame(a, b)).first).c;
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "solve_bimatrix_via_hedge",
      [](const Matrix& a, const Matrix& b, double eps, const std::string& schedule,
         double rate, double exponent, int64_t max_iters) {
        PipelineResult r = SolveBimatrixViaHedge(
            BimatrixGame(a, b), eps,
            LearningRateSchedule::Make(ParseScheduleForm(schedule), rate, exponent),
            max_iters);
        py::dict d;
        d["success"] = r.success;
        d["source"] = r.source;
        d["failure"] = r.failure;
        d["iterations"] = r.iterations;
        d["best_regret"] = r.best_regret;
        d["pair"] = r.pair ? py::object(PairDict(*r.pair)) : py::none();
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("eps"), py::arg("schedule") = "power",
      py::arg("rate") = 1.0, py::arg("exponent") = 0.5,
      py::arg("max_iters") = 1000000);

  m.def(
      "stag_hunt",
      [](int n, std::vector<double> benefit, double c) {
        return BuildStagHunt(MakeSpec(n, std::move(benefit), c));
      },
      py::arg("n"), py::arg("benefit"), py::arg("c"));
  m.def(
      "insurance_game",
      [](int n, std::vector<double> benefit, double c, double premium,
         double surplus) {
        return ApplyInsurance(MakeSpec(n, std::move(benefit), c), {premium, surplus});
      },
      py::arg("n"), py::arg("benefit"), py::arg("c"), py::arg("premium"),
      py::arg("surplus"));
  m.def(
      "election_game",
      [](int n, std::vector<double> benefit, double c) {
        return ApplyElection(MakeSpec(n, std::move(benefit), c));
      },
      py::arg("n"), py::arg("benefit"), py::arg("c"));
  m.def(
      "maximal_states",
      [](const StrategicGame& game, const std::string& kind) {
        if (kind != "weak" && kind != "strong") {
          throw std::invalid_argument("kind must be weak or strong");
        }
        return AnalysisDict(MaximalStates(
            game, kind == "weak" ? MaximalityKind::kWeak : MaximalityKind::kStrong));
      },
      py::arg("game"), py::arg("kind") = "weak");
  m.def(
      "iterated_dominance",
      [](const StrategicGame& game, const std::string& kind, bool all_orders) {
        if (kind != "weak" && kind != "strict") {
          throw std::invalid_argument("kind must be weak or strict");
        }
        return DominanceDict(IteratedDominance(
            game, kind == "weak" ? DominanceKind::kWeak : DominanceKind::kStrict,
            all_orders ? EliminationOrder::kAllOrders
                       : EliminationOrder::kDeterministic));
      },
      py::arg("game"), py::arg("kind") = "strict", py::arg("all_orders") = false);
  m.def(
      "ordinal_potential",
      [](const StrategicGame& game) { return BuildOrdinalPotential(game); },
      py::arg("game"));

  m.def(
      "run_experiment",
      [](const std::string& experiment, std::optional<int> trials, uint64_t seed) {
        ExperimentConfig config = DefaultConfig(ParseExperimentKind(experiment));
        if (trials) config.trials = *trials;
        config.seed = seed;
        ExperimentReport report = RunExperiment(config);
        py::dict d;
        d["successes"] = report.successes;
        d["success_rate"] = report.success_rate;
        d["json"] = ReportToJson(report).dump();
        return d;
      },
      py::arg("experiment"), py::arg("trials") = py::none(), py::arg("seed") = 0);
}

}  // namespace
}  // namespace deploylab
