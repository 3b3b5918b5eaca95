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

#include "deploylab/symmetrization.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace deploylab {
namespace {

// Relative slack for re-checking predicates that were derived by scaling.
constexpr double kChainSlack = 1e-9;

bool Within(double value, double bound) {
  return value <= bound * (1.0 + kChainSlack) + 1e-15;
}

MixedStrategy Block(const MixedStrategy& x, int begin, int size) {
  Vector w = x.weights().segment(begin, size);
  if (!(w.sum() > 0.0)) {
    throw std::domain_error("recovery block has zero mass");
  }
  return MixedStrategy::Normalized(w);
}

}  // namespace

bool IsNormalized(const BimatrixGame& game) {
  return game.A().minCoeff() > 0.0 && game.A().maxCoeff() <= 1.0 &&
         game.B().maxCoeff() < 0.0 && game.B().minCoeff() >= -1.0;
}

std::pair<BimatrixGame, NormalizationRecord> NormalizeBimatrix(
    const BimatrixGame& game) {
  NormalizationRecord record;
  if (IsNormalized(game)) {
    record.min_a = game.A().minCoeff();
    record.max_a = game.A().maxCoeff();
    record.min_b = game.B().minCoeff();
    record.max_b = game.B().maxCoeff();
    return {game, record};
  }
  record.identity = false;
  double min_a = game.A().minCoeff();
  double max_b = game.B().maxCoeff();
  record.shift_a = 1.0 - min_a;
  record.shift_b = -1.0 - max_b;
  Matrix a = (game.A().array() + record.shift_a).matrix();
  Matrix b = (game.B().array() + record.shift_b).matrix();
  double magnitude = std::max(a.maxCoeff(), -b.minCoeff());
  record.scale = 1.0 / magnitude;
  a *= record.scale;
  b *= record.scale;
  // Guard the closed ends against round-off.
  a = a.cwiseMin(1.0);
  b = b.cwiseMax(-1.0);
  record.min_a = a.minCoeff();
  record.max_a = a.maxCoeff();
  record.min_b = b.minCoeff();
  record.max_b = b.maxCoeff();
  return {BimatrixGame(std::move(a), std::move(b)), record};
}

GktGame GktSymmetrize(const BimatrixGame& game) {
  if (!(game.A().minCoeff() > 0.0) || !(game.B().maxCoeff() < 0.0)) {
    throw std::invalid_argument("symmetrization needs A > 0 and B < 0");
  }
  int a = game.rows();
  int b = game.cols();
  int n = a + b + 1;
  GktGame out;
  out.a = a;
  out.b = b;
  out.c = Matrix::Zero(n, n);
  out.c.block(0, a, a, b) = game.A();
  out.c.block(0, a + b, a, 1).setConstant(-1.0);
  out.c.block(a, 0, b, a) = game.B().transpose();
  out.c.block(a, a + b, b, 1).setConstant(1.0);
  out.c.block(a + b, 0, 1, a).setConstant(1.0);
  out.c.block(a + b, a, 1, b).setConstant(-1.0);
  return out;
}

RecoveredPairs RecoverEquilibria(const MixedStrategy& x_star,
                                 const MixedStrategy& y_star, int a, int b) {
  if (a < 1 || b < 1 || x_star.size() != a + b + 1 ||
      y_star.size() != a + b + 1) {
    throw std::invalid_argument("strategies do not match the GKT dimension");
  }
  return RecoveredPairs{{Block(x_star, 0, a), Block(y_star, a, b)},
                        {Block(y_star, 0, a), Block(x_star, a, b)}};
}

WellSupportedResult ApproxToWellSupported(const BimatrixGame& game,
                                          const MixedStrategy& p,
                                          const MixedStrategy& q, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (game.A().minCoeff() < 0.0 || game.A().maxCoeff() > 1.0 ||
      game.B().minCoeff() < 0.0 || game.B().maxCoeff() > 1.0) {
    throw std::invalid_argument("conversion needs payoffs in [0, 1]");
  }
  double regret = BimatrixRegret(game, p, q);
  if (!Within(regret, eps * eps / 8.0)) {
    throw std::invalid_argument("input is not an (eps^2/8)-approximate equilibrium");
  }

  WellSupportedResult result{p, q, WellSupportedGap(game, p, q), 0};
  int max_rounds = game.rows() + game.cols();
  while (result.achieved_eps > eps && result.rounds < max_rounds) {
    Vector row = game.A() * result.q.weights();
    Vector col = game.B().transpose() * result.p.weights();
    Vector pw = result.p.weights();
    Vector qw = result.q.weights();
    double row_cut = row.maxCoeff() - eps / 2.0;
    double col_cut = col.maxCoeff() - eps / 2.0;
    bool changed = false;
    for (int i = 0; i < pw.size(); ++i) {
      if (pw[i] > 0.0 && row[i] < row_cut) {
        pw[i] = 0.0;
        changed = true;
      }
    }
    for (int j = 0; j < qw.size(); ++j) {
      if (qw[j] > 0.0 && col[j] < col_cut) {
        qw[j] = 0.0;
        changed = true;
      }
    }
    if (!changed) break;
    ++result.rounds;
    result.p = MixedStrategy::Normalized(pw);
    result.q = MixedStrategy::Normalized(qw);
    result.achieved_eps = WellSupportedGap(game, result.p, result.q);
  }
  if (result.achieved_eps > eps) {
    throw std::runtime_error("well-supported conversion did not reach eps");
  }
  return result;
}

EpsilonBudget MakeEpsilonBudget(const BimatrixGame& game, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  auto [normalized, record] = NormalizeBimatrix(game);
  EpsilonBudget budget;
  budget.target_eps = eps;
  budget.c_prime = record.scale;
  budget.constraint_bound =
      std::min({1.0 / 3.0, normalized.A().minCoeff(), -normalized.B().maxCoeff()});
  budget.eps_normalized = budget.c_prime * eps;
  if (!(budget.eps_normalized < budget.constraint_bound)) {
    throw std::invalid_argument(
        "eps too large: c' eps must be below min{1/3, min A', min(-B')}");
  }
  GktGame gkt = GktSymmetrize(normalized);
  budget.gkt_shift = std::abs(gkt.c.minCoeff()) + 1.0;
  budget.c = 1.0 / (gkt.c.maxCoeff() + budget.gkt_shift);
  budget.eps_unit = budget.c * budget.eps_normalized;
  budget.eps_approx = budget.eps_unit * budget.eps_unit / 8.0;
  return budget;
}

PipelineResult SolveBimatrixViaHedge(const BimatrixGame& game, double eps,
                                     const LearningRateSchedule& schedule,
                                     int64_t max_iters) {
  PipelineResult result;
  result.budget = MakeEpsilonBudget(game, eps);
  if (game.rows() == 1 && game.cols() == 1) {
    result.success = true;
    result.source = "trivial";
    result.pair = EquilibriumPair{MixedStrategy::Pure(1, 0),
                                  MixedStrategy::Pure(1, 0)};
    result.chain = {true, true, true, true, true};
    return result;
  }

  auto [normalized, record] = NormalizeBimatrix(game);
  result.normalization = record;
  GktGame gkt = GktSymmetrize(normalized);
  const EpsilonBudget& budget = result.budget;
  Matrix unit = (gkt.c.array() + budget.gkt_shift).matrix() * budget.c;
  PayoffOperator unit_op = PayoffOperator::Linear(unit);
  PayoffOperator gkt_op = PayoffOperator::Linear(gkt.c);
  BimatrixGame unit_game = BimatrixGame::Symmetric(unit);

  HedgeOptions options;
  options.max_iters = max_iters;
  options.stop_regret = budget.eps_approx;
  options.record_every = std::max<int64_t>(1, max_iters / 1000);
  HedgeTrace trace = RunHedge(unit_op, MixedStrategy::Uniform(unit.rows()),
                              schedule, options);
  result.iterations = trace.iterations;
  result.stop_reason = StopReasonName(trace.stop_reason);
  size_t tail = std::min<size_t>(trace.iterates.size(), 8);
  result.trace_tail.assign(trace.iterates.end() - tail, trace.iterates.end());

  const MixedStrategy& last = trace.last();
  int64_t stored = static_cast<int64_t>(trace.iterates.size());
  std::vector<MixedStrategy> averages = {
      AverageIterates(trace, AverageWindow::Tail(std::max<int64_t>(1, stored / 2))),
      AverageIterates(trace, AverageWindow::All()),
      AverageIterates(trace, AverageWindow::RateWeighted())};
  result.last_regret = SymmetricRegret(unit_op, last);
  result.averaged_regret = std::numeric_limits<double>::infinity();
  for (const MixedStrategy& avg : averages) {
    result.averaged_regret =
        std::min(result.averaged_regret, SymmetricRegret(unit_op, avg));
  }
  result.best_regret = std::min(result.last_regret, result.averaged_regret);

  std::vector<std::pair<std::string, const MixedStrategy*>> candidates = {
      {"last-iterate", &last}};
  for (const MixedStrategy& avg : averages) {
    candidates.push_back({"averaged-iterate", &avg});
  }

  for (const auto& [source, x] : candidates) {
    ChainVerdicts chain;
    chain.approx_on_unit = Within(SymmetricRegret(unit_op, *x), budget.eps_approx);
    if (!chain.approx_on_unit) {
      result.failure = "Hedge did not reach the required approximation";
      result.chain = chain;
      continue;
    }
    std::optional<WellSupportedResult> ws;
    try {
      ws = ApproxToWellSupported(unit_game, *x, *x, budget.eps_unit);
    } catch (const std::exception& e) {
      result.failure = e.what();
      result.chain = chain;
      continue;
    }
    const MixedStrategy& w = ws->p;
    chain.well_supported_on_unit =
        Within(SymmetricWellSupportedGap(unit_op, w), budget.eps_unit);
    chain.well_supported_on_gkt =
        Within(SymmetricWellSupportedGap(gkt_op, w), budget.eps_normalized);
    std::optional<RecoveredPairs> pairs;
    try {
      pairs = RecoverEquilibria(w, w, gkt.a, gkt.b);
    } catch (const std::domain_error& e) {
      result.failure = e.what();
      result.chain = chain;
      continue;
    }
    const EquilibriumPair& pair = pairs->first;
    chain.well_supported_on_normalized = Within(
        WellSupportedGap(normalized, pair.p, pair.q), budget.eps_normalized);
    chain.approx_on_original = BimatrixRegret(game, pair.p, pair.q) <= eps;
    result.chain = chain;
    if (!(chain.well_supported_on_unit && chain.well_supported_on_gkt &&
          chain.well_supported_on_normalized && chain.approx_on_original)) {
      result.failure = "a step of the epsilon chain failed re-verification";
      continue;
    }
    result.success = true;
    result.failure.clear();
    result.source = source;
    result.pair = pair;
    result.achieved_eps = BimatrixRegret(game, pair.p, pair.q);
    return result;
  }
  return result;
}

}  // namespace deploylab
