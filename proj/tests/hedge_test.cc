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

#include "deploylab/hedge.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "deploylab/game.h"
#include "deploylab/random.h"
#include "deploylab/support_enumeration.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace deploylab {
namespace {

using testing::Dominant;
using testing::RandomInterior;
using testing::Rps;

double L2Squared(const MixedStrategy& p, const MixedStrategy& q) {
  return (p.weights() - q.weights()).squaredNorm();
}

TEST(ScheduleTest, Rates) {
  LearningRateSchedule constant = LearningRateSchedule::Make(ScheduleForm::kConstant, 0.5);
  LearningRateSchedule harmonic = LearningRateSchedule::Make(ScheduleForm::kHarmonic, 2.0);
  LearningRateSchedule power = LearningRateSchedule::Make(ScheduleForm::kPower, 1.0, 0.5);
  EXPECT_EQ(constant.Rate(7), 0.5);
  EXPECT_EQ(harmonic.Rate(0), 2.0);
  EXPECT_EQ(harmonic.Rate(3), 0.5);
  EXPECT_DOUBLE_EQ(power.Rate(3), 0.5);
  EXPECT_FALSE(constant.SatisfiesConvergenceConditions());
  EXPECT_TRUE(harmonic.SatisfiesConvergenceConditions());
  EXPECT_TRUE(power.SatisfiesConvergenceConditions());
}

TEST(ScheduleTest, RejectsBadParameters) {
  EXPECT_THROW(LearningRateSchedule::Make(ScheduleForm::kHarmonic, 0.0), std::invalid_argument);
  EXPECT_THROW(LearningRateSchedule::Make(ScheduleForm::kPower, 1.0, 1.5), std::invalid_argument);
  EXPECT_THROW(LearningRateSchedule::Make(ScheduleForm::kPower, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(ParseScheduleForm("cosine"), std::invalid_argument);
  for (ScheduleForm f : {ScheduleForm::kConstant, ScheduleForm::kHarmonic, ScheduleForm::kPower}) {
    EXPECT_EQ(ParseScheduleForm(ScheduleFormName(f)), f);
  }
}

TEST(HedgeStepTest, ZeroRateIsIdentity) {
  MixedStrategy x({0.2, 0.3, 0.5});
  MixedStrategy y = HedgeStep(PayoffOperator::Linear(Rps()), x, 0.0);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(y[i], x[i]);
}

TEST(HedgeStepTest, HandValue) {
  MixedStrategy y =
      HedgeStep(PayoffOperator::Linear(Dominant()), MixedStrategy::Uniform(2), std::log(2.0));
  EXPECT_NEAR(y[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(y[1], 1.0 / 3.0, 1e-15);
}

TEST(HedgeStepTest, NegativeRateThrows) {
  EXPECT_THROW(HedgeStep(PayoffOperator::Linear(Rps()), MixedStrategy::Uniform(3), -1.0),
               std::invalid_argument);
}

TEST(HedgeStepTest, UnderflowKeepsInteriorPointsInterior) {
  Matrix c(2, 2);
  c << 1, 1, 0, 0;
  MixedStrategy y = HedgeStep(PayoffOperator::Linear(c), MixedStrategy::Uniform(2), 1e6);
  EXPECT_EQ(y[1], std::numeric_limits<double>::min());
  EXPECT_TRUE(y.IsInterior());
}

TEST(HedgeStepTest, LargePayoffsDoNotOverflow) {
  Matrix c = 1e300 * Dominant();
  MixedStrategy y = HedgeStep(PayoffOperator::Linear(c), MixedStrategy::Uniform(2), 10.0);
  EXPECT_TRUE(std::isfinite(y[0]));
  EXPECT_DOUBLE_EQ(y[0], 1.0);
}

TEST(HedgeStepTest, PreservesSimplexAndCarrier) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng = StreamRng(seed, 20);
    int n = 2 + static_cast<int>(seed % 7);
    Matrix c = SampleUniformMatrix(n, n, rng);
    Vector w = SampleSimplexUniform(n, rng).weights();
    w[0] = 0.0;
    MixedStrategy x = MixedStrategy::Normalized(w);
    double alpha = 5.0 * Uniform01(rng);
    MixedStrategy y = HedgeStep(PayoffOperator::Linear(c), x, alpha);
    EXPECT_NEAR(y.weights().sum(), 1.0, 1e-12);
    EXPECT_EQ(Carrier(y), Carrier(x));
  }
}

TEST(HedgeStepTest, BetterResponseProperty) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng = StreamRng(seed, 21);
    int n = 2 + static_cast<int>(seed % 6);
    PayoffOperator op = PayoffOperator::Linear(SampleUniformMatrix(n, n, rng));
    MixedStrategy x = SampleSimplexUniform(n, rng);
    MixedStrategy y = HedgeStep(op, x, 3.0 * Uniform01(rng));
    Vector u = PayoffVector(op, x);
    EXPECT_GE(y.weights().dot(u), x.weights().dot(u) - 1e-12);
  }
}

TEST(HedgeStepTest, WorksWithNonlinearOperators) {
  PayoffOperator op = PayoffOperator::Nonlinear(
      2, [](const Vector& x) {
        Vector u(2);
        u << x[1] * x[1], x[0];
        return u;
      });
  MixedStrategy y = HedgeStep(op, MixedStrategy::Uniform(2), 1.0);
  double w0 = std::exp(0.25);
  double w1 = std::exp(0.5);
  EXPECT_NEAR(y[0], w0 / (w0 + w1), 1e-15);
}

TEST(RelativeEntropyTest, Examples) {
  EXPECT_NEAR(RelativeEntropy(MixedStrategy({1, 0}), MixedStrategy::Uniform(2)),
              std::log(2.0), 1e-15);
  EXPECT_EQ(RelativeEntropy(MixedStrategy::Uniform(3), MixedStrategy::Uniform(3)), 0.0);
  EXPECT_THROW(RelativeEntropy(MixedStrategy::Uniform(2), MixedStrategy({1, 0})),
               std::invalid_argument);
}

TEST(RelativeEntropyTest, BoundsSquaredDistance) {
  for (uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng = StreamRng(seed, 22);
    int n = 2 + static_cast<int>(seed % 8);
    MixedStrategy p = SampleSimplexUniform(n, rng);
    MixedStrategy q = SampleSimplexUniform(n, rng);
    double re = RelativeEntropy(p, q);
    EXPECT_GE(re, 0.0);
    EXPECT_GE(re, L2Squared(p, q) - 1e-15);
  }
}

TEST(FixedPointTest, Examples) {
  EXPECT_TRUE(IsFixedPoint(PayoffOperator::Linear(Rps()), MixedStrategy::Uniform(3)));
  EXPECT_TRUE(IsFixedPoint(PayoffOperator::Linear(Dominant()), MixedStrategy::Pure(2, 1)));
  EXPECT_FALSE(IsFixedPoint(PayoffOperator::Linear(Dominant()), MixedStrategy::Uniform(2)));
  EXPECT_TRUE(IsFixedPoint(PayoffOperator::Linear(Rps()), MixedStrategy({0.5, 0.5, 0}), 1.0 + 1e-12));
  EXPECT_FALSE(IsFixedPoint(PayoffOperator::Linear(Rps()), MixedStrategy({0.5, 0.5, 0}), 0.5));
}

TEST(FixedPointTest, FixedPointsAreInvariantUnderTheMap) {
  PayoffOperator op = PayoffOperator::Linear(Rps());
  for (double alpha : {0.1, 1.0, 10.0}) {
    MixedStrategy y = HedgeStep(op, MixedStrategy::Uniform(3), alpha);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(y[i], 1.0 / 3.0, 1e-15);
    MixedStrategy e = HedgeStep(op, MixedStrategy::Pure(3, 2), alpha);
    EXPECT_EQ(e[2], 1.0);
  }
}

TEST(FixedPointTest, SurviveNegation) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = StreamRng(seed, 23);
    PayoffOperator op = PayoffOperator::Linear(SampleUniformMatrix(3, 3, rng));
    SupportEnumerationResult r = SupportEnumerationEquilibria(BimatrixGame::Symmetric(op.matrix()));
    for (const EquilibriumPair& e : r.equilibria) {
      EXPECT_EQ(IsFixedPoint(op, e.p, 1e-9), IsFixedPoint(op.Negated(), e.p, 1e-9));
      EXPECT_EQ(IsFixedPoint(op, e.q, 1e-9), IsFixedPoint(op.Negated(), e.q, 1e-9));
    }
  }
}

TEST(FixedPointTest, SymmetricEquilibriaAreFixedPoints) {
  int symmetric = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = StreamRng(seed, 24);
    int n = 2 + static_cast<int>(seed % 3);
    PayoffOperator op = PayoffOperator::Linear(SampleUniformMatrix(n, n, rng));
    SupportEnumerationResult r = SupportEnumerationEquilibria(BimatrixGame::Symmetric(op.matrix()));
    for (const EquilibriumPair& e : r.equilibria) {
      if ((e.p.weights() - e.q.weights()).cwiseAbs().maxCoeff() > 1e-9) continue;
      ++symmetric;
      EXPECT_LE(SymmetricRegret(op, e.p), 1e-9);
      EXPECT_TRUE(IsFixedPoint(op, e.p, 1e-9));
    }
  }
  EXPECT_GE(symmetric, 100);
}

TEST(HedgeDynamicsTest, BestResponseDescent) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng = StreamRng(seed, 25);
    int n = 2 + static_cast<int>(seed % 6);
    PayoffOperator op = PayoffOperator::Linear(SampleUniformMatrix(n, n, rng));
    MixedStrategy x = RandomInterior(n, rng);
    if (IsEqualizer(op, x, 1e-9)) continue;
    int best = BestResponseSet(op, x)[0];
    MixedStrategy e = MixedStrategy::Pure(n, best);
    MixedStrategy y = HedgeStep(op, x, 0.5 * Uniform01(rng) + 0.01);
    EXPECT_LT(RelativeEntropy(e, y), RelativeEntropy(e, x));
  }
}

TEST(HedgeDynamicsTest, ZeroSumInteriorEquilibriumRepels) {
  PayoffOperator op = PayoffOperator::Linear(Rps());
  MixedStrategy center = MixedStrategy::Uniform(3);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng = StreamRng(seed, 26);
    MixedStrategy x = RandomInterior(3, rng);
    for (double alpha : {0.05, 0.5, 2.0}) {
      double before = RelativeEntropy(center, x);
      MixedStrategy y = HedgeStep(op, x, alpha);
      EXPECT_GE(RelativeEntropy(center, y), before - 1e-15);
    }
  }
}

TEST(HedgeDynamicsTest, InstabilityInequalityAndConvexity) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = StreamRng(seed, 27);
    int n = 2 + static_cast<int>(seed % 5);
    PayoffOperator op = PayoffOperator::Linear(SampleUniformMatrix(n, n, rng));
    MixedStrategy x = RandomInterior(n, rng);
    MixedStrategy y = SampleSimplexUniform(n, rng);
    ConvexityReport r =
        CheckConvexityBounds(op, x, y, {0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0});
    EXPECT_TRUE(r.convex);
    EXPECT_TRUE(r.secant_holds);
    EXPECT_NEAR(r.derivative_at_zero, r.derivative_formula, 1e-6);
    for (double s : r.secant_slack) EXPECT_GE(s, -1e-12);
  }
}

TEST(HedgeDynamicsTest, SecantNeedsUnitBounds) {
  EXPECT_THROW(CheckConvexityBounds(PayoffOperator::Linear(Rps()), MixedStrategy::Uniform(3),
                                    MixedStrategy::Pure(3, 0), {0.1}),
               std::invalid_argument);
  EXPECT_NO_THROW(CheckConvexityBounds(PayoffOperator::Linear(Rps()), MixedStrategy::Uniform(3),
                                       MixedStrategy::Pure(3, 0), {0.1}, false));
}

TEST(RunHedgeTest, DominantStrategyWins) {
  HedgeOptions options;
  options.max_iters = 20000;
  HedgeTrace trace = RunHedge(PayoffOperator::Linear(Dominant()), MixedStrategy::Uniform(2),
                              LearningRateSchedule::Make(ScheduleForm::kHarmonic, 1.0), options);
  EXPECT_GT(trace.last()[0], 0.999);
  EXPECT_EQ(trace.iterations, 20000);
  EXPECT_EQ(trace.stop_reason, StopReason::kMaxIters);
}

TEST(RunHedgeTest, FixedPointStartStopsImmediately) {
  HedgeTrace trace = RunHedge(PayoffOperator::Linear(Rps()), MixedStrategy::Uniform(3),
                              LearningRateSchedule::Make(ScheduleForm::kHarmonic, 1.0));
  EXPECT_EQ(trace.stop_reason, StopReason::kFixedPoint);
  EXPECT_EQ(trace.iterates.size(), 1u);
  EXPECT_EQ(trace.iterations, 0);
}

TEST(RunHedgeTest, RejectsBoundaryStart) {
  EXPECT_THROW(RunHedge(PayoffOperator::Linear(Rps()), MixedStrategy({0.5, 0.5, 0}),
                        LearningRateSchedule::Make(ScheduleForm::kHarmonic, 1.0)),
               std::invalid_argument);
}

TEST(RunHedgeTest, StopRegret) {
  HedgeOptions options;
  options.stop_regret = 1e-3;
  options.regret_check_every = 1;
  HedgeTrace trace = RunHedge(PayoffOperator::Linear(Dominant()), MixedStrategy::Uniform(2),
                              LearningRateSchedule::Make(ScheduleForm::kConstant, 1.0), options);
  EXPECT_EQ(trace.stop_reason, StopReason::kConverged);
  EXPECT_LE(SymmetricRegret(PayoffOperator::Linear(Dominant()), trace.last()), 1e-3);
}

TEST(RunHedgeTest, StopReNeedsReference) {
  HedgeOptions options;
  options.stop_re = 0.1;
  EXPECT_THROW(RunHedge(PayoffOperator::Linear(Dominant()), MixedStrategy::Uniform(2),
                        LearningRateSchedule::Make(ScheduleForm::kConstant, 1.0), options),
               std::invalid_argument);
}

TEST(RunHedgeTest, RecordingAndAverages) {
  Rng rng = StreamRng(1, 28);
  PayoffOperator op = PayoffOperator::Linear(SampleUniformMatrix(4, 4, rng));
  HedgeOptions options;
  options.max_iters = 95;
  options.record_every = 10;
  options.reference = MixedStrategy::Uniform(4);
  HedgeTrace trace = RunHedge(op, MixedStrategy::Uniform(4),
                              LearningRateSchedule::Make(ScheduleForm::kConstant, 0.1), options);
  ASSERT_EQ(trace.indices.size(), 11u);
  EXPECT_EQ(trace.indices.front(), 0);
  EXPECT_EQ(trace.indices[9], 90);
  EXPECT_EQ(trace.indices.back(), 95);
  EXPECT_EQ(trace.re_to_reference.size(), trace.iterates.size());

  HedgeOptions every;
  every.max_iters = 95;
  HedgeTrace full = RunHedge(op, MixedStrategy::Uniform(4),
                             LearningRateSchedule::Make(ScheduleForm::kConstant, 0.1), every);
  Vector mean = Vector::Zero(4);
  for (const MixedStrategy& x : full.iterates) mean += x.weights();
  mean /= static_cast<double>(full.iterates.size());
  MixedStrategy avg = AverageIterates(trace, AverageWindow::All());
  EXPECT_LE((avg.weights() - mean).cwiseAbs().maxCoeff(), 1e-12);
  MixedStrategy rate_weighted = AverageIterates(trace, AverageWindow::RateWeighted());
  EXPECT_LE((rate_weighted.weights() - mean).cwiseAbs().maxCoeff(), 1e-12);
  MixedStrategy tail = AverageIterates(full, AverageWindow::Tail(1));
  EXPECT_LE((tail.weights() - full.last().weights()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(AverageIterates(full, AverageWindow::Tail(0)), std::invalid_argument);
}

TEST(RunHedgeTest, TraceCsv) {
  HedgeOptions options;
  options.max_iters = 5;
  HedgeTrace trace = RunHedge(PayoffOperator::Linear(Dominant()), MixedStrategy::Uniform(2),
                              LearningRateSchedule::Make(ScheduleForm::kHarmonic, 1.0), options);
  std::ostringstream out;
  WriteTraceCsv(trace, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "iter,alpha,payoff,re_to_reference,x_0,x_1");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 6);
}

TEST(RescaleTest, MapsIntoUnitInterval) {
  UnitRescale r = RescaleToUnit(Rps());
  EXPECT_EQ(r.c.minCoeff(), 0.0);
  EXPECT_EQ(r.c.maxCoeff(), 1.0);
  EXPECT_DOUBLE_EQ(r.c(0, 0), 0.5);
  EXPECT_EQ(r.shift, -1.0);
  EXPECT_EQ(r.scale, 0.5);
}

}  // namespace
}  // namespace deploylab
