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

#include <vector>

#include "deploylab/game.h"
#include "deploylab/hedge.h"
#include "deploylab/random.h"
#include "deploylab/support_enumeration.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace deploylab {
namespace {

using ::deploylab::testing::StagHuntRow;

BimatrixGame RandomGame(int rows, int cols, Rng& rng) {
  return BimatrixGame(SampleUniformMatrix(rows, cols, rng),
                      SampleUniformMatrix(rows, cols, rng));
}

TEST(NormalizeTest, OutputBounds) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = StreamRng(seed, 40);
    BimatrixGame game(10.0 * SampleUniformMatrix(3, 2, rng) - Matrix::Constant(3, 2, 4.0),
                      SampleUniformMatrix(3, 2, rng));
    auto [norm, record] = NormalizeBimatrix(game);
    EXPECT_TRUE(IsNormalized(norm));
    EXPECT_FALSE(record.identity);
    EXPECT_GT(norm.A().minCoeff(), 0.0);
    EXPECT_LE(norm.A().maxCoeff(), 1.0);
    EXPECT_LT(norm.B().maxCoeff(), 0.0);
    EXPECT_GE(norm.B().minCoeff(), -1.0);
    Matrix a = (game.A().array() + record.shift_a).matrix() * record.scale;
    EXPECT_LE((a - norm.A()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(NormalizeTest, IdentityOnNormalizedGames) {
  Matrix a = Matrix::Constant(2, 2, 0.5);
  Matrix b = Matrix::Constant(2, 2, -0.5);
  auto [norm, record] = NormalizeBimatrix(BimatrixGame(a, b));
  EXPECT_TRUE(record.identity);
  EXPECT_EQ(norm.A(), a);
  EXPECT_EQ(record.scale, 1.0);
}

TEST(NormalizeTest, PreservesEquilibria) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng = StreamRng(seed, 41);
    BimatrixGame game = RandomGame(3, 3, rng);
    BimatrixGame norm = NormalizeBimatrix(game).first;
    std::vector<EquilibriumPair> base = SupportEnumerationEquilibria(game).equilibria;
    std::vector<EquilibriumPair> moved = SupportEnumerationEquilibria(norm).equilibria;
    ASSERT_EQ(base.size(), moved.size());
    for (size_t i = 0; i < base.size(); ++i) EXPECT_TRUE(SamePair(base[i], moved[i]));
  }
}

TEST(ScalingTest, RegretScalesLinearly) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = StreamRng(seed, 42);
    BimatrixGame game = RandomGame(3, 4, rng);
    MixedStrategy p = SampleSimplexUniform(3, rng);
    MixedStrategy q = SampleSimplexUniform(4, rng);
    double c = 0.1 + 5.0 * Uniform01(rng);
    BimatrixGame scaled(c * game.A(), c * game.B());
    EXPECT_NEAR(BimatrixRegret(scaled, p, q), c * BimatrixRegret(game, p, q), 1e-12);
    EXPECT_NEAR(WellSupportedGap(scaled, p, q), c * WellSupportedGap(game, p, q), 1e-12);
  }
}

TEST(GktTest, SingleStrategyLayout) {
  Matrix a(1, 1);
  a << 0.5;
  Matrix b(1, 1);
  b << -0.25;
  GktGame gkt = GktSymmetrize(BimatrixGame(a, b));
  Matrix expected(3, 3);
  expected << 0, 0.5, -1, -0.25, 0, 1, 1, -1, 0;
  EXPECT_EQ(gkt.c, expected);
  EXPECT_EQ(gkt.a, 1);
  EXPECT_EQ(gkt.b, 1);
}

TEST(GktTest, BlockLayout) {
  Rng rng = StreamRng(0, 43);
  BimatrixGame norm = NormalizeBimatrix(RandomGame(2, 3, rng)).first;
  GktGame gkt = GktSymmetrize(norm);
  ASSERT_EQ(gkt.c.rows(), 6);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(gkt.c(i, 2 + j), norm.A()(i, j));
      EXPECT_EQ(gkt.c(2 + j, i), norm.B()(i, j));
    }
    EXPECT_EQ(gkt.c(i, 5), -1.0);
    EXPECT_EQ(gkt.c(5, i), 1.0);
    EXPECT_EQ(gkt.c(i, 1 - i), 0.0);
  }
  for (int j = 0; j < 3; ++j) {
    EXPECT_EQ(gkt.c(2 + j, 5), 1.0);
    EXPECT_EQ(gkt.c(5, 2 + j), -1.0);
  }
  EXPECT_EQ(gkt.c(5, 5), 0.0);
}

TEST(GktTest, RejectsUnnormalizedGames) {
  Matrix a = Matrix::Constant(2, 2, 0.5);
  EXPECT_THROW(GktSymmetrize(BimatrixGame(a, a)), std::invalid_argument);
}

TEST(RecoveryTest, Example) {
  MixedStrategy x({0.1, 0.3, 0.2, 0.2, 0.2});
  RecoveredPairs r = RecoverEquilibria(x, x, 2, 2);
  EXPECT_NEAR(r.first.p[0], 0.25, 1e-15);
  EXPECT_NEAR(r.first.q[0], 0.5, 1e-15);
  EXPECT_THROW(RecoverEquilibria(MixedStrategy::Pure(5, 4), MixedStrategy::Pure(5, 4), 2, 2),
               std::domain_error);
  EXPECT_THROW(RecoverEquilibria(x, x, 2, 3), std::invalid_argument);
}

TEST(RecoveryTest, SymmetricEquilibriaOfGktGiveNash) {
  int recovered = 0;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng = StreamRng(seed, 44);
    int rows = 2 + static_cast<int>(seed % 2);
    BimatrixGame game = RandomGame(rows, 2, rng);
    BimatrixGame norm = NormalizeBimatrix(game).first;
    GktGame gkt = GktSymmetrize(norm);
    for (const EquilibriumPair& e :
         SupportEnumerationEquilibria(BimatrixGame::Symmetric(gkt.c)).equilibria) {
      if (!SamePair(e, {e.p, e.p})) continue;
      RecoveredPairs r = RecoverEquilibria(e.p, e.p, gkt.a, gkt.b);
      EXPECT_LE(BimatrixRegret(norm, r.first.p, r.first.q), 1e-8);
      EXPECT_LE(BimatrixRegret(game, r.first.p, r.first.q), 1e-8);
      ++recovered;
    }
  }
  EXPECT_GE(recovered, 30);
}

TEST(WellSupportedTest, PurgesBadStrategies) {
  Matrix a(2, 2);
  a << 1, 1, 0, 0;
  Matrix b(2, 2);
  b << 1, 0, 1, 0;
  BimatrixGame game(a, b);
  MixedStrategy p({0.996, 0.004});
  MixedStrategy q({1.0, 0.0});
  EXPECT_GT(WellSupportedGap(game, p, q), 0.2);
  WellSupportedResult r = ApproxToWellSupported(game, p, q, 0.2);
  EXPECT_EQ(r.p[1], 0.0);
  EXPECT_EQ(r.rounds, 1);
  EXPECT_LE(r.achieved_eps, 0.2);
  EXPECT_THROW(ApproxToWellSupported(game, MixedStrategy({0.9, 0.1}), q, 0.2),
               std::invalid_argument);
  EXPECT_THROW(ApproxToWellSupported(BimatrixGame(2.0 * a, b), p, q, 0.2),
               std::invalid_argument);
}

TEST(WellSupportedTest, ConversionOnPerturbedEquilibria) {
  int converted = 0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng = StreamRng(seed, 45);
    BimatrixGame game = RandomGame(3, 3, rng);
    double eps = 0.1 + 0.2 * Uniform01(rng);
    for (const EquilibriumPair& e : SupportEnumerationEquilibria(game).equilibria) {
      MixedStrategy noise_p = SampleSimplexUniform(3, rng);
      MixedStrategy noise_q = SampleSimplexUniform(3, rng);
      double t = 0.5 * eps * eps / 8.0;
      MixedStrategy p = MixedStrategy::Normalized((1 - t) * e.p.weights() + t * noise_p.weights());
      MixedStrategy q = MixedStrategy::Normalized((1 - t) * e.q.weights() + t * noise_q.weights());
      if (BimatrixRegret(game, p, q) > eps * eps / 8.0) continue;
      WellSupportedResult r = ApproxToWellSupported(game, p, q, eps);
      EXPECT_LE(WellSupportedGap(game, r.p, r.q), eps);
      EXPECT_TRUE(IsApproxEquilibrium(game, r.p, r.q, eps, EquilibriumMode::kWellSupported));
      ++converted;
    }
  }
  EXPECT_GT(converted, 100);
}

TEST(EpsilonBudgetTest, Chain) {
  Rng rng = StreamRng(3, 46);
  BimatrixGame game = RandomGame(3, 3, rng);
  EpsilonBudget b = MakeEpsilonBudget(game, 0.05);
  auto [norm, record] = NormalizeBimatrix(game);
  EXPECT_EQ(b.c_prime, record.scale);
  EXPECT_DOUBLE_EQ(b.eps_normalized, record.scale * 0.05);
  EXPECT_DOUBLE_EQ(b.eps_unit, b.c * b.eps_normalized);
  EXPECT_DOUBLE_EQ(b.eps_approx, b.eps_unit * b.eps_unit / 8.0);
  GktGame gkt = GktSymmetrize(norm);
  Matrix unit = (gkt.c.array() + b.gkt_shift).matrix() * b.c;
  EXPECT_GT(unit.minCoeff(), 0.0);
  EXPECT_LE(unit.maxCoeff(), 1.0);
}

TEST(EpsilonBudgetTest, RejectsLargeEps) {
  Rng rng = StreamRng(3, 47);
  BimatrixGame game = RandomGame(3, 3, rng);
  EXPECT_THROW(MakeEpsilonBudget(game, 10.0), std::invalid_argument);
  EXPECT_THROW(MakeEpsilonBudget(game, 0.0), std::invalid_argument);
}

TEST(PipelineTest, SingleStrategyGameIsTrivial) {
  Matrix a(1, 1);
  a << 0.3;
  PipelineResult r = SolveBimatrixViaHedge(
      BimatrixGame(a, a), 0.05, LearningRateSchedule::Make(ScheduleForm::kPower, 1.0, 0.5), 10);
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.source, "trivial");
}

TEST(PipelineTest, StagHuntEquilibrium) {
  Matrix a = StagHuntRow();
  BimatrixGame game(a, a.transpose());
  PipelineResult r = SolveBimatrixViaHedge(
      game, 0.05, LearningRateSchedule::Make(ScheduleForm::kPower, 1.0, 0.5), 200000);
  ASSERT_TRUE(r.success) << r.failure;
  ASSERT_TRUE(r.pair.has_value());
  EXPECT_LE(BimatrixRegret(game, r.pair->p, r.pair->q), 0.05);
  EXPECT_TRUE(r.chain.approx_on_original);
}

TEST(PipelineTest, DominantEquilibriumFailsWithoutFabricating) {
  Matrix a(2, 2);
  a << 3, 0, 5, 1;
  BimatrixGame game(a, a.transpose());
  PipelineResult r = SolveBimatrixViaHedge(
      game, 0.05, LearningRateSchedule::Make(ScheduleForm::kPower, 1.0, 0.5), 20000);
  if (r.success) {
    ASSERT_TRUE(r.pair.has_value());
    EXPECT_LE(BimatrixRegret(game, r.pair->p, r.pair->q), 0.05);
  } else {
    EXPECT_FALSE(r.pair.has_value());
    EXPECT_GT(r.best_regret, 0.0);
  }
}

TEST(PipelineTest, NeverFabricatesPairs) {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    Rng rng = StreamRng(seed, 48);
    BimatrixGame game = RandomGame(2, 2, rng);
    PipelineResult r = SolveBimatrixViaHedge(
        game, 0.05, LearningRateSchedule::Make(ScheduleForm::kPower, 1.0, 0.5), 20000);
    if (r.success) {
      ASSERT_TRUE(r.pair.has_value());
      EXPECT_LE(BimatrixRegret(game, r.pair->p, r.pair->q), 0.05);
    } else {
      EXPECT_FALSE(r.pair.has_value());
      EXPECT_FALSE(r.failure.empty());
    }
  }
}

}  // namespace
}  // namespace deploylab
