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

#ifndef DEPLOYLAB_GAME_H_
#define DEPLOYLAB_GAME_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace deploylab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kSimplexTol = 1e-12;
inline constexpr double kEquilibriumTol = 1e-9;

// A probability vector over a finite set of pure strategies.
class MixedStrategy {
 public:
  // Throws std::invalid_argument if a weight is negative or the weights do
  // not sum to one within kSimplexTol.
  explicit MixedStrategy(Vector weights);
  MixedStrategy(std::initializer_list<double> weights);

  static MixedStrategy Uniform(int n);
  static MixedStrategy Pure(int n, int i);

  // Clips tiny negative entries and rescales. Used on numerically computed
  // vectors that are simplex elements up to round-off.
  static MixedStrategy Normalized(const Vector& weights);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[i]; }
  const Vector& weights() const { return weights_; }

  bool IsInterior(double tol = 0.0) const;
  bool IsPure(double tol = 0.0) const;

 private:
  Vector weights_;
};

// Indices i with x(i) > tol.
std::vector<int> Carrier(const MixedStrategy& x, double tol = 0.0);

// Evaluates X -> CX. Either an n x n matrix or a user callback.
class PayoffOperator {
 public:
  using Callback = std::function<Vector(const Vector&)>;
  using Bounds = std::pair<double, double>;

  static PayoffOperator Linear(Matrix c);
  static PayoffOperator Nonlinear(int dimension, Callback f,
                                  std::optional<Bounds> bounds = std::nullopt);

  bool is_linear() const { return linear_; }
  int dimension() const { return dimension_; }
  // Throws for nonlinear operators.
  const Matrix& matrix() const;
  const std::optional<Bounds>& bounds() const { return bounds_; }

  // True when every payoff coordinate is known to lie in [0, 1]: declared
  // bounds within [0, 1], or a matrix with all entries in [0, 1].
  bool IsUnitBounded() const;

  Vector Apply(const Vector& x) const;
  PayoffOperator Negated() const;

 private:
  PayoffOperator() = default;

  bool linear_ = true;
  int dimension_ = 0;
  Matrix c_;
  Callback f_;
  std::optional<Bounds> bounds_;
};

Vector PayoffVector(const PayoffOperator& op, const MixedStrategy& x);

// Indices i with (Cx)_i >= max_j (Cx)_j - tol.
std::vector<int> BestResponseSet(const PayoffOperator& op,
                                 const MixedStrategy& x, double tol = 0.0);

bool IsEqualizer(const PayoffOperator& op, const MixedStrategy& x,
                 double tol = kEquilibriumTol);

// Row player receives A(i, j), column player B(i, j).
class BimatrixGame {
 public:
  BimatrixGame(Matrix a, Matrix b);

  // The symmetric game (C, C^T).
  static BimatrixGame Symmetric(const Matrix& c);

  const Matrix& A() const { return a_; }
  const Matrix& B() const { return b_; }
  int rows() const { return static_cast<int>(a_.rows()); }
  int cols() const { return static_cast<int>(a_.cols()); }

 private:
  Matrix a_;
  Matrix b_;
};

enum class EquilibriumMode { kSymmetric, kBimatrix, kWellSupported };

// max_i (Cy)_i - y.Cy.
double SymmetricRegret(const PayoffOperator& op, const MixedStrategy& y);
// max_i (Cy)_i - min over carrier(y) of (Cy)_i.
double SymmetricWellSupportedGap(const PayoffOperator& op,
                                 const MixedStrategy& y);
// Larger of the two players' best deviation gains.
double BimatrixRegret(const BimatrixGame& game, const MixedStrategy& p,
                      const MixedStrategy& q);
// Largest shortfall of a supported pure strategy against the best pure payoff.
double WellSupportedGap(const BimatrixGame& game, const MixedStrategy& p,
                        const MixedStrategy& q);

// Symmetric mode for (C, C^T): y.Cy >= (Cy)_i - eps for every i. With
// kWellSupported the carrier test is applied instead.
bool IsApproxEquilibrium(const PayoffOperator& op, const MixedStrategy& y,
                         double eps,
                         EquilibriumMode mode = EquilibriumMode::kSymmetric);

// Pair form. kSymmetric requires a square game with B = A^T and p = q.
bool IsApproxEquilibrium(const BimatrixGame& game, const MixedStrategy& p,
                         const MixedStrategy& q, double eps,
                         EquilibriumMode mode = EquilibriumMode::kBimatrix);

using PureProfile = std::vector<int>;

// Dense N-player game. Profiles are mixed-radix integers with player 0 the
// most significant digit; payoffs are stored profile-major.
class StrategicGame {
 public:
  static constexpr int64_t kMaxProfiles = int64_t{1} << 26;

  StrategicGame(std::vector<int> strategy_counts, std::vector<double> payoffs);

  static StrategicGame FromBimatrix(const BimatrixGame& game);

  int num_players() const { return static_cast<int>(counts_.size()); }
  const std::vector<int>& strategy_counts() const { return counts_; }
  int64_t num_profiles() const { return num_profiles_; }
  int64_t stride(int player) const { return strides_[player]; }
  const std::vector<double>& payoffs() const { return payoffs_; }

  int64_t Encode(const PureProfile& profile) const;
  PureProfile Decode(int64_t profile) const;
  int StrategyOf(int64_t profile, int player) const {
    return static_cast<int>((profile / strides_[player]) % counts_[player]);
  }
  int64_t Deviate(int64_t profile, int player, int strategy) const {
    return profile +
           (strategy - StrategyOf(profile, player)) * strides_[player];
  }
  double Payoff(int64_t profile, int player) const {
    return payoffs_[profile * num_players() + player];
  }
  double Payoff(const PureProfile& profile, int player) const {
    return Payoff(Encode(profile), player);
  }

 private:
  std::vector<int> counts_;
  std::vector<int64_t> strides_;
  int64_t num_profiles_ = 1;
  std::vector<double> payoffs_;
};

// Players outside the coalition are frozen at the anchor profile. Player
// order inside the coalition is preserved.
StrategicGame ReducedGame(const StrategicGame& game,
                          const std::vector<int>& coalition,
                          const PureProfile& anchor);

}  // namespace deploylab

#endif  // DEPLOYLAB_GAME_H_
