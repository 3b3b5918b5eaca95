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

#include "deploylab/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace deploylab {

MixedStrategy::MixedStrategy(Vector weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) {
    throw std::invalid_argument("mixed strategy must be nonempty");
  }
  for (int i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0)) {
      throw std::invalid_argument("mixed strategy weight " + std::to_string(i) +
                                  " is negative or NaN");
    }
  }
  if (std::abs(weights_.sum() - 1.0) > kSimplexTol) {
    throw std::invalid_argument("mixed strategy weights do not sum to 1");
  }
}

MixedStrategy::MixedStrategy(std::initializer_list<double> weights)
    : MixedStrategy(Vector(Eigen::Map<const Vector>(
          weights.begin(), static_cast<Eigen::Index>(weights.size())))) {}

MixedStrategy MixedStrategy::Uniform(int n) {
  if (n <= 0) throw std::invalid_argument("dimension must be positive");
  return MixedStrategy(Vector::Constant(n, 1.0 / n));
}

MixedStrategy MixedStrategy::Pure(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("pure index out of range");
  Vector w = Vector::Zero(n);
  w[i] = 1.0;
  return MixedStrategy(std::move(w));
}

MixedStrategy MixedStrategy::Normalized(const Vector& weights) {
  Vector w = weights.cwiseMax(0.0);
  double total = w.sum();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::invalid_argument("cannot normalize a vector without mass");
  }
  w /= total;
  return MixedStrategy(std::move(w));
}

bool MixedStrategy::IsInterior(double tol) const {
  return (weights_.array() > tol).all();
}

bool MixedStrategy::IsPure(double tol) const {
  int supported = 0;
  for (int i = 0; i < size(); ++i) supported += weights_[i] > tol;
  return supported == 1;
}

std::vector<int> Carrier(const MixedStrategy& x, double tol) {
  std::vector<int> out;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] > tol) out.push_back(i);
  }
  return out;
}

PayoffOperator PayoffOperator::Linear(Matrix c) {
  if (c.rows() != c.cols() || c.rows() == 0) {
    throw std::invalid_argument("payoff matrix must be square and nonempty");
  }
  PayoffOperator op;
  op.linear_ = true;
  op.dimension_ = static_cast<int>(c.rows());
  op.c_ = std::move(c);
  return op;
}

PayoffOperator PayoffOperator::Nonlinear(int dimension, Callback f,
                                         std::optional<Bounds> bounds) {
  if (dimension <= 0) throw std::invalid_argument("dimension must be positive");
  if (!f) throw std::invalid_argument("nonlinear operator needs a callback");
  if (bounds && bounds->first > bounds->second) {
    throw std::invalid_argument("empty payoff bounds");
  }
  PayoffOperator op;
  op.linear_ = false;
  op.dimension_ = dimension;
  op.f_ = std::move(f);
  op.bounds_ = bounds;
  return op;
}

const Matrix& PayoffOperator::matrix() const {
  if (!linear_) throw std::logic_error("nonlinear operator has no matrix");
  return c_;
}

bool PayoffOperator::IsUnitBounded() const {
  if (linear_) return c_.minCoeff() >= 0.0 && c_.maxCoeff() <= 1.0;
  return bounds_ && bounds_->first >= 0.0 && bounds_->second <= 1.0;
}

Vector PayoffOperator::Apply(const Vector& x) const {
  if (x.size() != dimension_) {
    throw std::invalid_argument("strategy dimension " +
                                std::to_string(x.size()) +
                                " does not match operator dimension " +
                                std::to_string(dimension_));
  }
  if (linear_) return c_ * x;
  Vector out = f_(x);
  if (out.size() != dimension_) {
    throw std::invalid_argument("payoff callback returned wrong arity");
  }
  if (bounds_) {
    for (int i = 0; i < dimension_; ++i) {
      if (!(out[i] >= bounds_->first && out[i] <= bounds_->second)) {
        throw std::domain_error("payoff callback left its declared bounds");
      }
    }
  }
  return out;
}

PayoffOperator PayoffOperator::Negated() const {
  if (linear_) return Linear(-c_);
  Callback f = f_;
  std::optional<Bounds> bounds;
  if (bounds_) bounds = Bounds{-bounds_->second, -bounds_->first};
  return Nonlinear(
      dimension_, [f](const Vector& x) -> Vector { return -f(x); }, bounds);
}

Vector PayoffVector(const PayoffOperator& op, const MixedStrategy& x) {
  return op.Apply(x.weights());
}

std::vector<int> BestResponseSet(const PayoffOperator& op,
                                 const MixedStrategy& x, double tol) {
  Vector u = PayoffVector(op, x);
  double best = u.maxCoeff();
  std::vector<int> out;
  for (int i = 0; i < u.size(); ++i) {
    if (u[i] >= best - tol) out.push_back(i);
  }
  return out;
}

bool IsEqualizer(const PayoffOperator& op, const MixedStrategy& x,
                 double tol) {
  Vector u = PayoffVector(op, x);
  return u.maxCoeff() - u.minCoeff() <= tol;
}

BimatrixGame::BimatrixGame(Matrix a, Matrix b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != b_.rows() || a_.cols() != b_.cols()) {
    throw std::invalid_argument("payoff matrices differ in shape");
  }
  if (a_.size() == 0) throw std::invalid_argument("empty bimatrix game");
}

BimatrixGame BimatrixGame::Symmetric(const Matrix& c) {
  if (c.rows() != c.cols()) {
    throw std::invalid_argument("symmetric game needs a square matrix");
  }
  return BimatrixGame(c, c.transpose());
}

namespace {

void CheckPair(const BimatrixGame& game, const MixedStrategy& p,
               const MixedStrategy& q) {
  if (p.size() != game.rows() || q.size() != game.cols()) {
    throw std::invalid_argument("profile does not match game dimensions");
  }
}

double SupportShortfall(const Vector& u, const MixedStrategy& x) {
  double best = u.maxCoeff();
  double gap = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) gap = std::max(gap, best - u[i]);
  }
  return gap;
}

}  // namespace

double SymmetricRegret(const PayoffOperator& op, const MixedStrategy& y) {
  Vector u = PayoffVector(op, y);
  return u.maxCoeff() - y.weights().dot(u);
}

double SymmetricWellSupportedGap(const PayoffOperator& op,
                                 const MixedStrategy& y) {
  return SupportShortfall(PayoffVector(op, y), y);
}

double BimatrixRegret(const BimatrixGame& game, const MixedStrategy& p,
                      const MixedStrategy& q) {
  CheckPair(game, p, q);
  Vector row = game.A() * q.weights();
  Vector col = game.B().transpose() * p.weights();
  return std::max(row.maxCoeff() - p.weights().dot(row),
                  col.maxCoeff() - q.weights().dot(col));
}

double WellSupportedGap(const BimatrixGame& game, const MixedStrategy& p,
                        const MixedStrategy& q) {
  CheckPair(game, p, q);
  return std::max(SupportShortfall(game.A() * q.weights(), p),
                  SupportShortfall(game.B().transpose() * p.weights(), q));
}

bool IsApproxEquilibrium(const PayoffOperator& op, const MixedStrategy& y,
                         double eps, EquilibriumMode mode) {
  if (eps < 0.0) throw std::invalid_argument("eps must be nonnegative");
  switch (mode) {
    case EquilibriumMode::kSymmetric:
      return SymmetricRegret(op, y) <= eps;
    case EquilibriumMode::kWellSupported:
      return SymmetricWellSupportedGap(op, y) <= eps;
    case EquilibriumMode::kBimatrix:
      break;
  }
  throw std::invalid_argument("bimatrix mode needs a strategy pair");
}

bool IsApproxEquilibrium(const BimatrixGame& game, const MixedStrategy& p,
                         const MixedStrategy& q, double eps,
                         EquilibriumMode mode) {
  if (eps < 0.0) throw std::invalid_argument("eps must be nonnegative");
  switch (mode) {
    case EquilibriumMode::kBimatrix:
      return BimatrixRegret(game, p, q) <= eps;
    case EquilibriumMode::kWellSupported:
      return WellSupportedGap(game, p, q) <= eps;
    case EquilibriumMode::kSymmetric:
      break;
  }
  if (game.rows() != game.cols() || game.B() != game.A().transpose() ||
      p.weights() != q.weights()) {
    throw std::invalid_argument(
        "symmetric mode needs a symmetric game and a single strategy");
  }
  return IsApproxEquilibrium(PayoffOperator::Linear(game.A()), p, eps);
}

StrategicGame::StrategicGame(std::vector<int> strategy_counts,
                             std::vector<double> payoffs)
    : counts_(std::move(strategy_counts)), payoffs_(std::move(payoffs)) {
  if (counts_.empty()) throw std::invalid_argument("game needs a player");
  strides_.assign(counts_.size(), 1);
  for (int i = num_players() - 1; i >= 0; --i) {
    if (counts_[i] <= 0) {
      throw std::invalid_argument("every player needs a strategy");
    }
    strides_[i] = num_profiles_;
    if (num_profiles_ > kMaxProfiles / counts_[i]) {
      throw std::length_error("profile space exceeds the dense cap");
    }
    num_profiles_ *= counts_[i];
  }
  if (static_cast<int64_t>(payoffs_.size()) != num_profiles_ * num_players()) {
    throw std::invalid_argument(
        "payoff table must hold one payoff per player per profile");
  }
}

StrategicGame StrategicGame::FromBimatrix(const BimatrixGame& game) {
  std::vector<double> payoffs;
  payoffs.reserve(2 * game.A().size());
  for (int i = 0; i < game.rows(); ++i) {
    for (int j = 0; j < game.cols(); ++j) {
      payoffs.push_back(game.A()(i, j));
      payoffs.push_back(game.B()(i, j));
    }
  }
  return StrategicGame({game.rows(), game.cols()}, std::move(payoffs));
}

int64_t StrategicGame::Encode(const PureProfile& profile) const {
  if (static_cast<int>(profile.size()) != num_players()) {
    throw std::invalid_argument("profile arity mismatch");
  }
  int64_t index = 0;
  for (int i = 0; i < num_players(); ++i) {
    if (profile[i] < 0 || profile[i] >= counts_[i]) {
      throw std::invalid_argument("strategy index out of range");
    }
    index += profile[i] * strides_[i];
  }
  return index;
}

PureProfile StrategicGame::Decode(int64_t profile) const {
  if (profile < 0 || profile >= num_profiles_) {
    throw std::invalid_argument("profile index out of range");
  }
  PureProfile out(counts_.size());
  for (int i = 0; i < num_players(); ++i) out[i] = StrategyOf(profile, i);
  return out;
}

StrategicGame ReducedGame(const StrategicGame& game,
                          const std::vector<int>& coalition,
                          const PureProfile& anchor) {
  int n = game.num_players();
  if (coalition.empty() || static_cast<int>(coalition.size()) >= n) {
    throw std::invalid_argument("coalition must be a nonempty proper subset");
  }
  std::vector<bool> member(n, false);
  for (int j : coalition) {
    if (j < 0 || j >= n || member[j]) {
      throw std::invalid_argument("invalid coalition member");
    }
    member[j] = true;
  }
  int64_t base = game.Encode(anchor);
  std::vector<int> counts;
  for (int j : coalition) counts.push_back(game.strategy_counts()[j]);

  int64_t total = 1;
  for (int c : counts) total *= c;
  int k = static_cast<int>(coalition.size());
  std::vector<double> payoffs;
  payoffs.reserve(total * k);
  PureProfile sub(k, 0);
  for (int64_t index = 0; index < total; ++index) {
    int64_t rest = index;
    for (int t = k - 1; t >= 0; --t) {
      sub[t] = static_cast<int>(rest % counts[t]);
      rest /= counts[t];
    }
    int64_t full = base;
    for (int t = 0; t < k; ++t) full = game.Deviate(full, coalition[t], sub[t]);
    for (int t = 0; t < k; ++t) payoffs.push_back(game.Payoff(full, coalition[t]));
  }
  return StrategicGame(std::move(counts), std::move(payoffs));
}

}  // namespace deploylab
