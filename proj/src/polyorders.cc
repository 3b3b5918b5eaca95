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

#include "deploylab/polyorders.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "deploylab/random.h"

namespace deploylab {
namespace {

constexpr double kSamePointTol = 1e-12;
// Fractions of the admissible step used for local sampling along each ray.
constexpr double kLocalFractions[] = {1.0, 0.25, 1.0 / 16.0};

bool SamePoint(const MixedStrategy& a, const MixedStrategy& b) {
  return (a.weights() - b.weights()).cwiseAbs().maxCoeff() <= kSamePointTol;
}

bool IsLocal(StabilityConcept kind) {
  return kind == StabilityConcept::kESS || kind == StabilityConcept::kNSS;
}

bool IsStrict(StabilityConcept kind) {
  return kind == StabilityConcept::kESS || kind == StabilityConcept::kGESS;
}

// Largest d with C(d + n - 1, n - 1) <= limit, at least 1.
int LatticeDenominator(int n, int limit) {
  auto count = [n](int d) {
    double c = 1.0;
    for (int i = 1; i < n; ++i) c = c * (d + i) / i;
    return c;
  };
  int d = 1;
  while (count(d + 1) <= limit) ++d;
  return d;
}

void EnumerateLattice(int n, int d, std::vector<MixedStrategy>* out) {
  std::vector<int> parts(n, 0);
  // Recursive composition enumeration on an explicit stack.
  std::vector<int> remaining(n + 1, 0);
  int i = 0;
  remaining[0] = d;
  parts[0] = -1;
  while (i >= 0) {
    if (i == n - 1) {
      parts[i] = remaining[i];
      Vector w(n);
      for (int k = 0; k < n; ++k) w[k] = static_cast<double>(parts[k]) / d;
      out->push_back(MixedStrategy::Normalized(w));
      --i;
      continue;
    }
    if (parts[i] < remaining[i]) {
      ++parts[i];
      remaining[i + 1] = remaining[i] - parts[i];
      ++i;
      parts[i] = -1;
    } else {
      --i;
    }
  }
}

}  // namespace

SegmentGrid::SegmentGrid(std::vector<double> epsilons)
    : epsilons_(std::move(epsilons)) {
  if (epsilons_.size() < 2 || epsilons_.front() != 0.0 ||
      epsilons_.back() != 1.0) {
    throw std::invalid_argument("segment grid must contain 0 and 1");
  }
  for (size_t i = 1; i < epsilons_.size(); ++i) {
    if (!(epsilons_[i] > epsilons_[i - 1])) {
      throw std::invalid_argument("segment grid must be strictly increasing");
    }
  }
}

SegmentGrid SegmentGrid::Uniform(int count) {
  if (count < 2) throw std::invalid_argument("grid needs at least 2 points");
  std::vector<double> e(count);
  for (int i = 0; i < count; ++i) e[i] = static_cast<double>(i) / (count - 1);
  e.back() = 1.0;
  return SegmentGrid(std::move(e));
}

std::vector<MixedStrategy> SampleSimplex(int n, const SampleBudget& budget) {
  if (budget.simplex_samples < 1) {
    throw std::invalid_argument("sample budget must be at least 1");
  }
  std::vector<MixedStrategy> out;
  int total = budget.simplex_samples;
  switch (budget.scheme) {
    case SamplingScheme::kGrid:
      EnumerateLattice(n, LatticeDenominator(n, total), &out);
      return out;
    case SamplingScheme::kVerticesPlusRandom:
      for (int i = 0; i < n && i < total; ++i) {
        out.push_back(MixedStrategy::Pure(n, i));
      }
      break;
    case SamplingScheme::kUniformDirichlet:
      break;
  }
  for (int i = static_cast<int>(out.size()); i < total; ++i) {
    Rng rng = StreamRng(budget.seed, i);
    out.push_back(SampleSimplexUniform(n, rng));
  }
  return out;
}

std::string VerdictStatusName(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::kConfirmedOnSamples:
      return "confirmed-on-samples";
    case VerdictStatus::kFalsified:
      return "falsified";
    case VerdictStatus::kExact:
      return "exact";
  }
  return "unknown";
}

std::string StabilityConceptName(StabilityConcept kind) {
  switch (kind) {
    case StabilityConcept::kESS:
      return "ESS";
    case StabilityConcept::kNSS:
      return "NSS";
    case StabilityConcept::kGESS:
      return "GESS";
    case StabilityConcept::kGNSS:
      return "GNSS";
    case StabilityConcept::kEDS:
      return "EDS";
  }
  return "unknown";
}

RelationResult EvaluateRelation(const PayoffOperator& op,
                                const MixedStrategy& x, const MixedStrategy& y,
                                const SegmentGrid& grid, PolyorderKind kind,
                                double tol) {
  if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
  Vector diff = x.weights() - y.weights();
  for (double e : grid.epsilons()) {
    Vector ye = e * y.weights() + (1.0 - e) * x.weights();
    double d = diff.dot(op.Apply(ye));
    bool ok = kind == PolyorderKind::kStrict ? d > tol : d >= -tol;
    if (!ok) return {false, e};
  }
  return {true, std::nullopt};
}

double SuperiorityGap(const PayoffOperator& op, const MixedStrategy& x_star,
                      const MixedStrategy& x) {
  return (x_star.weights() - x.weights()).dot(PayoffVector(op, x));
}

StabilityVerdict CheckStability(const PayoffOperator& op,
                                const MixedStrategy& x_star,
                                StabilityConcept kind,
                                const SampleBudget& budget,
                                std::optional<double> neighborhood_radius,
                                double tol) {
  if (x_star.size() != op.dimension()) {
    throw std::invalid_argument("dimension mismatch");
  }
  if (IsLocal(kind) && !(neighborhood_radius && *neighborhood_radius > 0.0)) {
    throw std::invalid_argument(StabilityConceptName(kind) +
                                " needs a positive neighborhood radius");
  }
  StabilityVerdict verdict;
  verdict.worst_gap = std::numeric_limits<double>::infinity();

  if (kind == StabilityConcept::kEDS) {
    double regret = SymmetricRegret(op, x_star);
    if (regret > kEquilibriumTol) {
      std::vector<int> br = BestResponseSet(op, x_star);
      verdict.status = VerdictStatus::kFalsified;
      verdict.witness = MixedStrategy::Pure(x_star.size(), br.front());
      verdict.worst_gap = -regret;
      return verdict;
    }
  }

  auto test = [&](const MixedStrategy& x) {
    if (SamePoint(x, x_star)) return true;
    ++verdict.samples_used;
    double gap = SuperiorityGap(op, x_star, x);
    verdict.worst_gap = std::min(verdict.worst_gap, gap);
    bool ok;
    if (IsStrict(kind)) {
      ok = gap > tol;
    } else if (kind == StabilityConcept::kEDS) {
      ok = gap > tol ||
           (gap >= -tol && IsApproxEquilibrium(op, x, kEquilibriumTol));
    } else {
      ok = gap >= -tol;
    }
    if (!ok) {
      verdict.status = VerdictStatus::kFalsified;
      verdict.witness = x;
      verdict.worst_gap = gap;
    }
    return ok;
  };

  for (const MixedStrategy& z : SampleSimplex(x_star.size(), budget)) {
    if (!IsLocal(kind)) {
      if (!test(z)) return verdict;
      continue;
    }
    Vector d = z.weights() - x_star.weights();
    double norm = d.norm();
    if (norm <= kSamePointTol) continue;
    double t = std::min(1.0, *neighborhood_radius / norm);
    for (double f : kLocalFractions) {
      if (!test(MixedStrategy::Normalized(x_star.weights() + f * t * d))) {
        return verdict;
      }
    }
  }
  if (verdict.samples_used == 0) verdict.worst_gap = 0.0;
  return verdict;
}

StabilityVerdict ExactTwoStrategyStability(
    const Matrix& c, const MixedStrategy& x_star, StabilityConcept kind,
    std::optional<double> neighborhood_radius, double tol) {
  if (c.rows() != 2 || c.cols() != 2 || x_star.size() != 2) {
    throw std::invalid_argument("exact analysis needs a 2 x 2 game");
  }
  if (IsLocal(kind) && !(neighborhood_radius && *neighborhood_radius > 0.0)) {
    throw std::invalid_argument(StabilityConceptName(kind) +
                                " needs a positive neighborhood radius");
  }
  PayoffOperator op = PayoffOperator::Linear(c);
  // With X = (t, 1 - t): gap(t) = (s - t) g(t), g linear.
  double s = x_star[0];
  auto g = [&](double t) {
    return (c(0, 0) - c(1, 0)) * t + (c(0, 1) - c(1, 1)) * (1.0 - t);
  };
  double lo = 0.0;
  double hi = 1.0;
  if (IsLocal(kind)) {
    double reach = *neighborhood_radius / std::sqrt(2.0);
    lo = std::max(0.0, s - reach);
    hi = std::min(1.0, s + reach);
  }

  bool holds = true;
  if (IsStrict(kind)) {
    // g > 0 on [lo, s) and g < 0 on (s, hi].
    if (lo < s) holds = holds && g(lo) > tol && g(s) >= -tol;
    if (hi > s) holds = holds && g(hi) < -tol && g(s) <= tol;
  } else {
    if (lo < s) holds = holds && g(lo) >= -tol && g(s) >= -tol;
    if (hi > s) holds = holds && g(hi) <= tol && g(s) <= tol;
    if (kind == StabilityConcept::kEDS) {
      holds = holds && SymmetricRegret(op, x_star) <= kEquilibriumTol;
    }
  }

  StabilityVerdict verdict;
  if (holds) {
    verdict.status = VerdictStatus::kExact;
    verdict.worst_gap = 0.0;
    return verdict;
  }
  verdict.status = VerdictStatus::kFalsified;
  if (kind == StabilityConcept::kEDS &&
      SymmetricRegret(op, x_star) > kEquilibriumTol) {
    verdict.witness = MixedStrategy::Pure(2, BestResponseSet(op, x_star)[0]);
    verdict.worst_gap = -SymmetricRegret(op, x_star);
    return verdict;
  }
  // Witness: the worst point of a dense scan of the admissible interval.
  constexpr int kScan = 2001;
  double best_gap = std::numeric_limits<double>::infinity();
  double best_t = lo;
  for (int i = 0; i < kScan; ++i) {
    double t = lo + (hi - lo) * i / (kScan - 1);
    if (std::abs(t - s) <= kSamePointTol) continue;
    double gap = (s - t) * g(t);
    if (gap < best_gap) {
      best_gap = gap;
      best_t = t;
    }
  }
  verdict.witness = MixedStrategy::Normalized(Vector{{best_t, 1.0 - best_t}});
  verdict.worst_gap = best_gap;
  return verdict;
}

StabilityVerdict CheckVariational(const PayoffOperator& op,
                                  const MixedStrategy& x_star,
                                  VariationalKind kind,
                                  const SampleBudget& budget, double tol) {
  int n = op.dimension();
  std::vector<MixedStrategy> samples = SampleSimplex(n, budget);
  StabilityVerdict verdict;
  verdict.worst_gap = std::numeric_limits<double>::infinity();

  auto note = [&](double gap, const MixedStrategy& x,
                  const MixedStrategy* partner) {
    ++verdict.samples_used;
    verdict.worst_gap = std::min(verdict.worst_gap, gap);
    if (gap >= -tol) return true;
    verdict.status = VerdictStatus::kFalsified;
    verdict.witness = x;
    if (partner) verdict.partner = *partner;
    verdict.worst_gap = gap;
    return false;
  };

  if (kind == VariationalKind::kMonotone) {
    std::vector<Vector> f;
    f.reserve(samples.size());
    for (const MixedStrategy& x : samples) f.push_back(PayoffVector(op, x));
    auto pair_gap = [&](size_t i, size_t j) {
      return (samples[i].weights() - samples[j].weights()).dot(f[j] - f[i]);
    };
    // All pairs among a leading block, then consecutive pairs.
    size_t block = std::min<size_t>(samples.size(), 64);
    for (size_t i = 0; i < block; ++i) {
      for (size_t j = i + 1; j < block; ++j) {
        if (!note(pair_gap(i, j), samples[i], &samples[j])) return verdict;
      }
    }
    for (size_t i = block; i + 1 < samples.size(); ++i) {
      if (!note(pair_gap(i, i + 1), samples[i], &samples[i + 1])) {
        return verdict;
      }
    }
  } else {
    if (x_star.size() != n) throw std::invalid_argument("dimension mismatch");
    Vector f_star = PayoffVector(op, x_star);
    for (const MixedStrategy& x : samples) {
      Vector f = kind == VariationalKind::kCritical ? f_star : PayoffVector(op, x);
      if (!note((x_star.weights() - x.weights()).dot(f), x, nullptr)) {
        return verdict;
      }
    }
  }
  if (verdict.samples_used == 0) verdict.worst_gap = 0.0;
  return verdict;
}

StabilityVerdict DriftingMaximalityFalsifier(const PayoffOperator& op,
                                             const MixedStrategy& x_star,
                                             const SampleBudget& budget,
                                             const SegmentGrid& grid,
                                             double tol) {
  if (x_star.size() != op.dimension()) {
    throw std::invalid_argument("dimension mismatch");
  }
  StabilityVerdict verdict;
  verdict.worst_gap = std::numeric_limits<double>::infinity();
  for (const MixedStrategy& x : SampleSimplex(x_star.size(), budget)) {
    if (SamePoint(x, x_star)) continue;
    ++verdict.samples_used;
    Vector diff = x_star.weights() - x.weights();
    bool all_nonnegative = true;
    bool some_positive = false;
    double worst = std::numeric_limits<double>::infinity();
    double worst_e = 0.0;
    for (double e : grid.epsilons()) {
      Vector xe = e * x.weights() + (1.0 - e) * x_star.weights();
      double g = diff.dot(op.Apply(xe));
      if (g < -tol) all_nonnegative = false;
      if (g > tol) some_positive = true;
      if (g < worst) {
        worst = g;
        worst_e = e;
      }
    }
    verdict.worst_gap = std::min(verdict.worst_gap, worst);
    if (!all_nonnegative && !some_positive) {
      verdict.status = VerdictStatus::kFalsified;
      verdict.witness = x;
      verdict.worst_gap = worst;
      verdict.epsilon = worst_e;
      return verdict;
    }
  }
  if (verdict.samples_used == 0) verdict.worst_gap = 0.0;
  return verdict;
}

}  // namespace deploylab
