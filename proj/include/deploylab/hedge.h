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

#ifndef DEPLOYLAB_HEDGE_H_
#define DEPLOYLAB_HEDGE_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "deploylab/game.h"

namespace deploylab {

enum class ScheduleForm { kConstant, kHarmonic, kPower };

std::string ScheduleFormName(ScheduleForm form);
ScheduleForm ParseScheduleForm(const std::string& name);

// alpha_k = c (constant), c / (k + 1) (harmonic), c / (k + 1)^e (power).
class LearningRateSchedule {
 public:
  // Throws if c <= 0 or, for the power form, e is outside (0, 1].
  static LearningRateSchedule Make(ScheduleForm form, double c,
                                   double exponent = 1.0);

  ScheduleForm form() const { return form_; }
  double c() const { return c_; }
  double exponent() const { return exponent_; }

  double Rate(int64_t k) const;
  bool VanishingRates() const { return form_ != ScheduleForm::kConstant; }
  bool DivergentSum() const { return true; }
  // alpha_k -> 0 and sum alpha_k = infinity.
  bool SatisfiesConvergenceConditions() const {
    return VanishingRates() && DivergentSum();
  }

 private:
  LearningRateSchedule(ScheduleForm form, double c, double exponent)
      : form_(form), c_(c), exponent_(exponent) {}

  ScheduleForm form_;
  double c_;
  double exponent_;
};

// One Hedge step, computed with the exponents shifted by their maximum.
// Positive weights that underflow are floored at the smallest normal double
// so an interior point stays interior.
MixedStrategy HedgeStep(const PayoffOperator& op, const MixedStrategy& x,
                        double alpha);

// Sum over carrier(p) of p_i ln(p_i / q_i). Throws unless
// carrier(p) is contained in carrier(q).
double RelativeEntropy(const MixedStrategy& p, const MixedStrategy& q);

// Pure, or payoffs equal within tol on the carrier.
bool IsFixedPoint(const PayoffOperator& op, const MixedStrategy& x,
                  double tol = kEquilibriumTol);

enum class StopReason { kMaxIters, kFixedPoint, kConverged };

std::string StopReasonName(StopReason reason);

struct HedgeOptions {
  int64_t max_iters = 1'000'000;
  std::optional<MixedStrategy> reference;
  // Stop once RE(reference, X_k) < stop_re.
  std::optional<double> stop_re;
  // Stop once the symmetric regret of X_k is at most stop_regret. Checked
  // every regret_check_every iterations.
  std::optional<double> stop_regret;
  int64_t regret_check_every = 16;
  // Store every k-th iterate; the first and last are always stored.
  int64_t record_every = 1;
  // A step whose displacement (infinity norm) is below this threshold ends
  // the run when the point also passes IsFixedPoint.
  double fixed_point_threshold = 1e-14;
  double fixed_point_tol = kEquilibriumTol;
};

struct HedgeTrace {
  // Recorded iterates with their iteration indices. rates[t] is the rate
  // applied to iterates[t]; payoffs[t] is X.CX at iterates[t].
  std::vector<int64_t> indices;
  std::vector<MixedStrategy> iterates;
  std::vector<double> rates;
  std::vector<double> payoffs;
  std::vector<double> re_to_reference;
  StopReason stop_reason = StopReason::kMaxIters;
  // Number of steps taken. The run visited iterations 0..iterations.
  int64_t iterations = 0;
  // Sums over every visited iterate, recorded or not.
  Vector iterate_sum;
  Vector weighted_sum;
  double weight_total = 0.0;

  const MixedStrategy& last() const { return iterates.back(); }
  int64_t visited() const { return iterations + 1; }
};

// Iterates the Hedge map from x0. x0 must be interior.
HedgeTrace RunHedge(const PayoffOperator& op, const MixedStrategy& x0,
                    const LearningRateSchedule& schedule,
                    const HedgeOptions& options = {});

struct AverageWindow {
  enum class Kind { kAll, kTail, kRateWeighted };
  Kind kind = Kind::kAll;
  int64_t tail = 0;

  static AverageWindow All() { return {Kind::kAll, 0}; }
  static AverageWindow Tail(int64_t k) { return {Kind::kTail, k}; }
  // Iterates weighted by their learning rates. Not an arithmetic mean; kept
  // as a diagnostic.
  static AverageWindow RateWeighted() { return {Kind::kRateWeighted, 0}; }
};

// kAll is the arithmetic mean of every visited iterate. kTail averages the
// last k recorded iterates.
MixedStrategy AverageIterates(const HedgeTrace& trace, AverageWindow window);

// Affine map of a bounded matrix into [0, 1]: (C - shift) * scale.
struct UnitRescale {
  Matrix c;
  double shift = 0.0;
  double scale = 1.0;
};
UnitRescale RescaleToUnit(const Matrix& c);

struct ConvexityReport {
  std::vector<double> alphas;
  std::vector<double> re_values;
  std::vector<double> second_differences;
  double min_second_difference = 0.0;
  bool convex = false;
  bool strictly_convex = false;
  bool secant_checked = false;
  // Bound minus value at each alpha; nonnegative when the bound holds.
  std::vector<double> secant_slack;
  bool secant_holds = false;
  double c_bar = 0.0;
  double derivative_at_zero = 0.0;
  double derivative_formula = 0.0;
};

// Studies alpha -> RE(y, T_alpha(x)). alphas must be sorted and positive.
// The secant bound needs a unit-bounded operator; check_secant on an
// unbounded operator throws.
ConvexityReport CheckConvexityBounds(const PayoffOperator& op,
                                     const MixedStrategy& x,
                                     const MixedStrategy& y,
                                     const std::vector<double>& alphas,
                                     bool check_secant = true);

// Columns: iter, alpha, payoff, re_to_reference, x_0..x_{n-1}.
void WriteTraceCsv(const HedgeTrace& trace, std::ostream& out);

}  // namespace deploylab

#endif  // DEPLOYLAB_HEDGE_H_
