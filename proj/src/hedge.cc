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

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <stdexcept>
#include <utility>

namespace deploylab {

std::string ScheduleFormName(ScheduleForm form) {
  switch (form) {
    case ScheduleForm::kConstant:
      return "constant";
    case ScheduleForm::kHarmonic:
      return "harmonic";
    case ScheduleForm::kPower:
      return "power";
  }
  return "unknown";
}

ScheduleForm ParseScheduleForm(const std::string& name) {
  if (name == "constant") return ScheduleForm::kConstant;
  if (name == "harmonic") return ScheduleForm::kHarmonic;
  if (name == "power") return ScheduleForm::kPower;
  throw std::invalid_argument("unknown schedule form: " + name);
}

LearningRateSchedule LearningRateSchedule::Make(ScheduleForm form, double c,
                                                double exponent) {
  if (!(c > 0.0)) throw std::invalid_argument("schedule constant must be > 0");
  if (form == ScheduleForm::kPower && !(exponent > 0.0 && exponent <= 1.0)) {
    throw std::invalid_argument("power exponent must lie in (0, 1]");
  }
  if (form == ScheduleForm::kHarmonic) exponent = 1.0;
  if (form == ScheduleForm::kConstant) exponent = 0.0;
  return LearningRateSchedule(form, c, exponent);
}

double LearningRateSchedule::Rate(int64_t k) const {
  switch (form_) {
    case ScheduleForm::kConstant:
      return c_;
    case ScheduleForm::kHarmonic:
      return c_ / static_cast<double>(k + 1);
    case ScheduleForm::kPower:
      return c_ / std::pow(static_cast<double>(k + 1), exponent_);
  }
  return c_;
}

MixedStrategy HedgeStep(const PayoffOperator& op, const MixedStrategy& x,
                        double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("learning rate must be >= 0");
  Vector u = PayoffVector(op, x);
  Vector e = alpha * u;
  double shift = e.maxCoeff();
  Vector w(x.size());
  for (int i = 0; i < x.size(); ++i) {
    w[i] = x[i] == 0.0 ? 0.0 : x[i] * std::exp(e[i] - shift);
  }
  w /= w.sum();
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && w[i] == 0.0) w[i] = std::numeric_limits<double>::min();
  }
  return MixedStrategy(std::move(w));
}

double RelativeEntropy(const MixedStrategy& p, const MixedStrategy& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("relative entropy of different dimensions");
  }
  double re = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      throw std::invalid_argument("carrier(p) is not contained in carrier(q)");
    }
    re += p[i] * (std::log(p[i]) - std::log(q[i]));
  }
  return std::max(re, 0.0);
}

bool IsFixedPoint(const PayoffOperator& op, const MixedStrategy& x,
                  double tol) {
  if (x.IsPure()) return true;
  Vector u = PayoffVector(op, x);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i : Carrier(x)) {
    lo = std::min(lo, u[i]);
    hi = std::max(hi, u[i]);
  }
  return hi - lo <= tol;
}

std::string StopReasonName(StopReason reason) {
  switch (reason) {
    case StopReason::kMaxIters:
      return "max-iters";
    case StopReason::kFixedPoint:
      return "fixed-point";
    case StopReason::kConverged:
      return "converged";
  }
  return "unknown";
}

HedgeTrace RunHedge(const PayoffOperator& op, const MixedStrategy& x0,
                    const LearningRateSchedule& schedule,
                    const HedgeOptions& options) {
  if (x0.size() != op.dimension()) {
    throw std::invalid_argument("start point dimension mismatch");
  }
  if (!x0.IsInterior()) {
    throw std::invalid_argument("Hedge must start in the simplex interior");
  }
  if (options.max_iters < 0 || options.record_every < 1 ||
      options.regret_check_every < 1) {
    throw std::invalid_argument("invalid Hedge options");
  }
  if (options.stop_re && !options.reference) {
    throw std::invalid_argument("stop_re needs a reference strategy");
  }
  if (options.reference && options.reference->size() != x0.size()) {
    throw std::invalid_argument("reference dimension mismatch");
  }

  HedgeTrace trace;
  trace.iterate_sum = Vector::Zero(x0.size());
  trace.weighted_sum = Vector::Zero(x0.size());

  auto record = [&](int64_t k, const MixedStrategy& x) {
    trace.indices.push_back(k);
    trace.iterates.push_back(x);
    trace.rates.push_back(schedule.Rate(k));
    trace.payoffs.push_back(x.weights().dot(PayoffVector(op, x)));
    if (options.reference) {
      trace.re_to_reference.push_back(RelativeEntropy(*options.reference, x));
    }
  };
  auto accumulate = [&](int64_t k, const MixedStrategy& x) {
    double alpha = schedule.Rate(k);
    trace.iterate_sum += x.weights();
    trace.weighted_sum += alpha * x.weights();
    trace.weight_total += alpha;
  };

  MixedStrategy x = x0;
  record(0, x);
  accumulate(0, x);
  bool recorded_last = true;
  for (int64_t k = 0; k < options.max_iters; ++k) {
    if (options.stop_re &&
        RelativeEntropy(*options.reference, x) < *options.stop_re) {
      trace.stop_reason = StopReason::kConverged;
      break;
    }
    if (options.stop_regret && k % options.regret_check_every == 0 &&
        SymmetricRegret(op, x) <= *options.stop_regret) {
      trace.stop_reason = StopReason::kConverged;
      break;
    }
    MixedStrategy next = HedgeStep(op, x, schedule.Rate(k));
    double moved = (next.weights() - x.weights()).cwiseAbs().maxCoeff();
    if (moved < options.fixed_point_threshold &&
        IsFixedPoint(op, x, options.fixed_point_tol)) {
      trace.stop_reason = StopReason::kFixedPoint;
      break;
    }
    x = std::move(next);
    trace.iterations = k + 1;
    accumulate(k + 1, x);
    recorded_last = (k + 1) % options.record_every == 0;
    if (recorded_last) record(k + 1, x);
  }
  if (!recorded_last) record(trace.iterations, x);
  if (trace.stop_reason == StopReason::kMaxIters && options.stop_re &&
      RelativeEntropy(*options.reference, x) < *options.stop_re) {
    trace.stop_reason = StopReason::kConverged;
  }
  return trace;
}

MixedStrategy AverageIterates(const HedgeTrace& trace, AverageWindow window) {
  if (trace.iterates.empty()) throw std::invalid_argument("empty trace");
  switch (window.kind) {
    case AverageWindow::Kind::kAll:
      return MixedStrategy::Normalized(trace.iterate_sum /
                                       static_cast<double>(trace.visited()));
    case AverageWindow::Kind::kRateWeighted:
      return MixedStrategy::Normalized(trace.weighted_sum / trace.weight_total);
    case AverageWindow::Kind::kTail: {
      int64_t stored = static_cast<int64_t>(trace.iterates.size());
      if (window.tail < 1) throw std::invalid_argument("empty window");
      int64_t k = std::min(window.tail, stored);
      Vector sum = Vector::Zero(trace.iterates.front().size());
      for (int64_t t = stored - k; t < stored; ++t) {
        sum += trace.iterates[t].weights();
      }
      return MixedStrategy::Normalized(sum / static_cast<double>(k));
    }
  }
  throw std::invalid_argument("unknown window");
}

UnitRescale RescaleToUnit(const Matrix& c) {
  UnitRescale out;
  double lo = c.minCoeff();
  double hi = c.maxCoeff();
  out.shift = lo;
  out.scale = hi > lo ? 1.0 / (hi - lo) : 1.0;
  out.c = (c.array() - lo).matrix() * out.scale;
  return out;
}

ConvexityReport CheckConvexityBounds(const PayoffOperator& op,
                                     const MixedStrategy& x,
                                     const MixedStrategy& y,
                                     const std::vector<double>& alphas,
                                     bool check_secant) {
  if (!x.IsInterior()) throw std::invalid_argument("x must be interior");
  for (size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0) || (i > 0 && alphas[i] <= alphas[i - 1])) {
      throw std::invalid_argument("alphas must be positive and increasing");
    }
  }
  if (check_secant && !op.IsUnitBounded()) {
    throw std::invalid_argument("secant bound needs payoffs in [0, 1]");
  }
  auto re_at = [&](double alpha) {
    return RelativeEntropy(y, HedgeStep(op, x, alpha));
  };

  ConvexityReport report;
  report.alphas = alphas;
  for (double a : alphas) report.re_values.push_back(re_at(a));

  report.min_second_difference = std::numeric_limits<double>::infinity();
  report.strictly_convex = alphas.size() >= 3;
  for (size_t i = 2; i < alphas.size(); ++i) {
    const double* a = &alphas[i - 2];
    const double* f = &report.re_values[i - 2];
    double d = ((f[2] - f[1]) / (a[2] - a[1]) - (f[1] - f[0]) / (a[1] - a[0])) /
               (a[2] - a[0]);
    report.second_differences.push_back(d);
    report.min_second_difference = std::min(report.min_second_difference, d);
    if (!(d > 0.0)) report.strictly_convex = false;
  }
  if (report.second_differences.empty()) report.min_second_difference = 0.0;
  report.convex = report.min_second_difference >= -1e-9;

  Vector u = PayoffVector(op, x);
  double re0 = RelativeEntropy(y, x);
  double drift = (y.weights() - x.weights()).dot(u);
  report.c_bar = x.weights().dot(u.cwiseProduct(u));
  if (check_secant) {
    report.secant_checked = true;
    report.secant_holds = true;
    for (size_t i = 0; i < alphas.size(); ++i) {
      double a = alphas[i];
      double bound = re0 - a * drift + a * std::expm1(a) * report.c_bar;
      double slack = bound - report.re_values[i];
      report.secant_slack.push_back(slack);
      if (slack < -1e-12) report.secant_holds = false;
    }
  }

  const double h = 1e-4;
  report.derivative_at_zero =
      (-3.0 * re0 + 4.0 * re_at(h) - re_at(2.0 * h)) / (2.0 * h);
  report.derivative_formula = -drift;
  return report;
}

void WriteTraceCsv(const HedgeTrace& trace, std::ostream& out) {
  int n = trace.iterates.empty() ? 0 : trace.iterates.front().size();
  out << "iter,alpha,payoff,re_to_reference";
  for (int i = 0; i < n; ++i) out << ",x_" << i;
  out << "\n" << std::setprecision(17);
  for (size_t t = 0; t < trace.iterates.size(); ++t) {
    out << trace.indices[t] << "," << trace.rates[t] << ","
        << trace.payoffs[t] << ",";
    if (!trace.re_to_reference.empty()) out << trace.re_to_reference[t];
    for (int i = 0; i < n; ++i) out << "," << trace.iterates[t][i];
    out << "\n";
  }
}

}  // namespace deploylab
