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

#ifndef DEPLOYLAB_EXPERIMENTS_H_
#define DEPLOYLAB_EXPERIMENTS_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "deploylab/game.h"
#include "deploylab/hedge.h"
#include "deploylab/io.h"
#include "deploylab/mechanisms.h"

namespace deploylab {

// Random games. All are deterministic functions of their arguments.

// C with i.i.d. Uniform[0, 1) entries, played as (C, C^T).
Matrix GenRandomSymmetric(int n, uint64_t seed);
BimatrixGame GenRandomBimatrix(int rows, int cols, uint64_t seed);
// Sorted benefits with c strictly between benefit(1) and benefit(n).
StagHuntSpec GenRandomStagHunt(int n, uint64_t seed);
// 0 < premium < surplus < benefit(n) - c.
InsuranceParams GenRandomInsuranceParams(const StagHuntSpec& spec,
                                         uint64_t seed);
// Integer payoffs in {0, ..., levels - 1}, which makes ties likely.
StrategicGame GenRandomStrategic(const std::vector<int>& strategy_counts,
                                 uint64_t seed, int levels = 10);

// Rock-paper-scissors, optionally mapped into [0, 1] by (C + 1) / 2.
Matrix RockPaperScissors(bool rescaled = true);

// FNV-1a over the payoff bytes, as 16 hex digits.
std::string GameHash(const std::vector<double>& values);

enum class ExperimentKind {
  kRandomSymmetricHedge,
  kRpsRepulsion,
  kGktRoundtrip,
  kStagHuntSuite,
  kMechanismSuite,
};

std::string ExperimentName(ExperimentKind kind);
ExperimentKind ParseExperimentKind(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kRandomSymmetricHedge;
  int trials = 100;
  int dim_min = 10;
  int dim_max = 10;
  double eps = 1e-3;
  uint64_t seed = 0;
  ScheduleForm schedule_form = ScheduleForm::kHarmonic;
  double schedule_c = 1.0;
  double schedule_exponent = 1.0;
  int64_t max_iters = 1'000'000;
  // Constant-rate steps per rate in the repulsion experiment.
  int64_t repulsion_steps = 200;
  // Worker threads; DEPLOYLAB_WORKERS overrides.
  int workers = 1;

  // Throws std::invalid_argument on an invalid configuration.
  void Validate() const;
  LearningRateSchedule Schedule() const;
};

struct TrialRecord {
  int index = 0;
  uint64_t seed = 0;
  std::string game_hash;
  int dimension = 0;
  bool success = false;
  std::string outcome;
  int64_t iterations = 0;
  double achieved_eps = 0.0;
  std::map<std::string, double> metrics;
  // Diagnostic curve for the SVG plot.
  std::vector<std::pair<double, double>> curve;
  // Not serialized; reports must be byte-identical across runs.
  double wall_time_ms = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  int successes = 0;
  double success_rate = 0.0;
  std::map<std::string, double> summary;
};

// Per-experiment defaults: trial counts, dimensions, eps, and schedule.
ExperimentConfig DefaultConfig(ExperimentKind kind);

// Trial `index` depends only on (config, index).
TrialRecord RunTrial(const ExperimentConfig& config, int index);
ExperimentReport RunExperiment(const ExperimentConfig& config);

int WorkerCount(int configured);

Json ConfigToJson(const ExperimentConfig& config);
ExperimentConfig ConfigFromJson(const Json& j);
Json ReportToJson(const ExperimentReport& report);
ExperimentReport ReportFromJson(const Json& j);
std::string ReportToCsv(const ExperimentReport& report);
std::string ReportToSvg(const ExperimentReport& report);
// Per-trial wall times, kept apart from the deterministic outputs.
std::string TimingsToCsv(const ExperimentReport& report);

enum class ReportFormat { kJson, kCsv, kSvg };
ReportFormat ParseReportFormat(const std::string& name);

// Writes report.{json,csv,svg} for the requested formats plus timings.csv.
// Returns the written paths.
std::vector<std::string> EmitReport(const ExperimentReport& report,
                                    const std::set<ReportFormat>& formats,
                                    const std::string& directory);

}  // namespace deploylab

#endif  // DEPLOYLAB_EXPERIMENTS_H_
