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

#include "deploylab/experiments.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "deploylab/deployment_graph.h"
#include "deploylab/random.h"
#include "deploylab/symmetrization.h"

namespace deploylab {
namespace {

constexpr int kCurvePoints = 200;

Json Num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double NumFrom(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

std::vector<double> Flatten(const Matrix& m) {
  return std::vector<double>(m.data(), m.data() + m.size());
}

double Log10Floor(double v) { return std::log10(std::max(v, 1e-16)); }

std::string Fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string ProfileSetName(const StrategicGame& game,
                           const std::vector<std::vector<int>>& sets) {
  std::string out;
  for (size_t i = 0; i < sets.size(); ++i) {
    if (i) out += " ";
    out += "{";
    for (size_t k = 0; k < sets[i].size(); ++k) {
      out += StrategyLabel(sets[i][k], game.strategy_counts()[i]);
    }
    out += "}";
  }
  return out;
}

void RandomSymmetricHedgeTrial(const ExperimentConfig& config, uint64_t seed,
                               TrialRecord* record) {
  Matrix c = GenRandomSymmetric(record->dimension, seed);
  record->game_hash = GameHash(Flatten(c));
  PayoffOperator op = PayoffOperator::Linear(c);
  HedgeOptions options;
  options.max_iters = config.max_iters;
  options.stop_regret = config.eps;
  options.record_every = std::max<int64_t>(1, config.max_iters / kCurvePoints);
  HedgeTrace trace = RunHedge(op, MixedStrategy::Uniform(c.rows()),
                              config.Schedule(), options);
  record->iterations = trace.iterations;
  for (size_t t = 0; t < trace.iterates.size(); ++t) {
    record->curve.push_back({static_cast<double>(trace.indices[t]),
                             Log10Floor(SymmetricRegret(op, trace.iterates[t]))});
  }
  double last = SymmetricRegret(op, trace.last());
  int64_t stored = static_cast<int64_t>(trace.iterates.size());
  double avg_all = SymmetricRegret(op, AverageIterates(trace, AverageWindow::All()));
  double avg_tail = SymmetricRegret(
      op, AverageIterates(trace, AverageWindow::Tail(std::max<int64_t>(1, stored / 2))));
  double avg_weighted =
      SymmetricRegret(op, AverageIterates(trace, AverageWindow::RateWeighted()));
  record->metrics["last_regret"] = last;
  record->metrics["average_all_regret"] = avg_all;
  record->metrics["average_tail_regret"] = avg_tail;
  record->metrics["average_rate_weighted_regret"] = avg_weighted;
  double averaged = std::min({avg_all, avg_tail, avg_weighted});
  record->achieved_eps = std::min(last, averaged);
  if (last <= config.eps) {
    record->success = true;
    record->outcome = "last-iterate";
  } else if (averaged <= config.eps) {
    record->success = true;
    record->outcome = "averaged-iterate";
  } else {
    record->outcome = "not-converged";
  }
}

void RpsRepulsionTrial(const ExperimentConfig& config, uint64_t seed,
                       TrialRecord* record) {
  Matrix c = RockPaperScissors(true);
  record->game_hash = GameHash(Flatten(c));
  PayoffOperator op = PayoffOperator::Linear(c);
  Rng rng = StreamRng(seed, 1);
  MixedStrategy x0 = SampleSimplexUniform(3, rng);
  MixedStrategy uniform = MixedStrategy::Uniform(3);

  bool monotone = true;
  for (double alpha : {0.1, 0.5, 1.0}) {
    HedgeOptions options;
    options.max_iters = config.repulsion_steps;
    options.reference = uniform;
    HedgeTrace trace = RunHedge(
        op, x0, LearningRateSchedule::Make(ScheduleForm::kConstant, alpha), options);
    double min_increase = std::numeric_limits<double>::infinity();
    for (size_t t = 1; t < trace.re_to_reference.size(); ++t) {
      min_increase = std::min(min_increase, trace.re_to_reference[t] -
                                                trace.re_to_reference[t - 1]);
    }
    bool strictly = trace.iterations == config.repulsion_steps && min_increase > 0.0;
    monotone = monotone && strictly;
    record->metrics["repulsion_min_increase_" + Fmt(alpha)] = min_increase;
    if (alpha == 0.5) {
      for (size_t t = 0; t < trace.re_to_reference.size(); ++t) {
        record->curve.push_back({static_cast<double>(trace.indices[t]),
                                 trace.re_to_reference[t]});
      }
    }
  }

  HedgeOptions options;
  options.max_iters = config.max_iters;
  options.record_every = std::max<int64_t>(1, config.max_iters);
  HedgeTrace trace = RunHedge(op, x0, config.Schedule(), options);
  record->iterations = trace.iterations;
  auto distance = [&](const MixedStrategy& x) {
    return (x.weights() - uniform.weights()).cwiseAbs().maxCoeff();
  };
  double all = distance(AverageIterates(trace, AverageWindow::All()));
  record->metrics["average_all_distance"] = all;
  record->metrics["average_rate_weighted_distance"] =
      distance(AverageIterates(trace, AverageWindow::RateWeighted()));
  record->metrics["last_iterate_distance"] = distance(trace.last());
  record->achieved_eps = all;
  record->success = monotone;
  record->outcome = std::string(monotone ? "repelled" : "not-monotone") +
                    (all <= config.eps ? "; average within eps"
                                       : "; average outside eps");
}

void GktRoundtripTrial(const ExperimentConfig& config, uint64_t seed,
                       TrialRecord* record) {
  BimatrixGame game = GenRandomBimatrix(record->dimension, record->dimension, seed);
  std::vector<double> values = Flatten(game.A());
  std::vector<double> b = Flatten(game.B());
  values.insert(values.end(), b.begin(), b.end());
  record->game_hash = GameHash(values);
  PipelineResult result =
      SolveBimatrixViaHedge(game, config.eps, config.Schedule(), config.max_iters);
  record->iterations = result.iterations;
  record->metrics["last_regret_unit"] = result.last_regret;
  record->metrics["averaged_regret_unit"] = result.averaged_regret;
  record->metrics["eps_approx_unit"] = result.budget.eps_approx;
  if (result.success && result.pair) {
    double regret = BimatrixRegret(game, result.pair->p, result.pair->q);
    record->achieved_eps = regret;
    record->success = regret <= config.eps;
    record->outcome = result.source;
  } else {
    record->achieved_eps = std::numeric_limits<double>::infinity();
    record->outcome = result.failure;
  }
}

void StagHuntTrial(uint64_t seed, TrialRecord* record) {
  StagHuntSpec spec = GenRandomStagHunt(record->dimension, seed);
  StrategicGame game = BuildStagHunt(spec);
  record->game_hash = GameHash(game.payoffs());
  MaximalAnalysis weak = MaximalStates(game, MaximalityKind::kWeak);
  std::vector<PureNashEntry> nash = PureNash(game);
  int64_t all_adopt = game.Encode(PureProfile(spec.n, kAdopt));
  int64_t all_defect = game.Encode(PureProfile(spec.n, kDefect));
  bool corners_strict = true;
  for (int64_t corner : {all_adopt, all_defect}) {
    auto it = std::find_if(nash.begin(), nash.end(),
                           [&](const PureNashEntry& e) { return e.profile == corner; });
    corners_strict = corners_strict && it != nash.end() && it->strict;
  }
  bool coincide = weak.maximal_states == weak.pure_nash;
  record->metrics["weakly_acyclic"] = weak.flags.weakly_acyclic;
  record->metrics["pure_nash_count"] = static_cast<double>(nash.size());
  record->success = weak.flags.weakly_acyclic && corners_strict && coincide;
  record->outcome = record->success ? "weakly-acyclic" : "violation";
}

void MechanismTrial(uint64_t seed, TrialRecord* record) {
  StagHuntSpec spec = GenRandomStagHunt(record->dimension, seed);
  InsuranceParams params = GenRandomInsuranceParams(spec, DeriveSeed(seed, 7));
  StrategicGame insured = ApplyInsurance(spec, params);
  StrategicGame election = ApplyElection(spec);
  record->game_hash = GameHash(insured.payoffs());
  int n = spec.n;

  DominanceRecord strict = IteratedDominance(insured, DominanceKind::kStrict);
  bool to_adoption = strict.rounds == 2 &&
                     strict.remaining == std::vector<std::vector<int>>(n, {kAdopt});
  int64_t all_adopt = insured.Encode(PureProfile(n, kAdopt));
  MaximalAnalysis weak = MaximalStates(insured, MaximalityKind::kWeak);
  MaximalAnalysis strong = MaximalStates(insured, MaximalityKind::kStrong);
  bool unique_maximal = weak.maximal_states == std::vector<int64_t>{all_adopt} &&
                        strong.maximal_states == std::vector<int64_t>{all_adopt};

  DominanceRecord weak_elim = IteratedDominance(election, DominanceKind::kWeak);
  bool votes = weak_elim.remaining ==
               std::vector<std::vector<int>>(n, {kInsureOrVote, kVoteAndAdopt});
  MaximalAnalysis el_strong = MaximalStates(election, MaximalityKind::kStrong);
  bool no_defect = true;
  for (int64_t s : el_strong.maximal_states) {
    for (int i = 0; i < n; ++i) no_defect = no_defect && election.StrategyOf(s, i) != kDefect;
  }
  int64_t all_defect = election.Encode(PureProfile(n, kDefect));
  bool defect_weak_nash = false;
  for (const PureNashEntry& e : PureNash(election)) {
    if (e.profile == all_defect) defect_weak_nash = !e.strict;
  }
  if (n == 2) {
    DominanceRecord all =
        IteratedDominance(election, DominanceKind::kWeak, EliminationOrder::kAllOrders);
    record->metrics["election_weak_all_orders_outcomes"] =
        static_cast<double>(all.terminal_outcomes.size());
  }
  record->metrics["insurance_strict_rounds"] = strict.rounds;
  record->metrics["election_weakly_ordinally_acyclic"] =
      el_strong.flags.weakly_ordinally_acyclic;
  record->success = to_adoption && unique_maximal && votes &&
                    el_strong.flags.weakly_ordinally_acyclic && no_defect &&
                    defect_weak_nash;
  record->outcome = record->success
                        ? "theorems-hold"
                        : "insurance " + ProfileSetName(insured, strict.remaining) +
                              "; election " +
                              ProfileSetName(election, weak_elim.remaining);
}

double Quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  size_t k = static_cast<size_t>(std::ceil(q * v.size()));
  return v[std::min(v.size() - 1, k == 0 ? 0 : k - 1)];
}

}  // namespace

Matrix GenRandomSymmetric(int n, uint64_t seed) {
  if (n < 1 || n > 1000) throw std::invalid_argument("dimension out of range");
  Rng rng = StreamRng(seed, 0);
  return SampleUniformMatrix(n, n, rng);
}

BimatrixGame GenRandomBimatrix(int rows, int cols, uint64_t seed) {
  if (rows < 1 || cols < 1 || rows > 1000 || cols > 1000) {
    throw std::invalid_argument("dimension out of range");
  }
  Rng rng = StreamRng(seed, 0);
  Matrix a = SampleUniformMatrix(rows, cols, rng);
  Matrix b = SampleUniformMatrix(rows, cols, rng);
  return BimatrixGame(std::move(a), std::move(b));
}

StagHuntSpec GenRandomStagHunt(int n, uint64_t seed) {
  if (n < 2 || n > 12) throw std::invalid_argument("player count out of range");
  Rng rng = StreamRng(seed, 0);
  StagHuntSpec spec;
  spec.n = n;
  while (true) {
    spec.benefit.assign(n, 0.0);
    for (double& b : spec.benefit) b = -1.0 + 3.0 * Uniform01(rng);
    std::sort(spec.benefit.begin(), spec.benefit.end());
    if (spec.benefit.back() > spec.benefit.front()) break;
  }
  double t = 0.05 + 0.9 * Uniform01(rng);
  spec.c = spec.benefit.front() + t * (spec.benefit.back() - spec.benefit.front());
  spec.Validate();
  return spec;
}

InsuranceParams GenRandomInsuranceParams(const StagHuntSpec& spec,
                                         uint64_t seed) {
  Rng rng = StreamRng(seed, 0);
  double headroom = std::numeric_limits<double>::infinity();
  for (int i = 0; i < spec.n; ++i) {
    headroom = std::min(headroom, spec.Benefit(i, spec.n) - spec.c);
  }
  InsuranceParams params;
  params.surplus = (0.1 + 0.8 * Uniform01(rng)) * headroom;
  params.premium = (0.1 + 0.8 * Uniform01(rng)) * params.surplus;
  ValidateInsurance(spec, params);
  return params;
}

StrategicGame GenRandomStrategic(const std::vector<int>& strategy_counts,
                                 uint64_t seed, int levels) {
  if (levels < 1) throw std::invalid_argument("levels must be positive");
  int64_t profiles = 1;
  for (int c : strategy_counts) {
    if (c < 1) throw std::invalid_argument("strategy counts must be positive");
    profiles *= c;
    if (profiles > StrategicGame::kMaxProfiles) {
      throw std::invalid_argument("profile space too large");
    }
  }
  Rng rng = StreamRng(seed, 0);
  std::vector<double> payoffs(profiles * strategy_counts.size());
  for (double& u : payoffs) {
    u = std::floor(Uniform01(rng) * levels);
  }
  return StrategicGame(strategy_counts, std::move(payoffs));
}

Matrix RockPaperScissors(bool rescaled) {
  Matrix c(3, 3);
  c << 0, -1, 1, 1, 0, -1, -1, 1, 0;
  if (rescaled) c = (c.array() + 1.0).matrix() / 2.0;
  return c;
}

std::string GameHash(const std::vector<double>& values) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : values) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string ExperimentName(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kRandomSymmetricHedge:
      return "random-symmetric-hedge";
    case ExperimentKind::kRpsRepulsion:
      return "rps-repulsion";
    case ExperimentKind::kGktRoundtrip:
      return "gkt-roundtrip";
    case ExperimentKind::kStagHuntSuite:
      return "stag-hunt-suite";
    case ExperimentKind::kMechanismSuite:
      return "mechanism-suite";
  }
  return "unknown";
}

ExperimentKind ParseExperimentKind(const std::string& name) {
  for (ExperimentKind kind :
       {ExperimentKind::kRandomSymmetricHedge, ExperimentKind::kRpsRepulsion,
        ExperimentKind::kGktRoundtrip, ExperimentKind::kStagHuntSuite,
        ExperimentKind::kMechanismSuite}) {
    if (ExperimentName(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown experiment: " + name);
}

void ExperimentConfig::Validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (dim_min < 1 || dim_max < dim_min) {
    throw std::invalid_argument("invalid dimension range");
  }
  bool players = kind == ExperimentKind::kStagHuntSuite ||
                 kind == ExperimentKind::kMechanismSuite;
  if (players && (dim_min < 2 || dim_max > 6)) {
    throw std::invalid_argument("player counts must lie in [2, 6]");
  }
  if (max_iters < 0 || repulsion_steps < 1) {
    throw std::invalid_argument("iteration counts must be positive");
  }
  Schedule();
}

LearningRateSchedule ExperimentConfig::Schedule() const {
  return LearningRateSchedule::Make(schedule_form, schedule_c, schedule_exponent);
}

ExperimentConfig DefaultConfig(ExperimentKind kind) {
  ExperimentConfig config;
  config.kind = kind;
  switch (kind) {
    case ExperimentKind::kRandomSymmetricHedge:
      config.schedule_form = ScheduleForm::kPower;
      config.schedule_exponent = 0.3;
      break;
    case ExperimentKind::kRpsRepulsion:
      config.trials = 10;
      config.dim_min = config.dim_max = 3;
      config.eps = 1e-2;
      break;
    case ExperimentKind::kGktRoundtrip:
      config.trials = 25;
      config.dim_min = config.dim_max = 3;
      config.eps = 0.05;
      config.schedule_form = ScheduleForm::kPower;
      config.schedule_exponent = 0.5;
      break;
    case ExperimentKind::kStagHuntSuite:
      config.trials = 200;
      config.dim_min = 2;
      config.dim_max = 4;
      break;
    case ExperimentKind::kMechanismSuite:
      config.trials = 20;
      config.dim_min = 2;
      config.dim_max = 4;
      break;
  }
  return config;
}

TrialRecord RunTrial(const ExperimentConfig& config, int index) {
  TrialRecord record;
  record.index = index;
  record.seed = DeriveSeed(config.seed, static_cast<uint64_t>(index));
  int span = config.dim_max - config.dim_min + 1;
  record.dimension =
      config.dim_min + static_cast<int>(DeriveSeed(record.seed, 99) % span);
  auto start = std::chrono::steady_clock::now();
  try {
    switch (config.kind) {
      case ExperimentKind::kRandomSymmetricHedge:
        RandomSymmetricHedgeTrial(config, record.seed, &record);
        break;
      case ExperimentKind::kRpsRepulsion:
        record.dimension = 3;
        RpsRepulsionTrial(config, record.seed, &record);
        break;
      case ExperimentKind::kGktRoundtrip:
        GktRoundtripTrial(config, record.seed, &record);
        break;
      case ExperimentKind::kStagHuntSuite:
        StagHuntTrial(record.seed, &record);
        break;
      case ExperimentKind::kMechanismSuite:
        MechanismTrial(record.seed, &record);
        break;
    }
  } catch (const std::exception& e) {
    record.success = false;
    record.outcome = std::string("error: ") + e.what();
  }
  record.wall_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return record;
}

int WorkerCount(int configured) {
  int workers = configured;
  if (const char* env = std::getenv("DEPLOYLAB_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) workers = static_cast<int>(v);
  }
  return std::max(1, workers);
}

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  ExperimentReport report;
  report.config = config;
  report.trials.resize(config.trials);
  int workers = std::min(WorkerCount(config.workers), config.trials);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < config.trials; i = next++) {
      report.trials[i] = RunTrial(config, i);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  std::vector<double> iterations;
  double worst = 0.0;
  for (const TrialRecord& t : report.trials) {
    report.successes += t.success;
    iterations.push_back(static_cast<double>(t.iterations));
    worst = std::max(worst, t.achieved_eps);
  }
  report.success_rate = static_cast<double>(report.successes) / config.trials;
  report.summary["iterations_p50"] = Quantile(iterations, 0.5);
  report.summary["iterations_p90"] = Quantile(iterations, 0.9);
  report.summary["iterations_max"] = Quantile(iterations, 1.0);
  report.summary["achieved_eps_max"] = worst;
  return report;
}

Json ConfigToJson(const ExperimentConfig& config) {
  return Json{{"experiment", ExperimentName(config.kind)},
              {"trials", config.trials},
              {"dim_min", config.dim_min},
              {"dim_max", config.dim_max},
              {"eps", config.eps},
              {"seed", config.seed},
              {"schedule",
               {{"form", ScheduleFormName(config.schedule_form)},
                {"c", config.schedule_c},
                {"exponent", config.schedule_exponent}}},
              {"max_iters", config.max_iters},
              {"repulsion_steps", config.repulsion_steps}};
}

ExperimentConfig ConfigFromJson(const Json& j) {
  ExperimentConfig config;
  config.kind = ParseExperimentKind(j.at("experiment").get<std::string>());
  config.trials = j.at("trials").get<int>();
  config.dim_min = j.at("dim_min").get<int>();
  config.dim_max = j.at("dim_max").get<int>();
  config.eps = j.at("eps").get<double>();
  config.seed = j.at("seed").get<uint64_t>();
  config.schedule_form = ParseScheduleForm(j.at("schedule").at("form").get<std::string>());
  config.schedule_c = j.at("schedule").at("c").get<double>();
  config.schedule_exponent = j.at("schedule").at("exponent").get<double>();
  config.max_iters = j.at("max_iters").get<int64_t>();
  config.repulsion_steps = j.at("repulsion_steps").get<int64_t>();
  return config;
}

Json ReportToJson(const ExperimentReport& report) {
  Json trials = Json::array();
  Json failures = Json::array();
  for (const TrialRecord& t : report.trials) {
    Json metrics = Json::object();
    for (const auto& [k, v] : t.metrics) metrics[k] = Num(v);
    Json curve = Json::array();
    for (const auto& [x, y] : t.curve) curve.push_back(Json::array({Num(x), Num(y)}));
    trials.push_back(Json{{"index", t.index},
                          {"seed", t.seed},
                          {"game_hash", t.game_hash},
                          {"dimension", t.dimension},
                          {"success", t.success},
                          {"outcome", t.outcome},
                          {"iterations", t.iterations},
                          {"achieved_eps", Num(t.achieved_eps)},
                          {"metrics", std::move(metrics)},
                          {"curve", std::move(curve)}});
    if (!t.success) failures.push_back(Json{{"index", t.index}, {"seed", t.seed}});
  }
  Json summary = Json::object();
  for (const auto& [k, v] : report.summary) summary[k] = Num(v);
  return Json{{"config", ConfigToJson(report.config)},
              {"trials", std::move(trials)},
              {"successes", report.successes},
              {"success_rate", report.success_rate},
              {"failures", std::move(failures)},
              {"summary", std::move(summary)}};
}

ExperimentReport ReportFromJson(const Json& j) {
  ExperimentReport report;
  report.config = ConfigFromJson(j.at("config"));
  for (const Json& t : j.at("trials")) {
    TrialRecord r;
    r.index = t.at("index").get<int>();
    r.seed = t.at("seed").get<uint64_t>();
    r.game_hash = t.at("game_hash").get<std::string>();
    r.dimension = t.at("dimension").get<int>();
    r.success = t.at("success").get<bool>();
    r.outcome = t.at("outcome").get<std::string>();
    r.iterations = t.at("iterations").get<int64_t>();
    r.achieved_eps = NumFrom(t.at("achieved_eps"));
    for (const auto& [k, v] : t.at("metrics").items()) r.metrics[k] = NumFrom(v);
    for (const Json& p : t.at("curve")) r.curve.push_back({NumFrom(p[0]), NumFrom(p[1])});
    report.trials.push_back(std::move(r));
  }
  report.successes = j.at("successes").get<int>();
  report.success_rate = j.at("success_rate").get<double>();
  for (const auto& [k, v] : j.at("summary").items()) report.summary[k] = NumFrom(v);
  return report;
}

std::string ReportToCsv(const ExperimentReport& report) {
  std::set<std::string> keys;
  for (const TrialRecord& t : report.trials) {
    for (const auto& [k, v] : t.metrics) keys.insert(k);
  }
  std::ostringstream out;
  out << "index,seed,dimension,game_hash,success,outcome,iterations,achieved_eps";
  for (const std::string& k : keys) out << "," << k;
  out << "\n";
  for (const TrialRecord& t : report.trials) {
    out << t.index << "," << t.seed << "," << t.dimension << "," << t.game_hash
        << "," << (t.success ? 1 : 0) << "," << CsvField(t.outcome) << ","
        << t.iterations << "," << Fmt(t.achieved_eps);
    for (const std::string& k : keys) {
      out << ",";
      auto it = t.metrics.find(k);
      if (it != t.metrics.end()) out << Fmt(it->second);
    }
    out << "\n";
  }
  return out.str();
}

std::string TimingsToCsv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "index,wall_time_ms\n";
  for (const TrialRecord& t : report.trials) {
    out << t.index << "," << Fmt(t.wall_time_ms) << "\n";
  }
  return out.str();
}

std::string ReportToSvg(const ExperimentReport& report) {
  constexpr double kW = 360, kH = 300, kPad = 40;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#17becf"};
  std::ostringstream out;
  out << std::setprecision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * kW
      << "\" height=\"" << kH << "\" font-family=\"sans-serif\" font-size=\"11\">\n";

  auto frame = [&](double x0, const std::string& title, const std::string& xl,
                   const std::string& yl) {
    out << "<rect x=\"" << x0 + kPad << "\" y=\"" << kPad << "\" width=\""
        << kW - 2 * kPad << "\" height=\"" << kH - 2 * kPad
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x0 + kW / 2 << "\" y=\"20\" text-anchor=\"middle\">"
        << title << "</text>\n";
    out << "<text x=\"" << x0 + kW / 2 << "\" y=\"" << kH - 8
        << "\" text-anchor=\"middle\">" << xl << "</text>\n";
    out << "<text x=\"" << x0 + 12 << "\" y=\"" << kH / 2
        << "\" transform=\"rotate(-90 " << x0 + 12 << " " << kH / 2
        << ")\" text-anchor=\"middle\">" << yl << "</text>\n";
  };

  // Left panel: per-trial diagnostic curves.
  std::string ylabel = report.config.kind == ExperimentKind::kRpsRepulsion
                           ? "RE(uniform, X_k)"
                           : "log10 regret";
  frame(0, ExperimentName(report.config.kind), "iteration", ylabel);
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const TrialRecord& t : report.trials) {
    for (const auto& [x, y] : t.curve) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xmin = std::min(xmin, x), xmax = std::max(xmax, x);
      ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    }
  }
  if (xmin <= xmax) {
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double x) { return kPad + (x - xmin) / (xmax - xmin) * (kW - 2 * kPad); };
    auto py = [&](double y) { return kH - kPad - (y - ymin) / (ymax - ymin) * (kH - 2 * kPad); };
    for (size_t i = 0; i < report.trials.size(); ++i) {
      const TrialRecord& t = report.trials[i];
      if (t.curve.empty()) continue;
      out << "<polyline fill=\"none\" stroke-width=\"1\" stroke=\""
          << kColors[i % 6] << "\" points=\"";
      for (const auto& [x, y] : t.curve) {
        if (std::isfinite(x) && std::isfinite(y)) out << px(x) << "," << py(y) << " ";
      }
      out << "\"/>\n";
    }
    out << "<text x=\"" << kPad << "\" y=\"" << kH - kPad + 14 << "\">" << xmin
        << "</text>\n<text x=\"" << kW - kPad << "\" y=\"" << kH - kPad + 14
        << "\" text-anchor=\"end\">" << xmax << "</text>\n";
    out << "<text x=\"" << kPad - 2 << "\" y=\"" << kH - kPad
        << "\" text-anchor=\"end\">" << ymin << "</text>\n<text x=\"" << kPad - 2
        << "\" y=\"" << kPad + 8 << "\" text-anchor=\"end\">" << ymax << "</text>\n";
  }

  // Right panel: success rate per dimension.
  frame(kW, "success rate", "dimension", "rate");
  std::map<int, std::pair<int, int>> by_dim;
  for (const TrialRecord& t : report.trials) {
    auto& [ok, total] = by_dim[t.dimension];
    ok += t.success;
    ++total;
  }
  if (!by_dim.empty()) {
    double dmin = by_dim.begin()->first, dmax = by_dim.rbegin()->first;
    if (dmax == dmin) dmin -= 1, dmax += 1;
    for (const auto& [d, counts] : by_dim) {
      double rate = static_cast<double>(counts.first) / counts.second;
      double x = kW + kPad + (d - dmin) / (dmax - dmin) * (kW - 2 * kPad);
      double y = kH - kPad - rate * (kH - 2 * kPad);
      out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\""
          << kColors[0] << "\"/>\n";
      out << "<text x=\"" << x << "\" y=\"" << kH - kPad + 14
          << "\" text-anchor=\"middle\">" << d << "</text>\n";
    }
    out << "<text x=\"" << kW + kPad - 2 << "\" y=\"" << kH - kPad
        << "\" text-anchor=\"end\">0</text>\n<text x=\"" << kW + kPad - 2
        << "\" y=\"" << kPad + 8 << "\" text-anchor=\"end\">1</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

ReportFormat ParseReportFormat(const std::string& name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "svg") return ReportFormat::kSvg;
  throw std::invalid_argument("unknown report format: " + name);
}

std::vector<std::string> EmitReport(const ExperimentReport& report,
                                    const std::set<ReportFormat>& formats,
                                    const std::string& directory) {
  std::filesystem::path dir(directory);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    std::string path = (dir / name).string();
    WriteTextFile(path, text);
    written.push_back(path);
  };
  if (formats.count(ReportFormat::kJson)) emit("report.json", ReportToJson(report).dump(2) + "\n");
  if (formats.count(ReportFormat::kCsv)) emit("report.csv", ReportToCsv(report));
  if (formats.count(ReportFormat::kSvg)) emit("report.svg", ReportToSvg(report));
  emit("timings.csv", TimingsToCsv(report));
  return written;
}

}  // namespace deploylab
