// Copyright 2026 The mssp-interp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mssp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "mssp/calibration.hpp"
#include "mssp/core.hpp"
#include "mssp/csv.hpp"
#include "mssp/error.hpp"
#include "mssp/io.hpp"
#include "mssp/measures.hpp"
#include "mssp/metrics.hpp"
#include "mssp/preference.hpp"
#include "mssp/scoring.hpp"
#include "mssp/solver.hpp"
#include "mssp/trial_io.hpp"
#include "mssp/trialgen.hpp"

namespace mssp {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string out;
  std::string input;
  std::string pool;
  std::string log;
  std::string manifest;
  std::string participants_file;
  std::string problem_solving;
  std::string corpus;
  std::string config;
  std::string cc_params = "confirmatory";
  std::string choice_params = "confirmatory";
  std::string rt_params = "confirmatory";
  std::string target = "compound";
  std::string params_out;
  std::string sds;
  std::string deltas;
  std::string metric = "all";
  std::uint64_t seed = 0;
  int iterations = 20000;
  int cap = 100;
  long long node_budget = 1'000'000;
  int participants = 1;
  int limit = 0;
  int steps = 61;
  double range = 3.0;
  double pse_z = 0.0;
  bool with_dd = false;
};

void Emit(const std::string& path, const std::string& content,
          std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    WriteFileAtomic(path, content);
  }
}

std::string RequireOut(const Options& o, const char* what) {
  if (o.out.empty()) {
    throw Error(ErrorClass::kUsage, fmt::format("{} needs --out", what));
  }
  return o.out;
}

CcParams ResolveCcParams(const std::string& spec) {
  if (spec == "confirmatory") return CcParams::Confirmatory();
  if (spec == "exploratory") return CcParams::Exploratory();
  return CcParamsFromJson(ReadJsonFile(spec));
}

ChoiceModelParams ResolveChoiceParams(const std::string& spec) {
  if (auto p = ChoicePreset(spec)) return *p;
  auto p = ChoiceParamsFromJson(ReadJsonFile(spec));
  p.Validate();
  return p;
}

RtModelParams ResolveRtParams(const std::string& spec) {
  if (auto p = RtPreset(spec)) return *p;
  return RtParamsFromJson(ReadJsonFile(spec));
}

std::vector<double> ParseList(const std::string& text, size_t expected,
                              const char* what) {
  std::vector<double> values;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = std::min(text.find(',', start), text.size());
    values.push_back(ParseDouble(text.substr(start, comma - start), what));
    start = comma + 1;
  }
  if (values.size() != expected) {
    throw Error(ErrorClass::kUsage, fmt::format("{} needs {} comma-separated "
                                                "values, got {}",
                                                what, expected, values.size()));
  }
  return values;
}

MetricArray ParseMetricArray(const std::string& text, const char* what) {
  const auto v = ParseList(text, 4, what);
  return {v[0], v[1], v[2], v[3]};
}

SolutionSet LoadValidSet(const std::string& path) {
  auto set = SolutionSetFromJson(ReadJsonFile(path));
  for (size_t s = 0; s < set.solutions.size(); ++s) {
    const auto report = ValidateSolution(set.instance, set.solutions[s].solution);
    if (!report.ok()) {
      throw ValidationError(fmt::format("solution {}: {}", s, report.ToString()));
    }
  }
  return set;
}

std::vector<ComplexityProfile> ScoreSet(const SolutionSet& set,
                                        const CcParams& cc) {
  std::vector<ScoreTask> tasks;
  for (const auto& d : set.solutions) tasks.push_back({&set.instance, &d});
  return ScoreTasks(tasks, cc);
}

std::string Num(double v) { return fmt::format("{:.6f}", v); }

// ---------------------------------------------------------------- gen-pool

int GenPool(const Options& o, std::ostream& out) {
  GenerationConfig config;
  if (!o.config.empty()) config = GenerationConfigFromJson(ReadJsonFile(o.config));
  config.seed = o.seed;
  config.iterations = o.iterations;
  config.cap = o.cap;
  config.node_budget = o.node_budget;
  const auto pool = GeneratePool(config);
  Emit(o.out, PoolToText(pool), out);
  if (!o.out.empty()) {
    out << fmt::format("iterations {} accepted {} yield {:.4f}\n",
                       pool.report.iterations, pool.report.accepted,
                       pool.report.yield());
    for (const auto& [reason, count] : pool.report.rejections) {
      out << fmt::format("rejected {} {}\n", reason, count);
    }
  }
  return 0;
}

// ------------------------------------------------------------------- solve

int Solve(const Options& o, std::ostream& out) {
  const auto instance = InstanceFromJson(ReadJsonFile(o.input));
  const auto result = EnumerateOptima(instance, {o.cap, o.node_budget});
  SolutionSet set{instance, {}, result.optimal_score, result.truncated};
  for (const auto& s : result.solutions) {
    set.solutions.push_back(DisplayedSolution::Identity(s));
  }
  auto j = SolutionSetToJson(set);
  j["heuristic_optimality"] = HeuristicOptimality(instance, result.optimal_score);
  Emit(o.out, j.dump(2) + "\n", out);
  return 0;
}

// ------------------------------------------------------------------- score

int Score(const Options& o, std::ostream& out) {
  const auto set = LoadValidSet(o.input);
  const auto profiles = ScoreSet(set, ResolveCcParams(o.cc_params));
  std::string csv = "solution,objective,hc,cc,vc,dd,canonical_key\n";
  for (size_t s = 0; s < profiles.size(); ++s) {
    const auto& sol = set.solutions[s].solution;
    csv += CsvLine(std::vector<std::string>{
        fmt::format("{}", s),
        fmt::format("{}", ObjectiveScore(set.instance, sol)),
        fmt::format("{}", profiles[s].hc), Num(profiles[s].cc),
        Num(profiles[s].vc), fmt::format("{}", profiles[s].dd),
        CanonicalForm(set.instance, sol).ToString()});
  }
  Emit(o.out, csv, out);
  return 0;
}

// -------------------------------------------------------------------- rank

int Rank(const Options& o, std::ostream& out) {
  const auto set = LoadValidSet(o.input);
  const auto profiles = ScoreSet(set, ResolveCcParams(o.cc_params));
  const auto choice = ResolveChoiceParams(o.choice_params);
  const size_t n = profiles.size();

  MetricArray sds{};
  if (!o.sds.empty()) {
    sds = ParseMetricArray(o.sds, "--sds");
  } else {
    // Spread of all ordered-pair differences; mean zero by symmetry.
    for (int k = 0; k < 4; ++k) {
      double ss = 0.0;
      size_t count = 0;
      for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
          if (a == b) continue;
          const double d = AsArray(profiles[b])[k] - AsArray(profiles[a])[k];
          ss += d * d;
          ++count;
        }
      }
      sds[k] = count > 1 ? std::sqrt(ss / (count - 1)) : 0.0;
    }
  }
  MetricArray weights{};
  for (int k = 0; k < 4; ++k) {
    const bool used = k < 3 || o.with_dd;
    weights[k] = used && sds[k] > 0.0 ? choice.betas[k] / sds[k] : 0.0;
  }

  std::vector<double> score(n, 0.0);
  std::vector<CanonicalKey> keys;
  for (size_t s = 0; s < n; ++s) {
    const auto m = AsArray(profiles[s]);
    for (int k = 0; k < 4; ++k) score[s] += weights[k] * m[k];
    keys.push_back(CanonicalForm(set.instance, set.solutions[s].solution));
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::ranges::stable_sort(order, [&](size_t a, size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return keys[a] < keys[b];
  });

  std::string csv = "rank,solution,score,hc,cc,vc,dd,canonical_key\n";
  for (size_t r = 0; r < n; ++r) {
    const size_t s = order[r];
    csv += CsvLine(std::vector<std::string>{
        fmt::format("{}", r + 1), fmt::format("{}", s), Num(score[s]),
        fmt::format("{}", profiles[s].hc), Num(profiles[s].cc),
        Num(profiles[s].vc), fmt::format("{}", profiles[s].dd),
        keys[s].ToString()});
  }
  Emit(o.out, csv, out);
  return 0;
}

// -------------------------------------------------------------- gen-trials

int GenTrials(const Options& o, std::ostream& out) {
  const fs::path dir = RequireOut(o, "gen-trials");
  if (o.participants < 1) {
    throw Error(ErrorClass::kUsage, "--participants must be at least 1");
  }
  const auto pool = PoolFromText(ReadTextFile(o.pool));
  const auto cc = ResolveCcParams(o.cc_params);
  const TrialPlanner planner(pool.entries, cc);

  std::vector<ManifestRow> rows;
  for (int j = 0; j < o.participants; ++j) {
    const std::uint64_t seed = DerivedRng(o.seed, kParticipantStream, j)();
    const auto trials = planner.ParticipantTrials(seed);
    auto part = BuildManifest(fmt::format("P{:03}", j + 1), seed, trials,
                              pool.entries, cc);
    rows.insert(rows.end(), part.begin(), part.end());
  }

  std::string solve = "trial,problem_id,pd,optimum,assignment\n";
  const auto ps = SelectProblemSolvingTrials(pool.entries);
  for (size_t t = 0; t < ps.size(); ++t) {
    const auto& e = pool.entries[ps[t].problem];
    std::vector<int> bins = ps[t].solution.BinIndices();
    solve += CsvLine(std::vector<std::string>{
        fmt::format("{}", t + 1), e.instance.id(),
        fmt::format("{}", e.instance.load_ratio()),
        fmt::format("{}", e.result.optimal_score), FormatPermutation(bins)});
  }

  const std::string manifest = ManifestCsv(rows);
  WriteFileAtomic(dir / "manifest.csv", manifest);
  WriteFileAtomic(dir / "problem_solving.csv", solve);
  out << fmt::format("{} participants, {} trials\n", o.participants,
                     rows.size());
  return 0;
}

// ------------------------------------------------------------ calibrate-cc

std::map<std::string, size_t> PoolIndex(const Pool& pool) {
  std::map<std::string, size_t> index;
  for (size_t p = 0; p < pool.entries.size(); ++p) {
    index[pool.entries[p].instance.id()] = p;
  }
  return index;
}

int CalibrateCc(const Options& o, std::ostream& out) {
  std::vector<CorpusEntry> corpus;
  CalibrationReport report;
  if (o.target == "compound") {
    if (!o.corpus.empty()) {
      const auto j = ReadJsonFile(o.corpus);
      const auto sets = j.is_array() ? j : nlohmann::json::array({j});
      for (const auto& item : sets) {
        const auto set = SolutionSetFromJson(item);
        for (const auto& d : set.solutions) {
          corpus.push_back({set.instance, d.solution});
        }
      }
    } else if (!o.pool.empty()) {
      const auto pool = PoolFromText(ReadTextFile(o.pool));
      for (const auto& e : pool.entries) {
        for (const auto& s : e.result.solutions) corpus.push_back({e.instance, s});
      }
    } else {
      throw Error(ErrorClass::kUsage, "compound target needs --corpus or --pool");
    }
    if (o.limit > 0 && corpus.size() > static_cast<size_t>(o.limit)) {
      corpus.resize(o.limit);
    }
    report = CalibrateCorrelation(corpus);
  } else if (o.target == "logloss") {
    if (o.log.empty() || o.pool.empty()) {
      throw Error(ErrorClass::kUsage, "logloss target needs --log and --pool");
    }
    const auto pool = PoolFromText(ReadTextFile(o.pool));
    const auto index = PoolIndex(pool);
    const auto records = ParseTrialLogCsv(ReadTextFile(o.log));
    std::map<std::pair<size_t, int>, size_t> slot;
    auto add = [&](size_t p, int s) {
      auto [it, fresh] = slot.try_emplace({p, s}, corpus.size());
      if (fresh) {
        corpus.push_back({pool.entries[p].instance,
                          pool.entries[p].result.solutions.at(s)});
      }
      return it->second;
    };
    std::vector<ChoiceTrial> trials;
    for (const auto& r : records) {
      if (r.choice == kDuplicateChoice || r.trial.kind == TrialKind::kCatch) {
        continue;
      }
      const auto it = index.find(r.trial.problem_id);
      if (it == index.end()) {
        throw ValidationError(fmt::format("problem {} not in the pool",
                                          r.trial.problem_id));
      }
      trials.push_back({add(it->second, r.trial.left_solution),
                        add(it->second, r.trial.right_solution), r.choice});
    }
    report = CalibrateLogLoss(corpus, trials);
  } else {
    throw Error(ErrorClass::kUsage,
                fmt::format("unknown --target '{}'", o.target));
  }
  Emit(o.out, ReportCsv(report), out);
  if (!o.params_out.empty()) {
    WriteFileAtomic(o.params_out, CcParamsToJson(report.best().params).dump(2) + "\n");
  }
  if (!o.out.empty()) out << ReportSummary(report);
  return 0;
}

// ----------------------------------------------------------------- predict

MetricArray SdsFor(const Options& o, std::span<const ManifestRow> rows) {
  if (!o.sds.empty()) return ParseMetricArray(o.sds, "--sds");
  std::vector<MetricArray> raw;
  for (const auto& r : rows) raw.push_back(RawDifferences(r.left, r.right));
  return ComputeSds(raw);
}

std::map<std::string, double> PseZFromFile(const std::string& path) {
  if (path.empty()) return {};
  const auto cohort = ParseParticipantCsv(ReadTextFile(path));
  return StandardizePse(ProblemSolvingEfficiency(cohort).pse);
}

int Predict(const Options& o, std::ostream& out) {
  const auto choice = ResolveChoiceParams(o.choice_params);
  const auto rt = ResolveRtParams(o.rt_params);
  if (!o.deltas.empty()) {
    const auto d = ParseMetricArray(o.deltas, "--deltas");
    MetricArray abs{};
    for (int k = 0; k < 4; ++k) abs[k] = std::abs(d[k]);
    const auto probs = PredictChoiceProbs(choice, d);
    std::string csv = "quantity,value\n";
    for (int k = 0; k < kNumCategories; ++k) {
      csv += fmt::format("p_{},{}\n", kCategoryNames[k], Num(probs[k]));
    }
    csv += fmt::format("log_rt,{}\n", Num(PredictLogRt(rt, abs, o.pse_z)));
    Emit(o.out, csv, out);
    return 0;
  }

  const std::string path = !o.log.empty() ? o.log : o.manifest;
  if (path.empty()) {
    throw Error(ErrorClass::kUsage, "predict needs --deltas, --log or --manifest");
  }
  const auto rows = ParseManifestCsv(ReadTextFile(path));
  const auto sds = SdsFor(o, rows);
  const auto pse_z = PseZFromFile(o.participants_file);

  std::string csv =
      "participant_id,trial_index,kind,d_hc,d_cc,d_vc,d_dd,"
      "p_definitely_left,p_slightly_left,p_slightly_right,p_definitely_right,"
      "log_rt\n";
  for (const auto& r : rows) {
    const auto d = ComputePairDifferences(r.left, r.right, sds, r.pd);
    const auto probs = PredictChoiceProbs(choice, d);
    const auto z = pse_z.find(r.participant_id);
    const double log_rt =
        PredictLogRt(rt, d.absolute_diff, z == pse_z.end() ? 0.0 : z->second);
    std::vector<std::string> fields = {r.participant_id,
                                       fmt::format("{}", r.trial_index),
                                       std::string(TrialKindName(r.kind))};
    for (double v : d.signed_diff) fields.push_back(Num(v));
    for (double p : probs) fields.push_back(Num(p));
    fields.push_back(Num(log_rt));
    csv += CsvLine(fields);
  }
  Emit(o.out, csv, out);
  return 0;
}

// ----------------------------------------------------------------- analyze

int Analyze(const Options& o, std::ostream& out) {
  const fs::path dir = RequireOut(o, "analyze");
  if (o.log.empty()) throw Error(ErrorClass::kUsage, "analyze needs --log");
  const auto records = ParseTrialLogCsv(ReadTextFile(o.log));
  const auto result = ApplyExclusions(records);

  std::string audit = "participant_id,trial_index,rule,detail\n";
  for (const auto& a : result.audit) {
    audit += CsvLine(std::vector<std::string>{
        a.participant_id,
        a.trial_index ? fmt::format("{}", *a.trial_index) : "",
        std::string(ExclusionRuleName(a.rule)), a.detail});
  }

  std::string trials =
      "participant_id,trial_index,kind,choice,side,log_rt,gaze_bias\n";
  double bias_sum = 0.0;
  int bias_count = 0;
  for (const auto& r : result.retained) {
    const auto side = ChoiceSide(r.choice);
    const auto bias = GazeBias(r.gaze_right, r.gaze_left);
    if (bias) {
      bias_sum += *bias;
      ++bias_count;
    }
    trials += CsvLine(std::vector<std::string>{
        r.trial.participant_id, fmt::format("{}", r.trial.trial_index),
        std::string(TrialKindName(r.trial.kind)),
        std::string(ChoiceName(r.choice)),
        side ? (*side == Side::kLeft ? "left" : "right") : "",
        Num(LogRt(r.rt_ms)), bias ? Num(*bias) : ""});
  }

  std::map<std::string, ParticipantRecord> sidecar;
  std::map<std::string, double> pse, pse_z;
  if (!o.participants_file.empty()) {
    std::vector<ParticipantRecord> cohort;
    for (auto& p : ParseParticipantCsv(ReadTextFile(o.participants_file))) {
      sidecar[p.participant_id] = p;
      if (result.retained_participants.contains(p.participant_id)) {
        cohort.push_back(p);
      }
    }
    if (!cohort.empty()) pse = ProblemSolvingEfficiency(cohort).pse;
    if (pse.size() >= 2) pse_z = StandardizePse(pse);
  }

  const auto coherence = ClassifyCoherence(records);
  std::map<std::string, std::optional<bool>> coherent;
  for (const auto& c : coherence) coherent[c.participant_id] = c.coherent;
  int coherent_count = 0;
  int classified = 0;

  std::string participants =
      "participant_id,status,psi_total,pse,pse_z,coherent\n";
  std::vector<std::string> ids;
  for (const auto& c : coherence) ids.push_back(c.participant_id);
  for (const auto& id : ids) {
    const bool kept = result.retained_participants.contains(id);
    const auto side = sidecar.find(id);
    const auto e = pse.find(id);
    const auto z = pse_z.find(id);
    const auto c = coherent[id];
    if (kept && c) {
      ++classified;
      coherent_count += *c ? 1 : 0;
    }
    participants += CsvLine(std::vector<std::string>{
        id, kept ? "retained" : "excluded",
        side == sidecar.end() ? "" : fmt::format("{}", side->second.psi_total),
        e == pse.end() ? "" : Num(e->second),
        z == pse_z.end() ? "" : Num(z->second),
        c ? (*c ? "1" : "0") : ""});
  }

  const size_t gaze_dropped = result.retained.size() - result.gaze_retained.size();
  nlohmann::json summary = {
      {"participants", ids.size()},
      {"retained_participants", result.retained_participants.size()},
      {"excluded_participants", result.excluded_participants.size()},
      {"trials", records.size()},
      {"retained_trials", result.retained.size()},
      {"gaze_trials", result.gaze_retained.size()},
      {"gaze_excluded_fraction",
       result.retained.empty()
           ? 0.0
           : static_cast<double>(gaze_dropped) / result.retained.size()},
      {"mean_gaze_bias", bias_count ? bias_sum / bias_count : 0.0},
      {"coherent_fraction",
       classified ? static_cast<double>(coherent_count) / classified : 0.0}};

  WriteFileAtomic(dir / "audit.csv", audit);
  WriteFileAtomic(dir / "trials.csv", trials);
  WriteFileAtomic(dir / "participants.csv", participants);
  WriteFileAtomic(dir / "summary.json", summary.dump(2) + "\n");
  out << fmt::format("{} of {} participants retained, {} trials\n",
                     result.retained_participants.size(), ids.size(),
                     result.retained.size());
  return 0;
}

// --------------------------------------------------------------- plot-data

int PlotData(const Options& o, std::ostream& out) {
  const auto choice = ResolveChoiceParams(o.choice_params);
  if (o.steps < 2) throw Error(ErrorClass::kUsage, "--steps must be at least 2");
  std::vector<int> metrics;
  for (int k = 0; k < 4; ++k) {
    if (o.metric == "all" || o.metric == kMetricNames[k]) metrics.push_back(k);
  }
  if (metrics.empty()) {
    throw Error(ErrorClass::kUsage, fmt::format("unknown --metric '{}'", o.metric));
  }
  std::string csv = "metric,delta,category,probability\n";
  for (int k : metrics) {
    for (int s = 0; s < o.steps; ++s) {
      MetricArray d{};
      d[k] = -o.range + 2.0 * o.range * s / (o.steps - 1);
      const auto probs = PredictChoiceProbs(choice, d);
      for (int c = 0; c < kNumCategories; ++c) {
        csv += fmt::format("{},{},{},{}\n", kMetricNames[k], Num(d[k]),
                           kCategoryNames[c], Num(probs[c]));
      }
    }
  }
  Emit(o.out, csv, out);
  return 0;
}

// ---------------------------------------------------------------- simulate

int Simulate(const Options& o, std::ostream& out) {
  const fs::path dir = RequireOut(o, "simulate");
  if (o.manifest.empty()) throw Error(ErrorClass::kUsage, "simulate needs --manifest");
  const auto rows = ParseManifestCsv(ReadTextFile(o.manifest));
  const auto choice = ResolveChoiceParams(o.choice_params);
  const auto rt = ResolveRtParams(o.rt_params);
  const auto sds = SdsFor(o, rows);

  std::vector<double> optima(7, 100.0);
  if (!o.problem_solving.empty()) {
    const auto table = CsvTable::Parse(ReadTextFile(o.problem_solving));
    optima.clear();
    for (const auto& row : table.rows()) {
      optima.push_back(ParseDouble(row[table.Column("optimum")], "optimum"));
    }
  }

  std::vector<std::string> ids;
  std::map<std::string, std::vector<const ManifestRow*>> by_participant;
  for (const auto& r : rows) {
    auto [it, fresh] = by_participant.try_emplace(r.participant_id);
    if (fresh) ids.push_back(r.participant_id);
    it->second.push_back(&r);
  }

  std::vector<TrialRecord> records;
  std::vector<ParticipantRecord> people;
  for (size_t j = 0; j < ids.size(); ++j) {
    auto rng = DerivedRng(o.seed, kSimulationStream, j);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 0.4);

    ParticipantRecord person{ids[j], std::uniform_int_distribution<int>(31, 186)(rng), {}};
    for (size_t t = 0; t < optima.size(); ++t) {
      const double score =
          unit(rng) < 0.7 ? optima[t]
                          : std::max(0.0, optima[t] - 5.0 * std::uniform_int_distribution<int>(1, 4)(rng));
      person.solves.push_back({static_cast<int>(t) + 1, score, optima[t],
                               std::exp(std::log(60.0) + noise(rng))});
    }
    people.push_back(std::move(person));

    for (const auto* r : by_participant[ids[j]]) {
      TrialRecord rec;
      rec.trial = *r;
      const auto d = ComputePairDifferences(r->left, r->right, sds, r->pd);
      const bool is_catch = r->kind == TrialKind::kCatch;
      const double dup = unit(rng);
      if ((is_catch && dup < 0.95) || (!is_catch && dup < 0.01)) {
        rec.choice = kDuplicateChoice;
      } else {
        rec.choice = SampleCategory(PredictChoiceProbs(choice, d), unit(rng));
      }
      rec.rt_ms = std::round(
          std::exp(PredictLogRt(rt, d.absolute_diff, 0.0) + noise(rng)));
      const int total =
          unit(rng) < 0.05 ? 0 : std::uniform_int_distribution<int>(1, 60)(rng);
      const bool right = rec.choice >= 2 && rec.choice < kNumCategories;
      rec.gaze_right =
          std::binomial_distribution<int>(total, right ? 0.6 : 0.4)(rng);
      rec.gaze_left = total - rec.gaze_right;
      records.push_back(std::move(rec));
    }
  }
  WriteFileAtomic(dir / "trial_log.csv", TrialLogCsv(records));
  WriteFileAtomic(dir / "participants.csv", ParticipantCsv(people));
  out << fmt::format("simulated {} trials for {} participants\n",
                     records.size(), ids.size());
  return 0;
}

int ExitCode(ErrorClass c) {
  switch (c) {
    case ErrorClass::kUsage: return 2;
    case ErrorClass::kValidation: return 3;
    case ErrorClass::kBudget: return 4;
    case ErrorClass::kCalibration: return 5;
  }
  return 1;
}

void ReportError(std::ostream& err, std::string_view cls,
                 const std::string& message) {
  err << nlohmann::json{{"error", cls}, {"message", message}}.dump() << "\n";
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Interpretability metrics and stimuli for multiple subset sum "
               "problems"};
  app.name("mssp");
  app.require_subcommand(1);
  Options o;

  auto seed = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "64-bit seed");
  };
  auto out_opt = [&](CLI::App* c, const char* what) {
    c->add_option("--out", o.out, what);
  };
  auto cc = [&](CLI::App* c) {
    c->add_option("--cc-params", o.cc_params,
                  "confirmatory, exploratory or a JSON file");
  };
  auto choice = [&](CLI::App* c) {
    c->add_option("--choice-params", o.choice_params,
                  "confirmatory, exploratory or a JSON file");
  };
  auto rt = [&](CLI::App* c) {
    c->add_option("--rt-params", o.rt_params,
                  "confirmatory, exploratory or a JSON file");
  };

  auto* gen_pool = app.add_subcommand("gen-pool", "simulate the problem pool");
  seed(gen_pool);
  gen_pool->add_option("--iterations", o.iterations, "simulation iterations");
  gen_pool->add_option("--cap", o.cap, "distinct optima kept per problem");
  gen_pool->add_option("--node-budget", o.node_budget, "solver nodes per problem");
  gen_pool->add_option("--config", o.config, "generation config JSON");
  out_opt(gen_pool, "pool file (stdout when omitted)");

  auto* solve = app.add_subcommand("solve", "enumerate all optima of an instance");
  solve->add_option("--instance", o.input, "instance JSON")->required();
  solve->add_option("--cap", o.cap, "distinct optima to keep");
  solve->add_option("--node-budget", o.node_budget, "solver node budget");
  out_opt(solve, "solution set JSON");

  auto* score = app.add_subcommand("score", "complexity profile per solution");
  score->add_option("--input", o.input, "solution set JSON")->required();
  cc(score);
  out_opt(score, "CSV output");

  auto* rank = app.add_subcommand("rank", "order optima by interpretability");
  rank->add_option("--input", o.input, "solution set JSON")->required();
  cc(rank);
  choice(rank);
  rank->add_option("--sds", o.sds, "hc,cc,vc,dd divisors");
  rank->add_flag("--with-dd", o.with_dd, "weight DD by its coefficient too");
  out_opt(rank, "CSV output");

  auto* gen_trials = app.add_subcommand("gen-trials", "participant trial manifests");
  gen_trials->add_option("--pool", o.pool, "pool file")->required();
  gen_trials->add_option("--participants", o.participants, "participant count");
  seed(gen_trials);
  cc(gen_trials);
  out_opt(gen_trials, "output directory");

  auto* calibrate = app.add_subcommand("calibrate-cc", "fit CC parameters");
  calibrate->add_option("--target", o.target, "compound or logloss")
      ->check(CLI::IsMember({"compound", "logloss"}));
  calibrate->add_option("--corpus", o.corpus, "solution sets JSON");
  calibrate->add_option("--pool", o.pool, "pool file");
  calibrate->add_option("--log", o.log, "trial log CSV");
  calibrate->add_option("--limit", o.limit, "use at most this many solutions");
  calibrate->add_option("--params-out", o.params_out, "winning params JSON");
  out_opt(calibrate, "report CSV");

  auto* predict = app.add_subcommand("predict", "choice probabilities and log RT");
  predict->add_option("--deltas", o.deltas, "signed hc,cc,vc,dd differences");
  predict->add_option("--pse-z", o.pse_z, "standardized PSE for --deltas");
  predict->add_option("--log", o.log, "trial log CSV");
  predict->add_option("--manifest", o.manifest, "trial manifest CSV");
  predict->add_option("--participants", o.participants_file, "participant CSV");
  predict->add_option("--sds", o.sds, "hc,cc,vc,dd divisors");
  choice(predict);
  rt(predict);
  out_opt(predict, "CSV output");

  auto* analyze = app.add_subcommand("analyze", "measures, exclusions, coherence");
  analyze->add_option("--log", o.log, "trial log CSV")->required();
  analyze->add_option("--participants", o.participants_file, "participant CSV");
  out_opt(analyze, "output directory");

  auto* plot = app.add_subcommand("plot-data", "predicted probability curves");
  choice(plot);
  plot->add_option("--metric", o.metric, "hc, cc, vc, dd or all");
  plot->add_option("--range", o.range, "curves span [-range, range]");
  plot->add_option("--steps", o.steps, "grid points per curve");
  out_opt(plot, "CSV output");

  auto* simulate = app.add_subcommand("simulate", "synthetic responses for a manifest");
  simulate->add_option("--manifest", o.manifest, "trial manifest CSV")->required();
  simulate->add_option("--problem-solving", o.problem_solving,
                       "problem-solving trials CSV");
  simulate->add_option("--sds", o.sds, "hc,cc,vc,dd divisors");
  seed(simulate);
  choice(simulate);
  rt(simulate);
  out_opt(simulate, "output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    ReportError(err, "usage", e.what());
    return 2;
  }

  try {
    if (*gen_pool) return GenPool(o, out);
    if (*solve) return Solve(o, out);
    if (*score) return Score(o, out);
    if (*rank) return Rank(o, out);
    if (*gen_trials) return GenTrials(o, out);
    if (*calibrate) return CalibrateCc(o, out);
    if (*predict) return Predict(o, out);
    if (*analyze) return Analyze(o, out);
    if (*plot) return PlotData(o, out);
    if (*simulate) return Simulate(o, out);
  } catch (const Error& e) {
    ReportError(err, ErrorClassName(e.error_class()), e.what());
    return ExitCode(e.error_class());
  } catch (const fs::filesystem_error& e) {
    ReportError(err, "usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    ReportError(err, "internal", e.what());
    return 1;
  }
  return 2;
}

}  // namespace mssp
