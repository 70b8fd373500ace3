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

// Runs the end-to-end acceptance checks and prints one line per criterion.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "mssp/calibration.hpp"
#include "mssp/cli.hpp"
#include "mssp/io.hpp"
#include "mssp/measures.hpp"
#include "mssp/metrics.hpp"
#include "mssp/preference.hpp"
#include "mssp/solver.hpp"
#include "mssp/trialgen.hpp"

namespace fs = std::filesystem;
using namespace mssp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failed check and keeps going.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && outcome_.pass) {
      outcome_.pass = false;
      outcome_.detail = what;
    }
  }
  void Note(const std::string& text) {
    if (outcome_.pass) outcome_.detail = text;
  }
  Outcome Done() const { return outcome_; }

 private:
  Outcome outcome_;
};

const Pool& AcceptancePool() {
  static const Pool pool = [] {
    GenerationConfig config;
    config.iterations = 2000;
    config.seed = 0;
    return GeneratePool(config);
  }();
  return pool;
}

Outcome OddsRatios() {
  Checker c;
  const auto b = ChoiceModelParams::Confirmatory().betas;
  const std::array<double, 3> expected = {0.73, 0.79, 0.69};
  for (int k = 0; k < 3; ++k) {
    c.Expect(std::abs(std::exp(b[k]) - expected[k]) <= 0.005,
             fmt::format("exp(beta_{}) = {:.4f}", kMetricNames[k], std::exp(b[k])));
  }
  c.Note(fmt::format("odds ratios {:.3f} {:.3f} {:.3f}", std::exp(b[0]),
                     std::exp(b[1]), std::exp(b[2])));
  return c.Done();
}

Outcome RtEffect() {
  Checker c;
  const auto rt = RtModelParams::Confirmatory();
  const double pct = 100.0 * (std::exp(rt.coefs[0]) - 1.0);
  c.Expect(std::abs(pct - (-4.1)) <= 0.1, fmt::format("HC RT effect {:.3f}%", pct));
  const double seconds = std::exp(PredictLogRt(rt, {}, 0.0)) / 1000.0;
  c.Expect(std::abs(seconds - 8.2) < 0.05, fmt::format("intercept {:.3f} s", seconds));
  c.Note(fmt::format("{:.2f}% per SD, intercept {:.2f} s", pct, seconds));
  return c.Done();
}

Outcome ChoiceCurves() {
  Checker c;
  const auto params = ChoiceModelParams::Confirmatory();
  const auto p = PredictChoiceProbs(params, MetricArray{});
  const std::array<double, 4> expected = {0.147, 0.387, 0.350, 0.116};
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    c.Expect(std::abs(p[k] - expected[k]) <= 0.001,
             fmt::format("p[{}] = {:.5f}", k, p[k]));
    sum += p[k];
  }
  c.Expect(std::abs(sum - 1.0) <= 1e-12, "probabilities do not sum to 1");
  for (int metric = 0; metric < 4; ++metric) {
    double previous = -1.0;
    for (int s = 0; s <= 60; ++s) {
      MetricArray d{};
      d[metric] = -3.0 + 0.1 * s;
      const auto q = PredictChoiceProbs(params, d);
      const double left = q[0] + q[1];
      c.Expect(left > previous, fmt::format("{} curve not monotone at {}",
                                            kMetricNames[metric], d[metric]));
      previous = left;
    }
  }
  c.Note(fmt::format("({:.4f}, {:.4f}, {:.4f}, {:.4f})", p[0], p[1], p[2], p[3]));
  return c.Done();
}

Outcome SolverOracle() {
  Checker c;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> bins(1, 3), items(1, 6), value(1, 15);
  int agree = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<int> w(bins(rng)), z(items(rng));
    for (int& x : w) x = value(rng);
    for (int& x : z) x = value(rng);
    const ProblemInstance inst(fmt::format("r{}", t), w, z);
    const auto fast = EnumerateOptima(inst, {.cap = 1000});
    const auto brute = BruteForceOptima(inst);
    std::set<CanonicalKey> a, b;
    for (const auto& s : fast.solutions) a.insert(CanonicalForm(inst, s));
    for (const auto& s : brute.solutions) b.insert(CanonicalForm(inst, s));
    const bool ok = fast.optimal_score == brute.optimal_score && a == b;
    c.Expect(ok, fmt::format("instance {} disagrees", t));
    agree += ok;
  }
  c.Note(fmt::format("{}/200 agree", agree));
  return c.Done();
}

Outcome MetricFixedPoints() {
  Checker c;
  GenerationConfig config;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> bins(config.min_bins, config.max_bins);
  std::uniform_int_distribution<int> items(config.min_items, config.max_items);
  std::uniform_int_distribution<int> size(1, 20), cap(1, 10);
  for (int t = 0; t < 500; ++t) {
    std::vector<int> w(bins(rng)), z(items(rng));
    for (int& x : w) x = 10 * cap(rng);
    for (int& x : z) x = 5 * size(rng);
    const ProblemInstance inst("g", w, z);
    const auto greedy = GreedyLbfLif(inst);
    c.Expect(HeuristicComplexity(inst, greedy) == 0, "hc(greedy) != 0");

    auto sorted = DisplayedSolution::Identity(greedy);
    std::ranges::stable_sort(sorted.bin_order, {}, [&](int b) { return inst.capacity(b); });
    std::ranges::stable_sort(sorted.item_order, {}, [&](int i) { return inst.size(i); });
    if (inst.num_bins() >= 2 && inst.num_items() >= 2) {
      c.Expect(VisualOrderComplexity(inst, sorted) == 0.0, "sorted display has VC > 0");
    }
  }
  for (int n = 2; n <= 9; ++n) {
    std::vector<int> ones(n, 10), diag(n);
    std::iota(diag.begin(), diag.end(), 0);
    const ProblemInstance inst("d", ones, ones);
    const auto s = Solution::FromBinIndices(n, diag);
    c.Expect(DiagonalDissimilarity(inst, DisplayedSolution::Identity(s)) == 0,
             fmt::format("{}x{} diagonal has DD > 0", n, n));
  }
  const std::array<int, 7> expected = {0, 1, 1, 2, 3, 3, 4};
  const auto d = ApproximatedDiagonal(7, 5);
  for (int r = 0; r < 7; ++r) {
    for (int col = 0; col < 5; ++col) {
      c.Expect(d.at(r, col) == (col == expected[r]),
               fmt::format("7x5 diagonal differs at ({}, {})", r, col));
    }
  }
  c.Note("500 instances, 7x5 diagonal (0,1,1,2,3,3,4)");
  return c.Done();
}

Outcome DensityValidity() {
  Checker c;
  double worst = 0.0;
  for (auto family : kAllFamilies) {
    for (double sigma : {0.05, 0.103, 0.426}) {
      const int n = 400000;
      const double h = 1.0 / n;
      double sum = 0.0;
      for (int k = 0; k <= n; ++k) {
        const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        sum += w * std::exp(EmptySpaceLogDensity(k * h, family, sigma));
      }
      const double mass = sum * h / 3.0;
      worst = std::max(worst, std::abs(mass - 1.0));
      c.Expect(std::abs(mass - 1.0) <= 1e-6,
               fmt::format("{} sigma {} integrates to {:.9f}", FamilyName(family),
                           sigma, mass));
    }
  }
  for (int n = 2; n <= 9; ++n) {
    for (double alpha : {0.5, 0.984, 2.0}) {
      CcParams params = CcParams::Confirmatory();
      params.alpha = alpha;
      const BinFeatures f{n, n * std::log(1.0 / n), 0.3};
      c.Expect(std::abs(BinSurprisalOf(f, params).composition_term) < 1e-12,
               fmt::format("even split of {} not zero at alpha {}", n, alpha));
    }
  }
  for (double p : {0.043, 0.5, 0.9}) {
    CcParams params = CcParams::Confirmatory();
    params.p_geom = p;
    double total = 0.0;
    for (int n = 0; n <= 1000; ++n) {
      total += std::exp(-BinSurprisalOf({n, 0.0, 0.0}, params).count_term);
    }
    c.Expect(std::abs(total - 1.0) <= 1e-9, fmt::format("pmf at p={} sums to {}", p, total));
  }
  c.Note(fmt::format("max |mass - 1| = {:.2e}", worst));
  return c.Done();
}

Outcome PoolGeneration() {
  Checker c;
  const auto& pool = AcceptancePool();
  const auto& cfg = pool.config;
  for (const auto& e : pool.entries) {
    const auto& inst = e.instance;
    bool ok = inst.num_items() >= cfg.min_items && inst.num_items() <= cfg.max_items &&
              inst.num_bins() >= cfg.min_bins && inst.num_bins() <= cfg.max_bins &&
              inst.load_ratio() >= cfg.ratio_min - 1e-12 &&
              inst.load_ratio() <= cfg.ratio_max + 1e-12;
    const auto [zmin, zmax] = std::ranges::minmax(inst.sizes());
    const auto [wmin, wmax] = std::ranges::minmax(inst.capacities());
    ok = ok && zmax <= wmax && wmin >= zmin;
    for (int z : inst.sizes()) {
      ok = ok && z >= cfg.size_min && z <= cfg.size_max && z % cfg.size_step == 0;
    }
    for (int w : inst.capacities()) {
      ok = ok && w >= cfg.capacity_min && w <= cfg.capacity_max &&
           w % cfg.capacity_step == 0;
    }
    ok = ok && e.result.solutions.size() >= 2;
    c.Expect(ok, fmt::format("{} violates a constraint", inst.id()));
  }
  const double y = pool.report.yield();
  c.Expect(y >= 0.40 && y <= 0.85, fmt::format("yield {:.4f}", y));
  c.Note(fmt::format("{} of {} accepted, yield {:.4f}", pool.report.accepted,
                     pool.report.iterations, y));
  return c.Done();
}

// Independent linear-interpolation percentile.
double OraclePercentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double h = (v.size() - 1) * q;
  const size_t lo = static_cast<size_t>(h);
  const size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

Outcome TrialAssembly() {
  Checker c;
  const auto& pool = AcceptancePool();
  const TrialPlanner planner(pool.entries, CcParams::Confirmatory());
  const auto strata = planner.strata();

  std::array<std::array<double, 3>, 2> threshold{};
  for (int metric = 0; metric < 2; ++metric) {
    for (int s = 0; s < 3; ++s) {
      std::vector<double> values;
      for (size_t p = 0; p < pool.entries.size(); ++p) {
        if (static_cast<int>(strata[p]) != s) continue;
        const int k = static_cast<int>(pool.entries[p].result.solutions.size());
        for (int a = 0; a < k; ++a) {
          for (int b = a + 1; b < k; ++b) {
            values.push_back(metric == 0
                                 ? std::abs(planner.hc(p, a) - planner.hc(p, b))
                                 : std::abs(planner.cc(p, a) - planner.cc(p, b)));
          }
        }
      }
      threshold[metric][s] = OraclePercentile(values, 0.9);
    }
  }

  int manifests = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto trials = planner.ParticipantTrials(seed);
    ++manifests;
    c.Expect(trials.size() == 25, "manifest does not hold 25 trials");
    std::map<TrialKind, int> counts;
    for (const auto& t : trials) {
      ++counts[t.kind];
      const auto& e = pool.entries[t.problem];
      if (t.kind == TrialKind::kCatch) {
        c.Expect(t.left == t.right, "catch pair sides differ");
      }
      if (t.kind == TrialKind::kExtremizedHc || t.kind == TrialKind::kExtremizedCc) {
        const int metric = t.kind == TrialKind::kExtremizedHc ? 0 : 1;
        const double v =
            metric == 0
                ? std::abs(planner.hc(t.problem, t.left_solution) -
                           planner.hc(t.problem, t.right_solution))
                : std::abs(planner.cc(t.problem, t.left_solution) -
                           planner.cc(t.problem, t.right_solution));
        c.Expect(v >= threshold[metric][static_cast<int>(strata[t.problem])],
                 "extremized pair below the stratum's top decile");
        c.Expect(t.stratum == strata[t.problem], "stratum label mismatch");
      }
      c.Expect(t.left.solution == e.result.solutions.at(t.left_solution) &&
                   t.right.solution == e.result.solutions.at(t.right_solution),
               "pair does not show the named optima");
    }
    for (size_t k = 0; k < kAllTrialKinds.size(); ++k) {
      c.Expect(counts[kAllTrialKinds[k]] == kKindCounts[k],
               fmt::format("{} count {}", TrialKindName(kAllTrialKinds[k]),
                           counts[kAllTrialKinds[k]]));
    }

    std::vector<const TrialPair*> coherence;
    for (const auto& t : trials) {
      if (t.kind == TrialKind::kCoherence) coherence.push_back(&t);
    }
    if (coherence.size() == 3) {
      const size_t p = coherence[0]->problem;
      std::vector<double> cc;
      for (size_t s = 0; s < pool.entries[p].result.solutions.size(); ++s) {
        cc.push_back(planner.cc(p, static_cast<int>(s)));
      }
      std::vector<double> sorted = cc;
      std::sort(sorted.begin(), sorted.end());
      const double lo = cc[coherence[0]->left_solution];
      const double mid = cc[coherence[0]->right_solution];
      const double hi = cc[coherence[1]->right_solution];
      c.Expect(lo == sorted.front() && hi == sorted.back() &&
                   mid == sorted[(sorted.size() - 1) / 2],
               "coherence triplet is not min/median/max CC");
      c.Expect(coherence[1]->left_solution == coherence[0]->right_solution &&
                   coherence[2]->left_solution == coherence[0]->left_solution &&
                   coherence[2]->right_solution == coherence[1]->right_solution,
               "coherence pairs are not AB, BC, AC");
    }
  }
  c.Note(fmt::format("{} manifests checked", manifests));
  return c.Done();
}

std::vector<CorpusEntry> PoolCorpus() {
  std::vector<CorpusEntry> corpus;
  const auto& pool = AcceptancePool();
  for (size_t p = 0; p < pool.entries.size() && corpus.size() < 400; ++p) {
    for (const auto& s : pool.entries[p].result.solutions) {
      corpus.push_back({pool.entries[p].instance, s});
    }
  }
  return corpus;
}

Outcome CalibrationRecovery() {
  Checker c;
  const auto corpus = PoolCorpus();
  CcCorpus features;
  for (const auto& e : corpus) features.Add(e.instance, e.solution);

  const CcParams planted = CcParams::Exploratory();
  const auto target = features.Evaluate(planted);
  const auto corr = CalibrateCorrelation(corpus, target);
  const double r = -corr.best().loss;
  c.Expect(r >= 0.999, fmt::format("correlation {:.6f}", r));

  const auto cc = features.Evaluate(planted);
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<size_t> pick(0, corpus.size() - 1);
  std::uniform_real_distribution<double> unit;
  std::vector<ChoiceTrial> trials(10000);
  std::vector<double> diffs;
  for (auto& t : trials) {
    t.left = pick(rng);
    do {
      t.right = pick(rng);
    } while (t.right == t.left);
    diffs.push_back(cc[t.right] - cc[t.left]);
  }
  const double mean = std::accumulate(diffs.begin(), diffs.end(), 0.0) / diffs.size();
  double ss = 0.0;
  for (double d : diffs) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / (diffs.size() - 1));
  const ChoiceModelParams choice{0.136, 1.898, {0.0, -1.5, 0.0, 0.0}};
  for (size_t k = 0; k < trials.size(); ++k) {
    const auto p = PredictChoiceProbs(choice, MetricArray{0, diffs[k] / sd, 0, 0});
    trials[k].category = SampleCategory(p, unit(rng));
  }
  const auto fit = CalibrateLogLoss(corpus, trials);
  const double generator = CcLogLoss(features, trials, planted);
  c.Expect(fit.best().params.family == planted.family,
           fmt::format("log-loss winner {}", fit.best().Id()));
  c.Expect(fit.best().loss <= generator,
           fmt::format("log-loss {:.6f} vs generator {:.6f}", fit.best().loss, generator));
  c.Note(fmt::format("r = {:.6f}; log-loss {} {:.6f} <= {:.6f}", r, fit.best().Id(),
                     fit.best().loss, generator));
  return c.Done();
}

Outcome MeasureIdentities() {
  Checker c;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> score(20, 100), rt(5, 90);
  std::vector<ParticipantRecord> cohort;
  for (int j = 0; j < 12; ++j) {
    ParticipantRecord p{fmt::format("P{}", j), 0, {}};
    for (int t = 1; t <= 7; ++t) p.solves.push_back({t, score(rng), 100.0, rt(rng)});
    cohort.push_back(p);
  }
  const auto pse = ProblemSolvingEfficiency(cohort);
  const double wsum = std::accumulate(pse.weights.begin(), pse.weights.end(), 0.0);
  c.Expect(std::abs(wsum - 1.0) < 1e-12, fmt::format("PSE weights sum {}", wsum));

  for (int r = 0; r < 20; ++r) {
    for (int l = 0; l < 20; ++l) {
      const auto a = GazeBias(r, l);
      const auto b = GazeBias(l, r);
      if (r + l == 0) {
        c.Expect(!a && !b, "R+L=0 must be undefined");
      } else {
        c.Expect(a && b && *a == -*b, "gaze bias is not antisymmetric");
      }
    }
  }

  // Coherent exactly when some strict order of A, B, C agrees with all three.
  const Side L = Side::kLeft, R = Side::kRight;
  for (int mask = 0; mask < 8; ++mask) {
    const Side ab = mask & 1 ? R : L, bc = mask & 2 ? R : L, ac = mask & 4 ? R : L;
    std::array<int, 3> rank = {0, 1, 2};
    bool transitive = false;
    do {
      const bool fits = (rank[0] < rank[1]) == (ab == L) &&
                        (rank[1] < rank[2]) == (bc == L) &&
                        (rank[0] < rank[2]) == (ac == L);
      transitive |= fits;
    } while (std::next_permutation(rank.begin(), rank.end()));
    c.Expect(IsCoherent(ab, bc, ac) == transitive,
             fmt::format("coherence pattern {} disagrees", mask));
  }

  auto session = [](const std::string& id) {
    std::vector<TrialRecord> out;
    for (int t = 1; t <= 25; ++t) {
      TrialRecord r;
      r.trial.participant_id = id;
      r.trial.trial_index = t;
      r.trial.kind = (t == 5 || t == 18) ? TrialKind::kCatch : TrialKind::kRandom;
      r.choice = r.trial.kind == TrialKind::kCatch ? kDuplicateChoice : t % 4;
      r.rt_ms = 1000;
      r.gaze_left = 3;
      r.gaze_right = 4;
      out.push_back(r);
    }
    return out;
  };
  std::vector<TrialRecord> records;
  auto clean = session("clean");
  auto incomplete = session("incomplete");
  incomplete.resize(20);
  auto missed = session("missed");
  missed[4].choice = 0;
  missed[17].choice = 3;
  auto overuse = session("overuse");
  overuse[0].choice = kDuplicateChoice;
  overuse[1].choice = kDuplicateChoice;
  auto stray = session("stray");
  stray[0].choice = kDuplicateChoice;
  stray[1].gaze_left = stray[1].gaze_right = 0;
  for (const auto* s : {&clean, &incomplete, &missed, &overuse, &stray}) {
    records.insert(records.end(), s->begin(), s->end());
  }
  const auto ex = ApplyExclusions(records);
  c.Expect(ex.retained_participants == std::set<std::string>{"clean", "stray"},
           "wrong participants retained");
  std::map<std::string, ExclusionRule> why;
  for (const auto& a : ex.audit) {
    if (!a.trial_index) why[a.participant_id] = a.rule;
  }
  c.Expect(why["incomplete"] == ExclusionRule::kIncomplete, "incomplete rule");
  c.Expect(why["missed"] == ExclusionRule::kMissedCatch, "catch rule");
  c.Expect(why["overuse"] == ExclusionRule::kDuplicateOveruse, "duplicate rule");
  c.Expect(ex.retained.size() == 49 && ex.gaze_retained.size() == 48,
           fmt::format("retained {} / gaze {}", ex.retained.size(),
                       ex.gaze_retained.size()));
  c.Note(fmt::format("PSE weight sum {:.15f}", wsum));
  return c.Done();
}

int Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

// Runs the command-line pipeline into `dir`; returns file contents by name.
std::map<std::string, std::string> RunPipeline(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto p = [&](const std::string& name) { return (dir / name).string(); };
  const std::vector<std::vector<std::string>> steps = {
      {"gen-pool", "--seed", "11", "--iterations", "2000", "--out", p("pool.jsonl")},
      {"gen-trials", "--pool", p("pool.jsonl"), "--participants", "8", "--seed", "12",
       "--out", p("trials")},
      {"simulate", "--manifest", p("trials/manifest.csv"), "--problem-solving",
       p("trials/problem_solving.csv"), "--seed", "13", "--out", p("sim")},
      {"predict", "--log", p("sim/trial_log.csv"), "--participants",
       p("sim/participants.csv"), "--out", p("predictions.csv")},
      {"analyze", "--log", p("sim/trial_log.csv"), "--participants",
       p("sim/participants.csv"), "--out", p("analysis")},
      {"calibrate-cc", "--target", "logloss", "--pool", p("pool.jsonl"), "--log",
       p("sim/trial_log.csv"), "--params-out", p("cc_params.json"), "--out",
       p("calibration.csv")},
  };
  for (const auto& args : steps) {
    if (Cli(args) != 0) throw std::runtime_error("pipeline step failed: " + args[0]);
  }
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      files[fs::relative(entry.path(), dir).string()] = ReadTextFile(entry.path());
    }
  }
  return files;
}

Outcome Determinism() {
  Checker c;
  const auto root = fs::temp_directory_path() / "mssp_acceptance";
  const auto a = RunPipeline(root / "a");
  const auto b = RunPipeline(root / "b");
  c.Expect(a.size() == b.size() && a.size() >= 10,
           fmt::format("{} vs {} output files", a.size(), b.size()));
  size_t bytes = 0;
  for (const auto& [name, content] : a) {
    const auto it = b.find(name);
    c.Expect(it != b.end() && it->second == content, name + " differs");
    bytes += content.size();
  }
  fs::remove_all(root);
  c.Note(fmt::format("{} files, {} bytes identical", a.size(), bytes));
  return c.Done();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"odds ratios", OddsRatios},
      {"RT effect", RtEffect},
      {"choice curves", ChoiceCurves},
      {"solver oracle", SolverOracle},
      {"metric fixed points", MetricFixedPoints},
      {"CC density validity", DensityValidity},
      {"pool generation", PoolGeneration},
      {"trial assembly", TrialAssembly},
      {"calibration plant-and-recover", CalibrationRecovery},
      {"measures identities", MeasureIdentities},
      {"determinism", Determinism},
  };
  int failures = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    failures += o.pass ? 0 : 1;
    std::cout << fmt::format("[{}] criterion {:>2} {:<30} {:7.2f}s  {}\n",
                             o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                             secs, o.detail)
              << std::flush;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures,
                           criteria.size());
  return failures == 0 ? 0 : 1;
}
