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

#include "mssp/trialgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "mssp/error.hpp"
#include "mssp/parallel.hpp"

namespace mssp {
namespace {

int UniformInt(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

int GridValue(std::mt19937_64& rng, int lo, int hi, int step) {
  return lo + step * UniformInt(rng, 0, (hi - lo) / step);
}

RegimeReport Screen(const ProblemInstance& instance,
                    const GenerationConfig& config) {
  RegimeReport report;
  auto fail = [&](std::string s) { report.failures.push_back(std::move(s)); };
  const auto [min_size, max_size] = std::ranges::minmax(instance.sizes());
  const auto [min_cap, max_cap] = std::ranges::minmax(instance.capacities());
  if (max_size > max_cap) {
    fail(fmt::format("largest item {} exceeds largest bin {}", max_size,
                     max_cap));
  }
  if (min_cap < min_size) {
    fail(fmt::format("smallest bin {} below smallest item {}", min_cap,
                     min_size));
  }
  const double ratio = instance.load_ratio();
  if (ratio < config.ratio_min - 1e-12 || ratio > config.ratio_max + 1e-12) {
    fail(fmt::format("load ratio {:.4f} outside [{}, {}]", ratio,
                     config.ratio_min, config.ratio_max));
  }
  return report;
}

std::vector<size_t> ByDifficulty(std::span<const PoolEntry> pool) {
  std::vector<size_t> order(pool.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::ranges::stable_sort(order, [&](size_t a, size_t b) {
    return pool[a].instance.load_ratio() < pool[b].instance.load_ratio();
  });
  return order;
}

TrialPair MakePair(size_t problem, Stratum stratum, TrialKind kind,
                   const EnumerationResult& result, int left, int right) {
  TrialPair t;
  t.problem = problem;
  t.stratum = stratum;
  t.kind = kind;
  t.left_solution = left;
  t.right_solution = right;
  t.left = DisplayedSolution::Identity(result.solutions.at(left));
  t.right = DisplayedSolution::Identity(result.solutions.at(right));
  return t;
}

std::vector<int> NonIdentityPermutation(int size, std::mt19937_64& rng) {
  auto order = IdentityPermutation(size);
  if (size < 2) return order;
  const auto identity = order;
  do {
    std::shuffle(order.begin(), order.end(), rng);
  } while (order == identity);
  return order;
}

}  // namespace

void GenerationConfig::Validate() const {
  auto require = [](bool ok, std::string_view what) {
    if (!ok) throw ValidationError(fmt::format("generation config: {}", what));
  };
  require(iterations >= 0, "iterations must be nonnegative");
  require(min_items >= 1 && min_items <= max_items, "item-count range");
  require(min_bins >= 1 && min_bins <= max_bins, "bin-count range");
  require(size_step > 0 && size_min > 0 && size_min <= size_max,
          "size grid");
  require(capacity_step > 0 && capacity_min > 0 &&
              capacity_min <= capacity_max,
          "capacity grid");
  require(ratio_min > 0.0 && ratio_min <= ratio_max, "ratio range");
  require(cap >= 2, "cap must allow two optima");
  require(node_budget > 0, "node budget must be positive");
}

std::mt19937_64 DerivedRng(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t index) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed),   hi(seed),  lo(stream),
                    hi(stream), lo(index), hi(index)};
  return std::mt19937_64(seq);
}

std::optional<std::vector<int>> AllocateCapacities(
    int num_bins, int target, const GenerationConfig& config,
    std::mt19937_64& rng) {
  const int lo = config.capacity_min;
  const int hi = config.capacity_max;
  const int step = config.capacity_step;
  if (target < num_bins * lo || target > num_bins * hi ||
      (target - num_bins * lo) % step != 0) {
    return std::nullopt;
  }
  std::vector<int> caps(num_bins);
  int total = 0;
  for (int& c : caps) {
    c = GridValue(rng, lo, hi, step);
    total += c;
  }
  std::vector<int> eligible;
  while (total != target) {
    const int dir = total < target ? 1 : -1;
    eligible.clear();
    for (int i = 0; i < num_bins; ++i) {
      if (dir > 0 ? caps[i] + step <= hi : caps[i] - step >= lo) {
        eligible.push_back(i);
      }
    }
    const int pick = eligible[UniformInt(rng, 0, static_cast<int>(eligible.size()) - 1)];
    caps[pick] += dir * step;
    total += dir * step;
  }
  return caps;
}

std::string_view OutcomeName(IterationOutcome outcome) {
  switch (outcome) {
    case IterationOutcome::kAccepted: return "accepted";
    case IterationOutcome::kAllocation: return "allocation";
    case IterationOutcome::kConstraints: return "constraints";
    case IterationOutcome::kSingleOptimum: return "single_optimum";
    case IterationOutcome::kBudget: return "budget";
  }
  return "unknown";
}

IterationOutcome GenerateIteration(const GenerationConfig& config,
                                   std::int64_t iteration,
                                   std::optional<PoolEntry>& entry) {
  entry.reset();
  auto rng = DerivedRng(config.seed, kPoolStream,
                        static_cast<std::uint64_t>(iteration));
  const int n = UniformInt(rng, config.min_items, config.max_items);
  const int m = UniformInt(rng, config.min_bins, config.max_bins);
  std::vector<int> sizes(n);
  for (int& z : sizes) {
    z = GridValue(rng, config.size_min, config.size_max, config.size_step);
  }
  const double ratio =
      std::uniform_real_distribution<double>(config.ratio_min,
                                             config.ratio_max)(rng);
  const double sum = std::accumulate(sizes.begin(), sizes.end(), 0.0);
  const int step = config.capacity_step;
  const int target = step * static_cast<int>(std::lround(sum / ratio / step));
  auto caps = AllocateCapacities(m, target, config, rng);
  if (!caps) return IterationOutcome::kAllocation;

  ProblemInstance instance(fmt::format("p{}", iteration), std::move(*caps),
                           std::move(sizes));
  if (!Screen(instance, config).ok()) return IterationOutcome::kConstraints;

  EnumerationResult result;
  try {
    result = EnumerateOptima(instance, {config.cap, config.node_budget});
  } catch (const Error& e) {
    if (e.error_class() == ErrorClass::kBudget) return IterationOutcome::kBudget;
    throw;
  }
  if (result.solutions.size() < 2) return IterationOutcome::kSingleOptimum;
  entry = PoolEntry{std::move(instance), std::move(result)};
  return IterationOutcome::kAccepted;
}

namespace {

Pool Assemble(const GenerationConfig& config,
              std::vector<IterationOutcome>& outcomes,
              std::vector<std::optional<PoolEntry>>& entries) {
  Pool pool;
  pool.config = config;
  pool.report.iterations = config.iterations;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i] == IterationOutcome::kAccepted) {
      pool.entries.push_back(std::move(*entries[i]));
    } else {
      ++pool.report.rejections[std::string(OutcomeName(outcomes[i]))];
    }
  }
  pool.report.accepted = static_cast<int>(pool.entries.size());
  return pool;
}

}  // namespace

Pool GeneratePool(const GenerationConfig& config) {
  config.Validate();
  std::vector<IterationOutcome> outcomes(config.iterations);
  std::vector<std::optional<PoolEntry>> entries(config.iterations);
  ParallelFor(config.iterations, [&](std::int64_t i) {
    outcomes[i] = GenerateIteration(config, i, entries[i]);
  });
  return Assemble(config, outcomes, entries);
}

Pool GeneratePoolSerial(const GenerationConfig& config) {
  config.Validate();
  std::vector<IterationOutcome> outcomes(config.iterations);
  std::vector<std::optional<PoolEntry>> entries(config.iterations);
  for (int i = 0; i < config.iterations; ++i) {
    outcomes[i] = GenerateIteration(config, i, entries[i]);
  }
  return Assemble(config, outcomes, entries);
}

std::string_view StratumName(Stratum s) {
  switch (s) {
    case Stratum::kLow: return "low";
    case Stratum::kMedium: return "medium";
    case Stratum::kHigh: return "high";
  }
  return "unknown";
}

std::vector<Stratum> DifficultyStrata(std::span<const PoolEntry> pool) {
  const auto order = ByDifficulty(pool);
  std::vector<Stratum> strata(pool.size());
  for (size_t r = 0; r < order.size(); ++r) {
    strata[order[r]] = static_cast<Stratum>(3 * r / order.size());
  }
  return strata;
}

double Percentile(std::vector<double> values, double q) {
  if (values.empty()) throw ValidationError("percentile of an empty set");
  if (!(q >= 0.0 && q <= 100.0)) {
    throw ValidationError(fmt::format("percentile {} outside [0, 100]", q));
  }
  std::ranges::sort(values);
  const double h = (values.size() - 1) * q / 100.0;
  const auto lo = static_cast<size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - lo) * (values[lo + 1] - values[lo]);
}

std::vector<ProblemSolvingTrial> SelectProblemSolvingTrials(
    std::span<const PoolEntry> pool, int k) {
  if (k < 2) throw ValidationError("need at least two quantiles");
  if (static_cast<int>(pool.size()) < k) {
    throw ValidationError(fmt::format(
        "pool of {} problems is smaller than the {} requested trials",
        pool.size(), k));
  }
  const auto order = ByDifficulty(pool);
  std::vector<ProblemSolvingTrial> out;
  for (int q = 0; q < k; ++q) {
    const double at = static_cast<double>(q) / (k - 1) * (pool.size() - 1);
    const size_t problem = order[static_cast<size_t>(std::lround(at))];
    out.push_back({problem, pool[problem].result.solutions.at(0)});
  }
  return out;
}

std::string_view TrialKindName(TrialKind kind) {
  switch (kind) {
    case TrialKind::kExtremizedHc: return "extremized_hc";
    case TrialKind::kExtremizedCc: return "extremized_cc";
    case TrialKind::kRandom: return "random";
    case TrialKind::kDuplicatedRandom: return "duplicated_random";
    case TrialKind::kRandomSame: return "random_same";
    case TrialKind::kCatch: return "catch";
    case TrialKind::kCoherence: return "coherence";
  }
  return "unknown";
}

TrialKind ParseTrialKind(std::string_view name) {
  for (auto kind : kAllTrialKinds) {
    if (TrialKindName(kind) == name) return kind;
  }
  throw ValidationError(fmt::format("unknown trial kind '{}'", name));
}

DisplayedSolution VisualManipulation(const Solution& solution,
                                     std::mt19937_64& rng) {
  DisplayedSolution d = DisplayedSolution::Identity(solution);
  d.bin_order = NonIdentityPermutation(solution.num_bins(), rng);
  d.item_order = NonIdentityPermutation(solution.num_items(), rng);
  return d;
}

TrialPlanner::TrialPlanner(std::span<const PoolEntry> pool,
                           const CcParams& cc_params)
    : pool_(pool), strata_(DifficultyStrata(pool)) {
  cc_params.Validate();
  hc_.resize(pool.size());
  cc_.resize(pool.size());
  ParallelFor(static_cast<std::int64_t>(pool.size()), [&](std::int64_t p) {
    const auto& e = pool[p];
    for (const auto& s : e.result.solutions) {
      hc_[p].push_back(HeuristicComplexity(e.instance, s));
      cc_[p].push_back(CompositionalComplexity(e.instance, s, cc_params));
    }
  });

  for (int metric = 0; metric < 2; ++metric) {
    for (int s = 0; s < 3; ++s) {
      std::vector<double> values;
      std::vector<Candidate> all;
      for (size_t p = 0; p < pool.size(); ++p) {
        if (static_cast<int>(strata_[p]) != s) continue;
        const int k = static_cast<int>(hc_[p].size());
        for (int a = 0; a < k; ++a) {
          for (int b = a + 1; b < k; ++b) {
            values.push_back(metric == 0 ? std::abs(hc_[p][a] - hc_[p][b])
                                         : std::abs(cc_[p][a] - cc_[p][b]));
            all.push_back({p, a, b});
          }
        }
      }
      if (values.empty()) {
        threshold_[metric][s] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      const double t = Percentile(values, 90.0);
      threshold_[metric][s] = t;
      for (size_t c = 0; c < all.size(); ++c) {
        if (values[c] >= t) extreme_[metric][s].push_back(all[c]);
      }
    }
  }

  // Catch trials: the two lowest-difficulty problems, first optimum twice.
  const auto order = ByDifficulty(pool);
  for (size_t r = 0; r < std::min<size_t>(2, order.size()); ++r) {
    const size_t p = order[r];
    catch_.push_back(MakePair(p, strata_[p], TrialKind::kCatch,
                              pool[p].result, 0, 0));
  }

  // Coherence trials: a medium problem with a wide, symmetric CC spread.
  std::vector<size_t> candidates;
  std::vector<double> ranges;
  for (size_t p = 0; p < pool.size(); ++p) {
    if (strata_[p] != Stratum::kMedium || cc_[p].size() < 3) continue;
    const auto [lo, hi] = std::ranges::minmax(cc_[p]);
    candidates.push_back(p);
    ranges.push_back(hi - lo);
  }
  if (!candidates.empty()) {
    const double cutoff = Percentile(ranges, 95.0);
    size_t chosen = pool.size();
    double best = std::numeric_limits<double>::infinity();
    for (size_t c = 0; c < candidates.size(); ++c) {
      if (ranges[c] < cutoff) continue;
      std::vector<double> v = cc_[candidates[c]];
      std::ranges::sort(v);
      const size_t k = v.size();
      const double median =
          k % 2 == 1 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
      const double mean = std::accumulate(v.begin(), v.end(), 0.0) / k;
      const double asymmetry = std::abs(median - mean);
      if (asymmetry < best) {
        best = asymmetry;
        chosen = candidates[c];
      }
    }
    std::vector<int> by_cc(cc_[chosen].size());
    std::iota(by_cc.begin(), by_cc.end(), 0);
    std::ranges::stable_sort(by_cc, [&](int a, int b) {
      return cc_[chosen][a] < cc_[chosen][b];
    });
    const int lo = by_cc.front();
    const int mid = by_cc[(by_cc.size() - 1) / 2];
    const int hi = by_cc.back();
    for (auto [a, b] : {std::pair{lo, mid}, std::pair{mid, hi},
                        std::pair{lo, hi}}) {
      coherence_.push_back(MakePair(chosen, strata_[chosen],
                                    TrialKind::kCoherence,
                                    pool[chosen].result, a, b));
    }
  }
}

const std::vector<TrialPlanner::Candidate>& TrialPlanner::Extreme(
    TrialKind metric, Stratum s) const {
  if (metric != TrialKind::kExtremizedHc && metric != TrialKind::kExtremizedCc) {
    throw ValidationError("extreme pairs exist only for the HC and CC kinds");
  }
  return extreme_[metric == TrialKind::kExtremizedHc ? 0 : 1]
                 [static_cast<int>(s)];
}

double TrialPlanner::ExtremeThreshold(TrialKind metric, Stratum s) const {
  Extreme(metric, s);
  return threshold_[metric == TrialKind::kExtremizedHc ? 0 : 1]
                   [static_cast<int>(s)];
}

std::vector<TrialPair> TrialPlanner::CatchTrials() const {
  if (catch_.size() < 2) {
    throw ValidationError("catch trials need at least two problems");
  }
  return catch_;
}

std::vector<TrialPair> TrialPlanner::CoherenceTrials() const {
  if (coherence_.empty()) {
    throw ValidationError(
        "coherence trials: no medium-difficulty problem with three optima");
  }
  return coherence_;
}

std::vector<TrialPair> TrialPlanner::ParticipantTrials(
    std::uint64_t participant_seed) const {
  const auto shared_catch = CatchTrials();
  const auto shared_coherence = CoherenceTrials();
  auto rng = DerivedRng(participant_seed, kTrialStream, 0);
  std::vector<TrialPair> sampled;

  for (auto metric : {TrialKind::kExtremizedHc, TrialKind::kExtremizedCc}) {
    for (int s = 0; s < 3; ++s) {
      const auto& list = Extreme(metric, static_cast<Stratum>(s));
      if (list.size() < 2) {
        throw ValidationError(fmt::format(
            "{} trials: stratum '{}' has {} top-decile pairs, need 2",
            TrialKindName(metric), StratumName(static_cast<Stratum>(s)),
            list.size()));
      }
      const int first = UniformInt(rng, 0, static_cast<int>(list.size()) - 1);
      int second = UniformInt(rng, 0, static_cast<int>(list.size()) - 2);
      if (second >= first) ++second;
      for (int pick : {first, second}) {
        const auto& c = list[pick];
        const bool swap = (rng() & 1) != 0;
        sampled.push_back(MakePair(c.problem, strata_[c.problem], metric,
                                   pool_[c.problem].result,
                                   swap ? c.b : c.a, swap ? c.a : c.b));
      }
    }
  }

  // Item counts present in the pool, dealt out to spread problem size.
  std::vector<int> counts;
  for (const auto& e : pool_) counts.push_back(e.instance.num_items());
  std::ranges::sort(counts);
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
  std::shuffle(counts.begin(), counts.end(), rng);

  auto pick_problem = [&](std::optional<Stratum> stratum, int items) {
    std::vector<size_t> exact, loose;
    for (size_t p = 0; p < pool_.size(); ++p) {
      if (stratum && strata_[p] != *stratum) continue;
      loose.push_back(p);
      if (pool_[p].instance.num_items() == items) exact.push_back(p);
    }
    const auto& from = exact.empty() ? loose : exact;
    if (from.empty()) {
      throw ValidationError(fmt::format("random trials: stratum '{}' is empty",
                                        StratumName(*stratum)));
    }
    return from[UniformInt(rng, 0, static_cast<int>(from.size()) - 1)];
  };

  std::vector<TrialPair> random;
  for (int s = 0; s < 3; ++s) {
    const size_t p = pick_problem(static_cast<Stratum>(s),
                                  counts[s % counts.size()]);
    const int k = static_cast<int>(pool_[p].result.solutions.size());
    const int a = UniformInt(rng, 0, k - 1);
    int b = UniformInt(rng, 0, k - 2);
    if (b >= a) ++b;
    random.push_back(MakePair(p, strata_[p], TrialKind::kRandom,
                              pool_[p].result, a, b));
  }
  sampled.insert(sampled.end(), random.begin(), random.end());

  for (int r = 0; r < 3; ++r) {
    TrialPair t = random[r];
    t.kind = TrialKind::kDuplicatedRandom;
    if (r != 1) t.left = VisualManipulation(t.left.solution, rng);
    if (r != 0) t.right = VisualManipulation(t.right.solution, rng);
    sampled.push_back(std::move(t));
  }

  for (int r = 0; r < 2; ++r) {
    const size_t p = pick_problem(std::nullopt, counts[r % counts.size()]);
    const int k = static_cast<int>(pool_[p].result.solutions.size());
    const int a = UniformInt(rng, 0, k - 1);
    TrialPair t =
        MakePair(p, strata_[p], TrialKind::kRandomSame, pool_[p].result, a, a);
    if (r == 0) {
      t.right = VisualManipulation(t.right.solution, rng);
    } else {
      t.left = VisualManipulation(t.left.solution, rng);
    }
    sampled.push_back(std::move(t));
  }

  std::shuffle(sampled.begin(), sampled.end(), rng);
  std::vector<std::optional<TrialPair>> slots(kTrialsPerParticipant);
  for (size_t c = 0; c < kCatchSlots.size(); ++c) {
    slots[kCatchSlots[c] - 1] = shared_catch[c];
  }
  for (size_t c = 0; c < kCoherenceSlots.size(); ++c) {
    slots[kCoherenceSlots[c] - 1] = shared_coherence[c];
  }
  std::vector<TrialPair> out;
  auto next = sampled.begin();
  for (auto& slot : slots) {
    out.push_back(slot ? std::move(*slot) : std::move(*next++));
  }
  return out;
}

std::vector<TrialPair> GenerateEvaluationTrials(std::span<const PoolEntry> pool,
                                                std::uint64_t participant_seed,
                                                const CcParams& cc_params) {
  return TrialPlanner(pool, cc_params).ParticipantTrials(participant_seed);
}

}  // namespace mssp
