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

// Stimulus generation: the problem pool, the problem-solving trials and the
// per-participant evaluation sequence.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mssp/core.hpp"
#include "mssp/metrics.hpp"
#include "mssp/solver.hpp"

namespace mssp {

struct GenerationConfig {
  int iterations = 20000;
  int min_items = 7;
  int max_items = 9;
  int min_bins = 4;
  int max_bins = 6;
  int size_min = 5;
  int size_max = 100;
  int size_step = 5;
  int capacity_min = 10;
  int capacity_max = 100;
  int capacity_step = 10;
  double ratio_min = 0.8;
  double ratio_max = 1.0;
  int cap = 100;
  std::int64_t node_budget = 1'000'000;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Independent generator for (seed, stream, index); the same triple always
// yields the same sequence regardless of thread scheduling.
std::mt19937_64 DerivedRng(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t index);

inline constexpr std::uint64_t kPoolStream = 1;
inline constexpr std::uint64_t kTrialStream = 2;
inline constexpr std::uint64_t kSimulationStream = 3;
inline constexpr std::uint64_t kParticipantStream = 4;

// Draws capacities on the grid summing to `target`: a uniform grid value per
// bin, then +/- one step on random bins that still have room. Returns
// nullopt when the target is outside [m * min, m * max].
std::optional<std::vector<int>> AllocateCapacities(int num_bins, int target,
                                                   const GenerationConfig& config,
                                                   std::mt19937_64& rng);

struct PoolEntry {
  ProblemInstance instance;
  EnumerationResult result;
};

struct YieldReport {
  int iterations = 0;
  int accepted = 0;
  std::map<std::string, int> rejections;  // reason -> count

  double yield() const {
    return iterations == 0 ? 0.0 : static_cast<double>(accepted) / iterations;
  }
};

struct Pool {
  GenerationConfig config;
  std::vector<PoolEntry> entries;
  YieldReport report;
};

enum class IterationOutcome {
  kAccepted,
  kAllocation,     // capacity target not reachable on the grid
  kConstraints,    // fails an instance constraint
  kSingleOptimum,  // fewer than two distinct optima
  kBudget,         // solver node budget exhausted
};

std::string_view OutcomeName(IterationOutcome outcome);

// One simulation iteration; `entry` is set only when accepted.
IterationOutcome GenerateIteration(const GenerationConfig& config,
                                   std::int64_t iteration,
                                   std::optional<PoolEntry>& entry);

Pool GeneratePool(const GenerationConfig& config);
Pool GeneratePoolSerial(const GenerationConfig& config);

enum class Stratum { kLow = 0, kMedium = 1, kHigh = 2 };
std::string_view StratumName(Stratum s);

// PD tertiles by rank: after a stable sort on PD, rank r of N falls in
// stratum floor(3r / N).
std::vector<Stratum> DifficultyStrata(std::span<const PoolEntry> pool);

// numpy's default (linear) percentile, q in [0, 100].
double Percentile(std::vector<double> values, double q);

struct ProblemSolvingTrial {
  size_t problem = 0;  // pool index
  Solution solution;
};

// Pool entries at the PD quantiles 0, 1/(k-1), ..., 1 (index
// round(q (N - 1)) after a stable PD sort), each with its first optimum.
std::vector<ProblemSolvingTrial> SelectProblemSolvingTrials(
    std::span<const PoolEntry> pool, int k = 7);

enum class TrialKind {
  kExtremizedHc,
  kExtremizedCc,
  kRandom,
  kDuplicatedRandom,
  kRandomSame,
  kCatch,
  kCoherence,
};

inline constexpr std::array<TrialKind, 7> kAllTrialKinds = {
    TrialKind::kExtremizedHc, TrialKind::kExtremizedCc,
    TrialKind::kRandom,       TrialKind::kDuplicatedRandom,
    TrialKind::kRandomSame,   TrialKind::kCatch,
    TrialKind::kCoherence};
// Trials of each kind in one participant sequence, in kAllTrialKinds order.
inline constexpr std::array<int, 7> kKindCounts = {6, 6, 3, 3, 2, 2, 3};
inline constexpr int kTrialsPerParticipant = 25;

std::string_view TrialKindName(TrialKind kind);
TrialKind ParseTrialKind(std::string_view name);

struct TrialPair {
  size_t problem = 0;
  int left_solution = 0;  // index into the problem's optima
  int right_solution = 0;
  DisplayedSolution left;
  DisplayedSolution right;
  TrialKind kind = TrialKind::kRandom;
  Stratum stratum = Stratum::kLow;
};

// Per-solution metrics and extremized-pair candidates, computed once per
// pool and shared by all participants.
class TrialPlanner {
 public:
  TrialPlanner(std::span<const PoolEntry> pool, const CcParams& cc_params);

  std::span<const PoolEntry> pool() const { return pool_; }
  const std::vector<Stratum>& strata() const { return strata_; }
  int hc(size_t problem, int solution) const {
    return hc_[problem][solution];
  }
  double cc(size_t problem, int solution) const {
    return cc_[problem][solution];
  }

  struct Candidate {
    size_t problem;
    int a;
    int b;
  };
  // Pairs whose |difference| reaches the stratum's 90th percentile.
  const std::vector<Candidate>& Extreme(TrialKind metric, Stratum s) const;
  double ExtremeThreshold(TrialKind metric, Stratum s) const;

  // Shared by every participant.
  std::vector<TrialPair> CatchTrials() const;
  std::vector<TrialPair> CoherenceTrials() const;

  std::vector<TrialPair> ParticipantTrials(std::uint64_t participant_seed) const;

 private:
  std::span<const PoolEntry> pool_;
  std::vector<Stratum> strata_;
  std::vector<std::vector<int>> hc_;
  std::vector<std::vector<double>> cc_;
  std::array<std::array<std::vector<Candidate>, 3>, 2> extreme_;
  std::array<std::array<double, 3>, 2> threshold_{};
  std::vector<TrialPair> catch_;
  std::vector<TrialPair> coherence_;
};

// 1-based positions of the shared trials in a 25-trial sequence.
inline constexpr std::array<int, 2> kCatchSlots = {5, 18};
inline constexpr std::array<int, 3> kCoherenceSlots = {9, 14, 22};

std::vector<TrialPair> GenerateEvaluationTrials(std::span<const PoolEntry> pool,
                                                std::uint64_t participant_seed,
                                                const CcParams& cc_params);

// A uniformly random non-identity reordering of both bins and items.
DisplayedSolution VisualManipulation(const Solution& solution,
                                     std::mt19937_64& rng);

}  // namespace mssp
