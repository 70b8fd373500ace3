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

// Exact solving of small multiple subset sum instances: the greedy
// reference packing, a branch-and-bound enumerator of all distinct optima,
// and an exhaustive oracle used to check it.

#pragma once

#include <cstdint>
#include <vector>

#include "mssp/core.hpp"

namespace mssp {

// Bins in descending capacity, each filled by scanning the remaining items in
// descending size and placing every item that still fits. Both sorts are
// stable, so ties keep input order.
Solution GreedyLbfLif(const ProblemInstance& instance);

struct EnumerationOptions {
  int cap = 100;                          // distinct optima to keep
  std::int64_t node_budget = 1'000'000;   // search nodes over both phases
};

struct EnumerationResult {
  std::int64_t optimal_score = 0;
  // Distinct by canonical key, sorted by canonical key.
  std::vector<Solution> solutions;
  // Set when more than `cap` distinct optima exist.
  bool truncated = false;
  std::int64_t nodes = 0;
};

// Branch and bound over per-item choices (a bin or unassigned). Throws an
// Error of class kBudget when the node budget runs out.
EnumerationResult EnumerateOptima(const ProblemInstance& instance,
                                  const EnumerationOptions& options = {});

// Exhaustive search over all (m+1)^n assignments. Throws a validation Error
// when that count exceeds max_assignments.
EnumerationResult BruteForceOptima(const ProblemInstance& instance,
                                   std::int64_t max_assignments = 10'000'000);

// Greedy score over optimal score; 1.0 when the optimum is 0.
double HeuristicOptimality(const ProblemInstance& instance,
                           std::int64_t optimal_score);
double HeuristicOptimality(const ProblemInstance& instance);

}  // namespace mssp
