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

#include "mssp/solver.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "mssp/error.hpp"

namespace mssp {
namespace {

std::vector<int> StableDescendingOrder(std::span<const int> values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::ranges::stable_sort(order,
                           [&](int a, int b) { return values[a] > values[b]; });
  return order;
}

// Depth-first search over items in descending size. Two symmetry rules are
// applied; together they keep at least one member of every canonical class:
//   * a run of equal-size items takes non-decreasing choices (unassigned
//     counts as the largest choice);
//   * an item entering an empty bin uses the lowest-indexed empty bin among
//     bins of equal capacity.
class BranchAndBound {
 public:
  BranchAndBound(const ProblemInstance& instance,
                 const EnumerationOptions& options)
      : instance_(instance),
        options_(options),
        m_(instance.num_bins()),
        n_(instance.num_items()),
        order_(StableDescendingOrder(instance.sizes())),
        suffix_(n_ + 1, 0),
        capacity_group_(m_),
        load_(m_, 0),
        count_(m_, 0),
        choice_(n_, 0) {
    for (int k = n_ - 1; k >= 0; --k) {
      suffix_[k] = suffix_[k + 1] + instance.size(order_[k]);
    }
    for (int i = 0; i < m_; ++i) {
      capacity_group_[i] = i;
      for (int e = 0; e < i; ++e) {
        if (instance.capacity(e) == instance.capacity(i)) {
          capacity_group_[i] = capacity_group_[e];
          break;
        }
      }
    }
    total_capacity_ = instance.total_capacity();
  }

  EnumerationResult Run() {
    best_ = ObjectiveScore(instance_, GreedyLbfLif(instance_));
    enumerating_ = false;
    Search(0, 0);
    enumerating_ = true;
    Search(0, 0);
    EnumerationResult result;
    result.optimal_score = best_;
    result.truncated = truncated_;
    result.nodes = nodes_;
    for (auto& [key, sol] : found_) result.solutions.push_back(std::move(sol));
    return result;
  }

 private:
  // Returns false once enumeration should stop.
  bool Search(int k, std::int64_t score) {
    if (++nodes_ > options_.node_budget) {
      throw Error(ErrorClass::kBudget,
                  fmt::format("node budget {} exhausted on instance '{}'",
                              options_.node_budget, instance_.id()));
    }
    const std::int64_t bound =
        score + std::min(suffix_[k], total_capacity_ - score);
    if (enumerating_ ? bound < best_ : bound <= best_) return true;
    if (k == n_) {
      if (!enumerating_) {
        best_ = score;
        return true;
      }
      return Record();
    }
    const int item = order_[k];
    const int size = instance_.size(item);
    const bool tied = k > 0 && instance_.size(order_[k - 1]) == size;
    const int min_choice = tied ? choice_[k - 1] : 0;
    for (int b = min_choice; b < m_; ++b) {
      if (load_[b] + size > instance_.capacity(b)) continue;
      if (count_[b] == 0 && HasLowerEmptyTwin(b)) continue;
      choice_[k] = b;
      load_[b] += size;
      ++count_[b];
      const bool go_on = Search(k + 1, score + size);
      load_[b] -= size;
      --count_[b];
      if (!go_on) return false;
    }
    choice_[k] = m_;
    return Search(k + 1, score);
  }

  bool HasLowerEmptyTwin(int b) const {
    for (int e = 0; e < b; ++e) {
      if (capacity_group_[e] == capacity_group_[b] && count_[e] == 0) {
        return true;
      }
    }
    return false;
  }

  bool Record() {
    std::vector<int> bins(n_, kUnassigned);
    for (int k = 0; k < n_; ++k) {
      if (choice_[k] < m_) bins[order_[k]] = choice_[k];
    }
    Solution sol = Solution::FromBinIndices(m_, bins);
    CanonicalKey key = CanonicalForm(instance_, sol);
    if (found_.contains(key)) return true;
    if (static_cast<int>(found_.size()) >= options_.cap) {
      truncated_ = true;
      return false;
    }
    found_.emplace(std::move(key), std::move(sol));
    return true;
  }

  const ProblemInstance& instance_;
  const EnumerationOptions& options_;
  const int m_;
  const int n_;
  std::vector<int> order_;
  std::vector<std::int64_t> suffix_;
  std::vector<int> capacity_group_;
  std::vector<std::int64_t> load_;
  std::vector<int> count_;
  std::vector<int> choice_;
  std::int64_t total_capacity_ = 0;
  std::int64_t best_ = 0;
  std::int64_t nodes_ = 0;
  bool enumerating_ = false;
  bool truncated_ = false;
  std::map<CanonicalKey, Solution> found_;
};

}  // namespace

Solution GreedyLbfLif(const ProblemInstance& instance) {
  const auto bin_order = StableDescendingOrder(instance.capacities());
  const auto item_order = StableDescendingOrder(instance.sizes());
  std::vector<int> bin_of(instance.num_items(), kUnassigned);
  for (int b : bin_order) {
    std::int64_t remaining = instance.capacity(b);
    for (int j : item_order) {
      if (bin_of[j] != kUnassigned) continue;
      if (instance.size(j) <= remaining) {
        bin_of[j] = b;
        remaining -= instance.size(j);
      }
    }
  }
  return Solution::FromBinIndices(instance.num_bins(), bin_of);
}

EnumerationResult EnumerateOptima(const ProblemInstance& instance,
                                  const EnumerationOptions& options) {
  if (options.cap < 1) {
    throw Error(ErrorClass::kUsage, "solution cap must be at least 1");
  }
  return BranchAndBound(instance, options).Run();
}

EnumerationResult BruteForceOptima(const ProblemInstance& instance,
                                   std::int64_t max_assignments) {
  const int m = instance.num_bins();
  const int n = instance.num_items();
  std::int64_t total = 1;
  for (int j = 0; j < n; ++j) {
    total *= m + 1;
    if (total > max_assignments) {
      throw ValidationError(fmt::format(
          "brute force needs {}^{} assignments, above the bound {}", m + 1, n,
          max_assignments));
    }
  }
  std::int64_t best = -1;
  std::map<CanonicalKey, Solution> found;
  // digit[j] == m encodes "unassigned".
  std::vector<int> digit(n, 0);
  std::vector<int> bins(n);
  for (std::int64_t it = 0; it < total; ++it) {
    std::vector<std::int64_t> load(m, 0);
    bool feasible = true;
    std::int64_t score = 0;
    for (int j = 0; j < n && feasible; ++j) {
      if (digit[j] == m) {
        bins[j] = kUnassigned;
        continue;
      }
      bins[j] = digit[j];
      load[digit[j]] += instance.size(j);
      score += instance.size(j);
      feasible = load[digit[j]] <= instance.capacity(digit[j]);
    }
    if (feasible && score >= best) {
      if (score > best) {
        best = score;
        found.clear();
      }
      Solution sol = Solution::FromBinIndices(m, bins);
      found.try_emplace(CanonicalForm(instance, sol), sol);
    }
    for (int j = 0; j < n; ++j) {
      if (++digit[j] <= m) break;
      digit[j] = 0;
    }
  }
  EnumerationResult result;
  result.optimal_score = best;
  result.nodes = total;
  for (auto& [key, sol] : found) result.solutions.push_back(std::move(sol));
  return result;
}

double HeuristicOptimality(const ProblemInstance& instance,
                           std::int64_t optimal_score) {
  if (optimal_score == 0) return 1.0;
  const auto greedy = ObjectiveScore(instance, GreedyLbfLif(instance));
  return static_cast<double>(greedy) / static_cast<double>(optimal_score);
}

double HeuristicOptimality(const ProblemInstance& instance) {
  return HeuristicOptimality(instance, EnumerateOptima(instance).optimal_score);
}

}  // namespace mssp
