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

// Domain model for the multiple subset sum problem: instances, assignment
// matrices, display layouts, feasibility checks and the canonical key used
// to deduplicate equivalent packings.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mssp {

// Bin capacities and item sizes of one instance. Sizes and capacities are
// integral so that objective ties are exact.
class ProblemInstance {
 public:
  ProblemInstance() = default;
  // Throws a validation Error unless both lists are nonempty and positive.
  ProblemInstance(std::string id, std::vector<int> capacities,
                  std::vector<int> sizes);

  const std::string& id() const { return id_; }
  std::span<const int> capacities() const { return capacities_; }
  std::span<const int> sizes() const { return sizes_; }
  int capacity(int bin) const { return capacities_[bin]; }
  int size(int item) const { return sizes_[item]; }
  int num_bins() const { return static_cast<int>(capacities_.size()); }
  int num_items() const { return static_cast<int>(sizes_.size()); }

  std::int64_t total_capacity() const;
  std::int64_t total_size() const;
  // Problem difficulty: total item size over total capacity.
  double load_ratio() const;

  bool operator==(const ProblemInstance&) const = default;

 private:
  std::string id_;
  std::vector<int> capacities_;
  std::vector<int> sizes_;
};

// Result of checking the generator's instance constraints. The "at least two
// optimal solutions" condition needs the solver and is checked by the pool
// generator, not here.
struct RegimeReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

RegimeReport CheckPaperRegime(const ProblemInstance& instance);

// Dense n x m binary matrix, rows = items, columns = bins.
class AssignmentMatrix {
 public:
  AssignmentMatrix() = default;
  AssignmentMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), cells_(static_cast<size_t>(rows) * cols, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool at(int r, int c) const { return cells_[index(r, c)] != 0; }
  void set(int r, int c, bool v) { cells_[index(r, c)] = v ? 1 : 0; }
  int ones() const;

  bool operator==(const AssignmentMatrix&) const = default;

 private:
  size_t index(int r, int c) const {
    return static_cast<size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

inline constexpr int kUnassigned = -1;

// An item-by-bin assignment. Feasibility is not enforced on construction;
// see ValidateSolution.
class Solution {
 public:
  Solution() = default;
  explicit Solution(AssignmentMatrix x) : x_(std::move(x)) {}
  // bin_of_item[j] is the bin of item j or kUnassigned.
  static Solution FromBinIndices(int num_bins, std::span<const int> bin_of_item);
  static Solution Empty(int num_items, int num_bins) {
    return Solution(AssignmentMatrix(num_items, num_bins));
  }

  const AssignmentMatrix& matrix() const { return x_; }
  int num_items() const { return x_.rows(); }
  int num_bins() const { return x_.cols(); }
  bool assigned(int item, int bin) const { return x_.at(item, bin); }

  // Per-item bin index (kUnassigned when unplaced). Throws a validation
  // Error if an item sits in more than one bin.
  std::vector<int> BinIndices() const;

  bool operator==(const Solution&) const = default;

 private:
  AssignmentMatrix x_;
};

// A solution as the viewer sees it: display column c shows bin bin_order[c]
// and display row r shows item item_order[r].
struct DisplayedSolution {
  Solution solution;
  std::vector<int> bin_order;
  std::vector<int> item_order;

  static DisplayedSolution Identity(Solution s);
  bool operator==(const DisplayedSolution&) const = default;
};

bool IsPermutation(std::span<const int> order, int size);
std::vector<int> IdentityPermutation(int size);
std::vector<int> InversePermutation(std::span<const int> order);

// Throws a validation Error if either order is not a permutation of the
// right length.
void CheckLayout(const DisplayedSolution& displayed);

// The visually permuted matrix.
AssignmentMatrix ApplyLayout(const DisplayedSolution& displayed);

// Bin capacities / item sizes in displayed order.
std::vector<int> DisplayedCapacities(const ProblemInstance& instance,
                                     const DisplayedSolution& displayed);
std::vector<int> DisplayedSizes(const ProblemInstance& instance,
                                const DisplayedSolution& displayed);

// Throws a validation Error when the matrix shape differs from the instance.
void CheckDimensions(const ProblemInstance& instance, const Solution& solution);

std::int64_t ObjectiveScore(const ProblemInstance& instance,
                            const Solution& solution);

struct CapacityViolation {
  int bin;
  std::int64_t load;
  int capacity;
};

struct MultiplicityViolation {
  int item;
  int count;
};

struct ValidationReport {
  std::vector<CapacityViolation> capacity;
  std::vector<MultiplicityViolation> multiplicity;

  bool ok() const { return capacity.empty() && multiplicity.empty(); }
  std::string ToString() const;
};

ValidationReport ValidateSolution(const ProblemInstance& instance,
                                  const Solution& solution);

// One bin of a canonical key: capacity and the assigned sizes, descending.
struct CanonicalBin {
  int capacity;
  std::vector<int> sizes;

  auto operator<=>(const CanonicalBin&) const = default;
  bool operator==(const CanonicalBin&) const = default;
};

// Multiset of (capacity, content) pairs over all bins, empty bins included.
// Two feasible solutions are redundant exactly when their keys are equal.
class CanonicalKey {
 public:
  CanonicalKey() = default;
  explicit CanonicalKey(std::vector<CanonicalBin> bins);

  const std::vector<CanonicalBin>& bins() const { return bins_; }
  std::string ToString() const;

  auto operator<=>(const CanonicalKey&) const = default;
  bool operator==(const CanonicalKey&) const = default;

 private:
  std::vector<CanonicalBin> bins_;
};

// Throws a validation Error for infeasible input.
CanonicalKey CanonicalForm(const ProblemInstance& instance,
                           const Solution& solution);

}  // namespace mssp
