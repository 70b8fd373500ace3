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

#include "mssp/core.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mssp/error.hpp"

namespace mssp {

const char* ErrorClassName(ErrorClass c) {
  switch (c) {
    case ErrorClass::kUsage:
      return "usage";
    case ErrorClass::kValidation:
      return "validation";
    case ErrorClass::kBudget:
      return "budget";
    case ErrorClass::kCalibration:
      return "calibration";
  }
  return "unknown";
}

ProblemInstance::ProblemInstance(std::string id, std::vector<int> capacities,
                                 std::vector<int> sizes)
    : id_(std::move(id)),
      capacities_(std::move(capacities)),
      sizes_(std::move(sizes)) {
  if (capacities_.empty()) throw ValidationError("instance has no bins");
  if (sizes_.empty()) throw ValidationError("instance has no items");
  for (size_t i = 0; i < capacities_.size(); ++i) {
    if (capacities_[i] <= 0) {
      throw ValidationError(
          fmt::format("bin {} has nonpositive capacity {}", i, capacities_[i]));
    }
  }
  for (size_t j = 0; j < sizes_.size(); ++j) {
    if (sizes_[j] <= 0) {
      throw ValidationError(
          fmt::format("item {} has nonpositive size {}", j, sizes_[j]));
    }
  }
}

std::int64_t ProblemInstance::total_capacity() const {
  return std::accumulate(capacities_.begin(), capacities_.end(),
                         std::int64_t{0});
}

std::int64_t ProblemInstance::total_size() const {
  return std::accumulate(sizes_.begin(), sizes_.end(), std::int64_t{0});
}

double ProblemInstance::load_ratio() const {
  return static_cast<double>(total_size()) /
         static_cast<double>(total_capacity());
}

RegimeReport CheckPaperRegime(const ProblemInstance& instance) {
  RegimeReport report;
  auto fail = [&](std::string s) { report.failures.push_back(std::move(s)); };
  const int m = instance.num_bins();
  const int n = instance.num_items();
  if (m < 4 || m > 6) fail(fmt::format("bin count {} outside [4,6]", m));
  if (n < 7 || n > 9) fail(fmt::format("item count {} outside [7,9]", n));
  for (int z : instance.sizes()) {
    if (z < 5 || z > 100 || z % 5 != 0) {
      fail(fmt::format("item size {} not on the 5..100 step 5 grid", z));
    }
  }
  for (int w : instance.capacities()) {
    if (w < 10 || w > 100 || w % 10 != 0) {
      fail(fmt::format("capacity {} not on the 10..100 step 10 grid", w));
    }
  }
  const int max_size = *std::ranges::max_element(instance.sizes());
  const int min_size = *std::ranges::min_element(instance.sizes());
  const int max_cap = *std::ranges::max_element(instance.capacities());
  const int min_cap = *std::ranges::min_element(instance.capacities());
  if (max_size > max_cap) {
    fail(fmt::format("largest item {} exceeds largest bin {}", max_size,
                     max_cap));
  }
  if (min_cap < min_size) {
    fail(fmt::format("smallest bin {} below smallest item {}", min_cap,
                     min_size));
  }
  // Integer form of 0.8 <= sum(z)/sum(w) <= 1.0.
  const std::int64_t sz = instance.total_size();
  const std::int64_t sw = instance.total_capacity();
  if (5 * sz < 4 * sw || sz > sw) {
    fail(fmt::format("load ratio {:.4f} outside [0.8,1.0]",
                     instance.load_ratio()));
  }
  return report;
}

int AssignmentMatrix::ones() const {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), 1));
}

Solution Solution::FromBinIndices(int num_bins,
                                  std::span<const int> bin_of_item) {
  AssignmentMatrix x(static_cast<int>(bin_of_item.size()), num_bins);
  for (size_t j = 0; j < bin_of_item.size(); ++j) {
    const int b = bin_of_item[j];
    if (b == kUnassigned) continue;
    if (b < 0 || b >= num_bins) {
      throw ValidationError(
          fmt::format("item {} assigned to bin {} of {}", j, b, num_bins));
    }
    x.set(static_cast<int>(j), b, true);
  }
  return Solution(std::move(x));
}

std::vector<int> Solution::BinIndices() const {
  std::vector<int> out(num_items(), kUnassigned);
  for (int j = 0; j < num_items(); ++j) {
    for (int i = 0; i < num_bins(); ++i) {
      if (!assigned(j, i)) continue;
      if (out[j] != kUnassigned) {
        throw ValidationError(
            fmt::format("item {} is assigned to more than one bin", j));
      }
      out[j] = i;
    }
  }
  return out;
}

DisplayedSolution DisplayedSolution::Identity(Solution s) {
  DisplayedSolution d;
  d.bin_order = IdentityPermutation(s.num_bins());
  d.item_order = IdentityPermutation(s.num_items());
  d.solution = std::move(s);
  return d;
}

bool IsPermutation(std::span<const int> order, int size) {
  if (static_cast<int>(order.size()) != size) return false;
  std::vector<bool> seen(size, false);
  for (int v : order) {
    if (v < 0 || v >= size || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<int> IdentityPermutation(int size) {
  std::vector<int> p(size);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::vector<int> InversePermutation(std::span<const int> order) {
  std::vector<int> inv(order.size());
  for (size_t k = 0; k < order.size(); ++k) inv[order[k]] = static_cast<int>(k);
  return inv;
}

void CheckLayout(const DisplayedSolution& displayed) {
  if (!IsPermutation(displayed.bin_order, displayed.solution.num_bins())) {
    throw ValidationError(fmt::format("bin_order [{}] is not a permutation of "
                                      "0..{}",
                                      fmt::join(displayed.bin_order, ","),
                                      displayed.solution.num_bins() - 1));
  }
  if (!IsPermutation(displayed.item_order, displayed.solution.num_items())) {
    throw ValidationError(fmt::format("item_order [{}] is not a permutation of "
                                      "0..{}",
                                      fmt::join(displayed.item_order, ","),
                                      displayed.solution.num_items() - 1));
  }
}

AssignmentMatrix ApplyLayout(const DisplayedSolution& displayed) {
  CheckLayout(displayed);
  const auto& x = displayed.solution.matrix();
  AssignmentMatrix out(x.rows(), x.cols());
  for (int r = 0; r < x.rows(); ++r) {
    for (int c = 0; c < x.cols(); ++c) {
      out.set(r, c, x.at(displayed.item_order[r], displayed.bin_order[c]));
    }
  }
  return out;
}

std::vector<int> DisplayedCapacities(const ProblemInstance& instance,
                                     const DisplayedSolution& displayed) {
  CheckLayout(displayed);
  std::vector<int> out;
  out.reserve(displayed.bin_order.size());
  for (int b : displayed.bin_order) out.push_back(instance.capacity(b));
  return out;
}

std::vector<int> DisplayedSizes(const ProblemInstance& instance,
                                const DisplayedSolution& displayed) {
  CheckLayout(displayed);
  std::vector<int> out;
  out.reserve(displayed.item_order.size());
  for (int j : displayed.item_order) out.push_back(instance.size(j));
  return out;
}

void CheckDimensions(const ProblemInstance& instance,
                     const Solution& solution) {
  if (solution.num_items() != instance.num_items() ||
      solution.num_bins() != instance.num_bins()) {
    throw ValidationError(fmt::format(
        "assignment is {}x{} but the instance has {} items and {} bins",
        solution.num_items(), solution.num_bins(), instance.num_items(),
        instance.num_bins()));
  }
}

std::int64_t ObjectiveScore(const ProblemInstance& instance,
                            const Solution& solution) {
  CheckDimensions(instance, solution);
  std::int64_t score = 0;
  for (int j = 0; j < solution.num_items(); ++j) {
    for (int i = 0; i < solution.num_bins(); ++i) {
      if (solution.assigned(j, i)) score += instance.size(j);
    }
  }
  return score;
}

std::string ValidationReport::ToString() const {
  if (ok()) return "ok";
  std::vector<std::string> parts;
  for (const auto& v : capacity) {
    parts.push_back(fmt::format("bin {} over capacity ({} > {})", v.bin, v.load,
                                v.capacity));
  }
  for (const auto& v : multiplicity) {
    parts.push_back(
        fmt::format("item {} assigned to {} bins", v.item, v.count));
  }
  return fmt::format("{}", fmt::join(parts, "; "));
}

ValidationReport ValidateSolution(const ProblemInstance& instance,
                                  const Solution& solution) {
  CheckDimensions(instance, solution);
  ValidationReport report;
  for (int i = 0; i < instance.num_bins(); ++i) {
    std::int64_t load = 0;
    for (int j = 0; j < instance.num_items(); ++j) {
      if (solution.assigned(j, i)) load += instance.size(j);
    }
    if (load > instance.capacity(i)) {
      report.capacity.push_back({i, load, instance.capacity(i)});
    }
  }
  for (int j = 0; j < instance.num_items(); ++j) {
    int count = 0;
    for (int i = 0; i < instance.num_bins(); ++i) count += solution.assigned(j, i);
    if (count > 1) report.multiplicity.push_back({j, count});
  }
  return report;
}

CanonicalKey::CanonicalKey(std::vector<CanonicalBin> bins)
    : bins_(std::move(bins)) {
  for (auto& b : bins_) std::ranges::sort(b.sizes, std::greater<>());
  std::ranges::sort(bins_);
}

std::string CanonicalKey::ToString() const {
  std::vector<std::string> parts;
  parts.reserve(bins_.size());
  for (const auto& b : bins_) {
    parts.push_back(fmt::format("{}:[{}]", b.capacity, fmt::join(b.sizes, ",")));
  }
  return fmt::format("{}", fmt::join(parts, "|"));
}

CanonicalKey CanonicalForm(const ProblemInstance& instance,
                           const Solution& solution) {
  const auto report = ValidateSolution(instance, solution);
  if (!report.ok()) {
    throw ValidationError("canonical form of infeasible solution: " +
                          report.ToString());
  }
  std::vector<CanonicalBin> bins(instance.num_bins());
  for (int i = 0; i < instance.num_bins(); ++i) {
    bins[i].capacity = instance.capacity(i);
    for (int j = 0; j < instance.num_items(); ++j) {
      if (solution.assigned(j, i)) bins[i].sizes.push_back(instance.size(j));
    }
  }
  return CanonicalKey(std::move(bins));
}

}  // namespace mssp
