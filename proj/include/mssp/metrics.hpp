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

// Solution-level complexity metrics and their pair-level differences.
//
//   HC  edge edit distance to the greedy largest-bin/largest-item packing
//   CC  mean per-bin surprisal (nats) under a count/composition/empty-space
//       generative model
//   VC  count-weighted disorder of the displayed capacity and size sequences
//   DD  edit distance of the displayed matrix to a staircase diagonal

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mssp/core.hpp"

namespace mssp {

enum class EmptySpaceFamily {
  kTruncatedNormal,
  kTruncatedLaplace,
  kContinuousBernoulli,
};

inline constexpr std::array<EmptySpaceFamily, 3> kAllFamilies = {
    EmptySpaceFamily::kTruncatedNormal, EmptySpaceFamily::kTruncatedLaplace,
    EmptySpaceFamily::kContinuousBernoulli};

// "truncated_normal", "truncated_laplace", "continuous_bernoulli".
std::string_view FamilyName(EmptySpaceFamily family);
EmptySpaceFamily ParseFamily(std::string_view name);

struct CcParams {
  EmptySpaceFamily family = EmptySpaceFamily::kContinuousBernoulli;
  double sigma = 0.426;   // continuous Bernoulli: lambda of the low component
  double p_geom = 0.043;  // geometric success probability for the item count
  double alpha = 0.984;   // symmetric Dirichlet concentration
  bool dirichlet_correction = true;

  static CcParams Confirmatory();
  static CcParams Exploratory();

  // Throws a validation Error when a parameter is out of range.
  void Validate() const;
  bool operator==(const CcParams&) const = default;
};

// Bounds on sigma for the family; the continuous Bernoulli needs (0, 1).
bool SigmaInRange(EmptySpaceFamily family, double sigma);

// Log of the mirror-symmetric two-component mixture density at e in [0, 1].
double EmptySpaceLogDensity(double e, EmptySpaceFamily family, double sigma);

// ln Dir(shares | alpha, ..., alpha). Needs at least two shares.
double SymmetricDirichletLogDensity(std::span<const double> shares,
                                    double alpha);

// Sufficient statistics of one bin for the CC model.
struct BinFeatures {
  int count = 0;               // N
  double sum_log_share = 0.0;  // sum of ln(size / assigned total), N > 1 only
  double empty_fraction = 1.0; // E
};

struct BinSurprisal {
  double count_term = 0.0;        // -ln p(N)
  double composition_term = 0.0;  // -ln p(C|N), 0 for N <= 1
  bool has_composition = false;
  double empty_term = 0.0;        // -ln p(E|N)

  double total() const { return count_term + composition_term + empty_term; }
};

std::vector<BinFeatures> ExtractBinFeatures(const ProblemInstance& instance,
                                            const Solution& solution);
BinSurprisal BinSurprisalOf(const BinFeatures& bin, const CcParams& params);
double CompositionalComplexity(std::span<const BinFeatures> bins,
                               const CcParams& params);
double CompositionalComplexity(const ProblemInstance& instance,
                               const Solution& solution,
                               const CcParams& params);

int HeuristicComplexity(const ProblemInstance& instance,
                        const Solution& solution);

// rows x cols matrix with one 1 per row at column
// round(i * (cols - 1) / (rows - 1)), ties to even; a single row maps to
// column 0.
AssignmentMatrix ApproximatedDiagonal(int rows, int cols);
int DiagonalDissimilarity(const ProblemInstance& instance,
                          const DisplayedSolution& displayed);

inline constexpr double kTieOffset = 1e-5;

// Kendall tau-a; both inputs must have the same length >= 2.
double KendallTau(std::span<const double> a, std::span<const double> b);
// 1 - max(|tau_asc|, |tau_desc|) after the ascending/descending tie offsets.
double SequenceDisorder(std::span<const int> sequence);
double VisualOrderComplexity(const ProblemInstance& instance,
                             const DisplayedSolution& displayed);

struct ComplexityProfile {
  int hc = 0;
  double cc = 0.0;
  double vc = 0.0;
  int dd = 0;

  bool operator==(const ComplexityProfile&) const = default;
};

ComplexityProfile Profile(const ProblemInstance& instance,
                          const DisplayedSolution& displayed,
                          const CcParams& params);

// Per-metric values in the fixed order HC, CC, VC, DD.
using MetricArray = std::array<double, 4>;
inline constexpr std::array<std::string_view, 4> kMetricNames = {"hc", "cc",
                                                                 "vc", "dd"};

MetricArray AsArray(const ComplexityProfile& p);
// right - left, unstandardized.
MetricArray RawDifferences(const ComplexityProfile& left,
                           const ComplexityProfile& right);

struct PairDifferences {
  MetricArray signed_diff{};    // (right - left) / sd
  MetricArray absolute_diff{};  // |signed_diff|
  double md = 0.0;              // max(VC_left, VC_right)
  double pd = 0.0;
  MetricArray sd_used{};
};

PairDifferences ComputePairDifferences(const ComplexityProfile& left,
                                       const ComplexityProfile& right,
                                       const MetricArray& sds, double pd);

// Sample standard deviation (n - 1 divisor) of each metric's raw
// differences. Throws a validation Error naming the metric when a column is
// constant or fewer than two rows are given.
MetricArray ComputeSds(std::span<const MetricArray> raw_differences);

}  // namespace mssp
