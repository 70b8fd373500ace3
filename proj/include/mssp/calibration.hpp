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

// Fitting CC parameters: against a compound of three corpus indices by
// correlation, or against ordinal choice data by log-loss. Each target is
// optimized separately for the six (family, correction) variants.

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "mssp/core.hpp"
#include "mssp/metrics.hpp"
#include "mssp/optimize.hpp"
#include "mssp/scoring.hpp"

namespace mssp {

struct CorpusEntry {
  ProblemInstance instance;
  Solution solution;
};

struct CompoundIndices {
  double av = 0.0;  // sd across bins of the item counts
  double ad = 0.0;  // mean headroom after the largest item, nonempty bins
  double ar = 0.0;  // inverse mean fill rate, nonempty bins
};

// Throws a validation Error when every bin is empty.
CompoundIndices ComputeCompoundIndices(const ProblemInstance& instance,
                                       const Solution& solution);

// Mean 0, sd 1 (n - 1 divisor). Throws on fewer than 2 values or a
// constant column.
std::vector<double> ZScore(std::span<const double> values);

// Scores of each row on the leading principal axis of the 3 x 3 covariance.
// The axis is oriented so that its largest-magnitude entry is positive.
std::vector<double> PcaFirstComponent(
    std::span<const std::array<double, 3>> rows);

// z-scores AV, AD, AR over the corpus and returns the first-component scores.
std::vector<double> CompoundScores(std::span<const CorpusEntry> corpus);

double PearsonCorrelation(std::span<const double> a, std::span<const double> b);

struct VariantResult {
  CcParams params;  // family and correction identify the variant
  double loss = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
  std::vector<double> trace;

  std::string Id() const;
};

struct CalibrationReport {
  std::string target;  // "compound" or "logloss"
  std::vector<VariantResult> variants;
  int winner = -1;

  const VariantResult& best() const { return variants.at(winner); }
};

struct CalibrationOptions {
  // p, sigma, alpha
  std::array<double, 3> start = {0.5, 0.05, 2.0};
  MinimizeOptions minimize;
  bool parallel = true;
};

// The six (family, correction) pairs in report order.
std::vector<CcParams> CalibrationVariants(const std::array<double, 3>& start);

Box CalibrationBox(EmptySpaceFamily family);

// Minimizes -corr(CC, target) for each variant. Throws a calibration Error
// when no variant yields a finite loss.
CalibrationReport CalibrateCorrelation(std::span<const CorpusEntry> corpus,
                                       std::span<const double> target,
                                       const CalibrationOptions& options = {});
CalibrationReport CalibrateCorrelation(std::span<const CorpusEntry> corpus,
                                       const CalibrationOptions& options = {});

// A choice between two corpus solutions of the same problem.
struct ChoiceTrial {
  size_t left = 0;
  size_t right = 0;
  int category = 0;
};

// Fitted ordinal log-loss with standardized dCC as the only predictor.
// Throws when the differences are constant or the inner fit separates.
double CcLogLoss(const CcCorpus& corpus, std::span<const ChoiceTrial> trials,
                 const CcParams& params);

CalibrationReport CalibrateLogLoss(std::span<const CorpusEntry> corpus,
                                   std::span<const ChoiceTrial> trials,
                                   const CalibrationOptions& options = {});

std::string ReportCsv(const CalibrationReport& report);
std::string ReportSummary(const CalibrationReport& report);

}  // namespace mssp
