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

// Batch scoring kernels. Each parallel kernel has a serial twin with the
// same contract; tests check they agree and the benchmark compares them.

#pragma once

#include <span>
#include <vector>

#include "mssp/core.hpp"
#include "mssp/metrics.hpp"

namespace mssp {

struct ScoreTask {
  const ProblemInstance* instance;
  const DisplayedSolution* displayed;
};

std::vector<ComplexityProfile> ScoreTasks(std::span<const ScoreTask> tasks,
                                          const CcParams& params);
std::vector<ComplexityProfile> ScoreTasksSerial(
    std::span<const ScoreTask> tasks, const CcParams& params);

// Bin features of many solutions, extracted once, so CC can be re-evaluated
// cheaply under many parameter settings (calibration inner loop).
class CcCorpus {
 public:
  void Add(const ProblemInstance& instance, const Solution& solution);
  size_t size() const { return solutions_.size(); }

  std::vector<double> Evaluate(const CcParams& params) const;
  std::vector<double> EvaluateSerial(const CcParams& params) const;

 private:
  std::vector<std::vector<BinFeatures>> solutions_;
};

}  // namespace mssp
