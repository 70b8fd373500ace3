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

#include "mssp/scoring.hpp"

#include "mssp/parallel.hpp"

namespace mssp {

std::vector<ComplexityProfile> ScoreTasks(std::span<const ScoreTask> tasks,
                                          const CcParams& params) {
  params.Validate();
  std::vector<ComplexityProfile> out(tasks.size());
  ParallelFor(static_cast<std::int64_t>(tasks.size()), [&](std::int64_t i) {
    out[i] = Profile(*tasks[i].instance, *tasks[i].displayed, params);
  });
  return out;
}

std::vector<ComplexityProfile> ScoreTasksSerial(
    std::span<const ScoreTask> tasks, const CcParams& params) {
  params.Validate();
  std::vector<ComplexityProfile> out;
  out.reserve(tasks.size());
  for (const auto& t : tasks) {
    out.push_back(Profile(*t.instance, *t.displayed, params));
  }
  return out;
}

void CcCorpus::Add(const ProblemInstance& instance, const Solution& solution) {
  solutions_.push_back(ExtractBinFeatures(instance, solution));
}

std::vector<double> CcCorpus::Evaluate(const CcParams& params) const {
  params.Validate();
  std::vector<double> out(solutions_.size());
  const auto n = static_cast<std::int64_t>(solutions_.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = CompositionalComplexity(solutions_[i], params);
  }
  return out;
}

std::vector<double> CcCorpus::EvaluateSerial(const CcParams& params) const {
  params.Validate();
  std::vector<double> out;
  out.reserve(solutions_.size());
  for (const auto& bins : solutions_) {
    out.push_back(CompositionalComplexity(bins, params));
  }
  return out;
}

}  // namespace mssp
