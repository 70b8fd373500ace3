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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "mssp/solver.hpp"
#include "test_util.hpp"

namespace mssp {
namespace {

struct Scored {
  std::vector<ProblemInstance> instances;
  std::vector<DisplayedSolution> displayed;
  std::vector<ScoreTask> tasks;
};

Scored BuildTasks(int count) {
  Scored s;
  std::mt19937_64 rng(11);
  s.instances.reserve(count);
  s.displayed.reserve(count);
  while (static_cast<int>(s.instances.size()) < count) {
    auto inst = testing::RandomInstance(rng, 4, 7, 20);
    if (inst.num_bins() < 2 || inst.num_items() < 2) continue;
    auto result = EnumerateOptima(inst, {.cap = 3});
    s.instances.push_back(inst);
    auto d = DisplayedSolution::Identity(result.solutions.front());
    std::shuffle(d.item_order.begin(), d.item_order.end(), rng);
    std::shuffle(d.bin_order.begin(), d.bin_order.end(), rng);
    s.displayed.push_back(std::move(d));
  }
  for (int i = 0; i < count; ++i) {
    s.tasks.push_back({&s.instances[i], &s.displayed[i]});
  }
  return s;
}

TEST(ScoringTest, ParallelMatchesSerial) {
  const auto s = BuildTasks(200);
  for (const auto& params : {CcParams::Confirmatory(), CcParams::Exploratory()}) {
    EXPECT_EQ(ScoreTasks(s.tasks, params), ScoreTasksSerial(s.tasks, params));
  }
}

TEST(ScoringTest, MatchesProfile) {
  const auto s = BuildTasks(20);
  const auto params = CcParams::Confirmatory();
  const auto scored = ScoreTasks(s.tasks, params);
  for (size_t i = 0; i < s.tasks.size(); ++i) {
    EXPECT_EQ(scored[i], Profile(s.instances[i], s.displayed[i], params));
  }
}

TEST(ScoringTest, EmptyTaskList) {
  EXPECT_TRUE(ScoreTasks({}, CcParams::Confirmatory()).empty());
}

TEST(CcCorpusTest, ParallelMatchesSerialAndDirect) {
  const auto s = BuildTasks(150);
  CcCorpus corpus;
  for (size_t i = 0; i < s.instances.size(); ++i) {
    corpus.Add(s.instances[i], s.displayed[i].solution);
  }
  ASSERT_EQ(corpus.size(), 150u);
  CcParams tl{EmptySpaceFamily::kTruncatedLaplace, 0.2, 0.3, 2.5, false};
  for (const auto& params : {CcParams::Confirmatory(), tl}) {
    const auto fast = corpus.Evaluate(params);
    EXPECT_EQ(fast, corpus.EvaluateSerial(params));
    for (size_t i = 0; i < fast.size(); ++i) {
      EXPECT_DOUBLE_EQ(fast[i],
                       CompositionalComplexity(s.instances[i],
                                               s.displayed[i].solution, params));
    }
  }
}

}  // namespace
}  // namespace mssp
