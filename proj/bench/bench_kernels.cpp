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

// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "mssp/scoring.hpp"
#include "mssp/solver.hpp"
#include "mssp/trialgen.hpp"

namespace mssp {
namespace {

GenerationConfig BenchConfig() {
  GenerationConfig config;
  config.iterations = 400;
  config.seed = 1;
  return config;
}

const Pool& BenchPool() {
  static const Pool pool = GeneratePool(BenchConfig());
  return pool;
}

struct Tasks {
  std::vector<DisplayedSolution> displayed;
  std::vector<ScoreTask> tasks;
  CcCorpus corpus;
};

const Tasks& BenchTasks() {
  static const Tasks t = [] {
    Tasks out;
    const auto& pool = BenchPool();
    for (const auto& e : pool.entries) {
      for (const auto& s : e.result.solutions) {
        out.displayed.push_back(DisplayedSolution::Identity(s));
        out.corpus.Add(e.instance, s);
      }
    }
    size_t k = 0;
    for (const auto& e : pool.entries) {
      for (size_t s = 0; s < e.result.solutions.size(); ++s) {
        out.tasks.push_back({&e.instance, &out.displayed[k++]});
      }
    }
    return out;
  }();
  return t;
}

void BM_PoolSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(GeneratePoolSerial(BenchConfig()));
}
BENCHMARK(BM_PoolSerial)->Unit(benchmark::kMillisecond);

void BM_PoolParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(GeneratePool(BenchConfig()));
}
BENCHMARK(BM_PoolParallel)->Unit(benchmark::kMillisecond);

void BM_ScoreSerial(benchmark::State& state) {
  const auto& t = BenchTasks();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ScoreTasksSerial(t.tasks, CcParams::Confirmatory()));
  }
}
BENCHMARK(BM_ScoreSerial)->Unit(benchmark::kMillisecond);

void BM_ScoreParallel(benchmark::State& state) {
  const auto& t = BenchTasks();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ScoreTasks(t.tasks, CcParams::Confirmatory()));
  }
}
BENCHMARK(BM_ScoreParallel)->Unit(benchmark::kMillisecond);

void BM_CorpusSerial(benchmark::State& state) {
  const auto& t = BenchTasks();
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.corpus.EvaluateSerial(CcParams::Exploratory()));
  }
}
BENCHMARK(BM_CorpusSerial)->Unit(benchmark::kMicrosecond);

void BM_CorpusParallel(benchmark::State& state) {
  const auto& t = BenchTasks();
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.corpus.Evaluate(CcParams::Exploratory()));
  }
}
BENCHMARK(BM_CorpusParallel)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace mssp

BENCHMARK_MAIN();
