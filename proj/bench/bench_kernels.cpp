// Copyright 2026 The branchsim Authors
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


// Serial reference vs OpenMP kernels on the experiment grid and the
// non-dominated subset sampler.

#include <benchmark/benchmark.h>

#include "branchsim/experiment.hpp"

namespace {

using branchsim::Category;
using branchsim::ExperimentConfig;

ExperimentConfig BenchConfig(const benchmark::State& state) {
  ExperimentConfig config;
  config.category = Category::kVeryUnbalanced;
  config.n_vars = static_cast<int>(state.range(0));
  config.gaps = {1500, 2500};
  config.n_instances = 64;
  config.seed = 7;
  return config;
}

void BM_ExperimentSerial(benchmark::State& state) {
  const ExperimentConfig config = BenchConfig(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(branchsim::run_experiment_serial(config));
  }
  state.SetItemsProcessed(state.iterations() * config.n_instances *
                          static_cast<std::int64_t>(config.gaps.size()));
}

void BM_ExperimentParallel(benchmark::State& state) {
  const ExperimentConfig config = BenchConfig(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(branchsim::run_experiment(config));
  }
  state.SetItemsProcessed(state.iterations() * config.n_instances *
                          static_cast<std::int64_t>(config.gaps.size()));
}

void BM_CountsSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        branchsim::SampleNondominatedCountsSerial(n, 64, 11));
  }
}

void BM_CountsParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(branchsim::SampleNondominatedCounts(n, 64, 11));
  }
}

}  // namespace

BENCHMARK(BM_ExperimentSerial)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExperimentParallel)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CountsSerial)->Arg(16)->Arg(30)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CountsParallel)->Arg(16)->Arg(30)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
