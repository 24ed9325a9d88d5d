/* Copyright 2026 The HIO Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Serial versus OpenMP paths of the two parallel kernels: the exhaustive
// oracle (outer loop over onloading configurations) and the per-node
// Lagrangian greedy. Set HIO_THREADS to cap the worker count.

#include <benchmark/benchmark.h>

#include "hio/alternating.h"
#include "hio/baselines.h"
#include "hio/generator.h"
#include "hio/onload.h"

namespace hio {
namespace {

Scenario bench_scenario(const char* preset, std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.preset = preset;
  cfg.seed = seed;
  return generate_scenario(cfg);
}

void BM_Oracle(benchmark::State& state) {
  const Scenario s = bench_scenario("runtime", static_cast<std::uint64_t>(state.range(1)));
  OracleOptions options;
  options.execution = state.range(0) ? Execution::kParallel : Execution::kSerial;
  long long configs = 0;
  for (auto _ : state) {
    const BaselineResult r = minlp_oracle(s, options);
    configs = r.configurations;
    benchmark::DoNotOptimize(r.objective);
  }
  state.counters["configurations"] = static_cast<double>(configs);
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_Oracle)->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_GreedyLr(benchmark::State& state) {
  const Scenario s = bench_scenario("taskonomy", 0);
  const Offloading offload = initial_offloading(s);
  GreedyLrOptions options;
  options.execution = state.range(0) ? Execution::kParallel : Execution::kSerial;
  for (auto _ : state) {
    Onloading on = greedy_lr(s, offload, options);
    benchmark::DoNotOptimize(on);
  }
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_GreedyLr)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace hio

BENCHMARK_MAIN();
