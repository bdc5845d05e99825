// Copyright 2026 The lyjump Authors
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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "lyjump/jumps.hpp"
#include "lyjump/nophoton.hpp"

namespace {

const lyjump::SpectralCache& desk_cache() {
  static const lyjump::SpectralCache c = lyjump::SpectralCache::build({1, 0, -10, -100, 0.5, 5});
  return c;
}

void BM_SampleSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lyjump::sample_intervals_serial(desk_cache(), 1, 0, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SampleParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lyjump::sample_intervals(desk_cache(), 1, 0, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CurveSerial(benchmark::State& state) {
  auto grid = lyjump::log_grid(1e-3, 1e4, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lyjump::p0_curve_serial(desk_cache(), grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CurveParallel(benchmark::State& state) {
  auto grid = lyjump::log_grid(1e-3, 1e4, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lyjump::p0_curve(desk_cache(), grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SampleSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CurveSerial)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CurveParallel)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
