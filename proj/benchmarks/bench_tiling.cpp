// Copyright 2026 The Forgeline Authors
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


#include <benchmark/benchmark.h>

#include "forgeline/denoise.hpp"
#include "forgeline/noise.hpp"
#include "forgeline/tiling.hpp"

namespace {

using namespace forgeline;

void BM_MakePlan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(make_plan({4, 129, 1536, 2048}, kProductionTile, {8, 256, 256}));
}
BENCHMARK(BM_MakePlan);

void BM_Upsample(benchmark::State& state) {
  const auto low = SeededNoise(1).volume({4, 9, 96, 96});
  for (auto _ : state) benchmark::DoNotOptimize(upsample(low, 2, 2));
}
BENCHMARK(BM_Upsample);

void BM_UpscaleTiled(benchmark::State& state) {
  const auto low = SeededNoise(2).volume({4, 9, 96, 96});
  ConditionEchoDenoiser echo;
  TileParams params;
  params.threads = static_cast<std::size_t>(state.range(0));
  const auto schedule = Schedule::uniform(4);
  for (auto _ : state) benchmark::DoNotOptimize(upscale_video(low, 2, echo, schedule, params, 5));
}
BENCHMARK(BM_UpscaleTiled)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
