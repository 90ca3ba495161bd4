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

#include <random>

#include "forgeline/denoise.hpp"
#include "forgeline/noise.hpp"

namespace {

using namespace forgeline;

LatentVolume noise_target(const Shape4& shape) { return SeededNoise(3).volume(shape); }

void BM_ToySample(benchmark::State& state) {
  const Shape4 shape{4, 8, 64, 64};
  ToyDenoiser toy(noise_target(shape));
  const auto schedule = Schedule::uniform(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample(toy, schedule, shape, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(shape.count()) * state.range(0));
}
BENCHMARK(BM_ToySample)->Arg(1)->Arg(8)->Arg(16);

void BM_Inpaint(benchmark::State& state) {
  const Shape4 shape{4, 8, 64, 64};
  ToyDenoiser toy(noise_target(shape));
  LatentVolume known(shape, 0.5f);
  BinaryMask mask(8, 64, 64, 0);
  for (std::size_t t = 4; t < 8; ++t)
    for (std::size_t h = 0; h < 64; ++h)
      for (std::size_t w = 0; w < 64; ++w) mask.set(t, h, w, true);
  const auto schedule = Schedule::uniform(8);
  for (auto _ : state) benchmark::DoNotOptimize(sample_inpaint(toy, schedule, known, mask, 1));
}
BENCHMARK(BM_Inpaint);

void BM_NoiseVolume(benchmark::State& state) {
  SeededNoise noise(9);
  const Shape4 shape{4, 8, 64, 64};
  for (auto _ : state) benchmark::DoNotOptimize(noise.volume(shape));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(shape.count()));
}
BENCHMARK(BM_NoiseVolume);

}  // namespace
