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
#include <vector>

#include "forgeline/video_analysis.hpp"

namespace {

using namespace forgeline;

Rgba8Image textured(std::size_t h, std::size_t w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Rgba8Image img(h, w);
  for (auto& b : img.pixels()) b = static_cast<std::uint8_t>(rng());
  return img;
}

void BM_BlockMatch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = textured(n, n, 1);
  const auto b = textured(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(block_match(a, b));
}
BENCHMARK(BM_BlockMatch)->Arg(64)->Arg(256);

void BM_HistogramDistance(benchmark::State& state) {
  const auto a = textured(256, 256, 3);
  const auto b = textured(256, 256, 4);
  for (auto _ : state) benchmark::DoNotOptimize(histogram_distance(a, b));
}
BENCHMARK(BM_HistogramDistance);

void BM_MotionRichness(benchmark::State& state) {
  std::vector<Rgba8Image> frames;
  for (std::uint64_t i = 0; i < 24; ++i) frames.push_back(textured(64, 64, i));
  for (auto _ : state) benchmark::DoNotOptimize(motion_richness(frames));
}
BENCHMARK(BM_MotionRichness);

}  // namespace
