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

#include "forgeline/extend.hpp"
#include "forgeline/noise.hpp"
#include "forgeline/preview.hpp"

namespace {

using namespace forgeline;

SessionState session(std::size_t side) {
  std::mt19937_64 rng(7);
  Rgba8Image img(side, side);
  for (auto& b : img.pixels()) b = static_cast<std::uint8_t>(rng());
  return start_session(img, default_start_pose(side, side), SessionConfig{});
}

void BM_ExtendToy(benchmark::State& state) {
  const auto s = session(64);
  const std::vector<ActionKey> keys{ActionKey::W};
  const ToyDenoiser toy(concat_frames(s.timeline, SeededNoise(1).volume({4, 8, 64, 64})));
  for (auto _ : state) benchmark::DoNotOptimize(extend(s, keys, ConditionKind::single_frame(), toy));
}
BENCHMARK(BM_ExtendToy)->Unit(benchmark::kMillisecond);

void BM_ExtendScene(benchmark::State& state) {
  const auto s = session(64);
  const std::vector<ActionKey> keys{ActionKey::Right};
  for (auto _ : state) benchmark::DoNotOptimize(extend_toward_scene(s, keys, ConditionKind::full_clip()));
}
BENCHMARK(BM_ExtendScene)->Unit(benchmark::kMillisecond);

void BM_RenderPreview(benchmark::State& state) {
  const auto pose = default_start_pose(64, 64);
  const SceneOptions scene;
  for (auto _ : state) benchmark::DoNotOptimize(render_preview(pose, scene));
}
BENCHMARK(BM_RenderPreview);

}  // namespace
