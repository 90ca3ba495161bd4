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

#include <numbers>
#include <vector>

#include "forgeline/camera.hpp"

namespace {

using namespace forgeline;

CameraPose pose() {
  CameraPose p;
  p.rotation = rotation_from_yaw_pitch(0.3, -0.1);
  p.center = {1.0, 2.0, -3.0};
  p.intrinsics = Intrinsics::from_fov(64, 64, std::numbers::pi / 2);
  return p;
}

void BM_PlueckerField(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CameraPose p = pose();
  for (auto _ : state) benchmark::DoNotOptimize(pluecker_field(p, n, n));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_PlueckerField)->Arg(32)->Arg(64)->Arg(256);

void BM_FoldActions(benchmark::State& state) {
  std::vector<ActionKey> keys;
  for (int i = 0; i < 64; ++i) keys.push_back(static_cast<ActionKey>(i % 9));
  const MotionParams params;
  const CameraPose p = pose();
  for (auto _ : state) benchmark::DoNotOptimize(fold_actions(p, keys, params));
}
BENCHMARK(BM_FoldActions);

void BM_CompressActions(benchmark::State& state) {
  std::vector<CameraPose> poses(8, pose());
  const auto field = pluecker_stack(poses, 64, 64);
  const ActionCompression options;
  for (auto _ : state) benchmark::DoNotOptimize(compress_actions(field, options));
}
BENCHMARK(BM_CompressActions);

}  // namespace
