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


#include <random>

#include "doctest.h"
#include "forgeline/denoise.hpp"
#include "forgeline/error.hpp"
#include "forgeline/tiling.hpp"
#include "test_support.hpp"

using namespace forgeline;
using forgeline::testing::random_volume;

namespace {

std::vector<std::size_t> starts(std::size_t len, std::size_t tile, std::size_t overlap) {
  return plan_axis(len, tile, overlap);
}

}  // namespace

TEST_CASE("axis plans") {
  CHECK(starts(1536, 768, 256) == std::vector<std::size_t>{0, 512, 768});
  CHECK(starts(500, 768, 0) == std::vector<std::size_t>{0});
  CHECK(starts(768, 768, 0) == std::vector<std::size_t>{0});
  CHECK(starts(10, 4, 1) == std::vector<std::size_t>{0, 3, 6});
  CHECK(starts(11, 4, 1) == std::vector<std::size_t>{0, 3, 6, 7});
  CHECK_THROWS_AS(starts(100, 8, 8), Error);
  CHECK_THROWS_AS(starts(100, 0, 0), Error);
}

TEST_CASE("axis plans cover every index within bounds") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    std::size_t len = 1 + rng() % 200, tile = 1 + rng() % 64, overlap = rng() % tile;
    auto s = starts(len, tile, overlap);
    std::vector<int> hits(len, 0);
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k) CHECK(s[k] > s[k - 1]);
      std::size_t extent = std::min(tile, len);
      CHECK(s[k] + extent <= len);
      for (std::size_t j = s[k]; j < s[k] + extent; ++j) ++hits[j];
    }
    for (int h : hits) CHECK(h >= 1);
  }
}

TEST_CASE("plans are cartesian products") {
  auto plan = make_plan({4, 129, 768, 1536}, {129, 768, 768}, {0, 0, 256});
  CHECK(plan.windows.size() == 3);
  CHECK(plan.windows[1].start == Offset3{0, 0, 512});
  CHECK(plan.windows[2].extent == Extent3{129, 768, 768});

  auto small = make_plan({1, 3, 10, 10}, kDeskTile, kDeskOverlap);
  REQUIRE(small.windows.size() == 1);
  CHECK(small.windows[0].extent == Extent3{3, 10, 10});

  auto p = make_plan({1, 5, 20, 30}, {3, 8, 8}, {1, 2, 3});
  for (auto c : p.coverage()) CHECK(c >= 1);
  CHECK(p.coverage().size() == 5u * 20 * 30);
}

TEST_CASE("bilinear upsampling") {
  LatentVolume ramp(Shape4{1, 1, 1, 2}, std::vector<float>{0.0f, 1.0f});
  auto up = upsample(ramp, 1, 2);
  REQUIRE(up.width() == 4);
  CHECK(up.at(0, 0, 0, 0) == 0.0f);
  CHECK(up.at(0, 0, 0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-6));
  CHECK(up.at(0, 0, 0, 2) == doctest::Approx(2.0 / 3).epsilon(1e-6));
  CHECK(up.at(0, 0, 0, 3) == 1.0f);

  std::mt19937_64 rng(32);
  auto v = random_volume(rng, {2, 3, 5, 6});
  CHECK(bit_equal(upsample(v, 1, 1), v));

  LatentVolume flat(Shape4{2, 2, 3, 3}, 0.25f);
  for (float x : upsample(flat, 4, 2).data()) CHECK(x == doctest::Approx(0.25f).epsilon(1e-7));
}

TEST_CASE("concat layout puts the noisy latent first") {
  std::mt19937_64 rng(33);
  auto noisy = random_volume(rng, {2, 1, 3, 3});
  auto cond = random_volume(rng, {2, 1, 3, 3});
  ConcatLayout layout{2, 2};
  auto s = layout.stack(noisy, cond);
  CHECK(s.channels() == 4);
  CHECK(bit_equal(layout.noisy_part(s), noisy));
  CHECK(bit_equal(layout.condition_part(s), cond));
}

TEST_CASE("overlapping constant tiles average") {
  TilePlan plan = make_plan({1, 1, 1, 6}, {1, 1, 4}, {0, 0, 2});
  REQUIRE(plan.windows.size() == 2);
  std::vector<LatentVolume> tiles{LatentVolume(Shape4{1, 1, 1, 4}, 0.2f), LatentVolume(Shape4{1, 1, 1, 4}, 0.6f)};
  auto out = blend_tiles(plan, tiles, false);
  CHECK(out.at(0, 0, 0, 0) == doctest::Approx(0.2f).epsilon(1e-6));
  CHECK(std::abs(out.at(0, 0, 0, 2) - 0.4f) <= 1e-6);
  CHECK(std::abs(out.at(0, 0, 0, 3) - 0.4f) <= 1e-6);
  CHECK(out.at(0, 0, 0, 5) == doctest::Approx(0.6f).epsilon(1e-6));

  auto feathered = blend_tiles(plan, tiles, true);
  CHECK(feathered.at(0, 0, 0, 2) >= 0.2f);
  CHECK(feathered.at(0, 0, 0, 3) <= 0.6f);
  CHECK(feathered.at(0, 0, 0, 2) < feathered.at(0, 0, 0, 3));
}

TEST_CASE("tiled toy upscaling reproduces the ground truth") {
  std::mt19937_64 rng(34);
  auto low = random_volume(rng, {2, 5, 12, 10});
  auto truth = random_volume(rng, {2, 5, 24, 20});
  ToyDenoiser toy(truth);
  TileParams params;
  params.tile = {3, 10, 8};
  params.overlap = {1, 4, 2};
  params.threads = 3;
  auto out = upscale_video(low, 2, toy, Schedule::uniform(4), params, 8);
  CHECK(max_abs_diff(out, truth) <= 1e-4);
  params.threads = 1;
  CHECK(bit_equal(upscale_video(low, 2, toy, Schedule::uniform(4), params, 8), out));
}

TEST_CASE("a single-tile plan equals untiled sampling bit-exactly") {
  std::mt19937_64 rng(35);
  auto low = random_volume(rng, {4, 2, 6, 6});
  ConditionEchoDenoiser echo;
  TileParams params;
  params.tile = {9, 96, 96};
  auto out = upscale_video(low, 2, echo, Schedule::uniform(3), params, 4);
  ConditionBundle cond;
  cond.extra_channels = upsample(low, 2, 2);
  auto direct = sample(echo, Schedule::uniform(3), cond.extra_channels->shape(), 4, cond);
  CHECK(bit_equal(out, direct));
  CHECK(max_abs_diff(out, *cond.extra_channels) <= 1e-5);
  CHECK_THROWS_AS(upscale_video(low, 3, echo, Schedule::uniform(3), params, 4), Error);
}
