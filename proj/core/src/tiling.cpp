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

#include "forgeline/tiling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "forgeline/error.hpp"

namespace forgeline {

std::vector<std::size_t> plan_axis(std::size_t length, std::size_t tile, std::size_t overlap) {
  if (tile == 0 || overlap >= tile) {
    throw Error(ErrorCode::InvalidOverlap,
                "overlap " + std::to_string(overlap) + " must be smaller than tile " + std::to_string(tile));
  }
  if (length <= tile) return {0};
  const std::size_t stride = tile - overlap;
  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s + tile < length; s += stride) starts.push_back(s);
  const std::size_t last = length - tile;
  if (starts.empty() || starts.back() != last) starts.push_back(last);
  return starts;
}

TilePlan make_plan(const Shape4& shape, Extent3 tile, Extent3 overlap) {
  TilePlan plan{shape, tile, overlap, {}};
  const auto ts = plan_axis(shape.frames, tile.t, overlap.t);
  const auto hs = plan_axis(shape.height, tile.h, overlap.h);
  const auto ws = plan_axis(shape.width, tile.w, overlap.w);
  const Extent3 extent{std::min(shape.frames, tile.t), std::min(shape.height, tile.h),
                       std::min(shape.width, tile.w)};
  plan.windows.reserve(ts.size() * hs.size() * ws.size());
  for (std::size_t t : ts)
    for (std::size_t h : hs)
      for (std::size_t w : ws) plan.windows.push_back(TileWindow{Offset3{t, h, w}, extent});
  return plan;
}

std::vector<std::uint32_t> TilePlan::coverage() const {
  std::vector<std::uint32_t> counts(target.frames * target.height * target.width, 0);
  for (const auto& win : windows) {
    for (std::size_t t = 0; t < win.extent.t; ++t)
      for (std::size_t h = 0; h < win.extent.h; ++h)
        for (std::size_t w = 0; w < win.extent.w; ++w)
          ++counts[((win.start.t + t) * target.height + win.start.h + h) * target.width + win.start.w + w];
  }
  return counts;
}

namespace {

struct Tap {
  std::size_t lo;
  std::size_t hi;
  double frac;
};

std::vector<Tap> linear_taps(std::size_t src, std::size_t dst) {
  std::vector<Tap> taps(dst);
  for (std::size_t i = 0; i < dst; ++i) {
    if (src == 1 || dst == 1) {
      taps[i] = Tap{0, 0, 0.0};
      continue;
    }
    const double pos = static_cast<double>(i) * static_cast<double>(src - 1) / static_cast<double>(dst - 1);
    const auto lo = std::min(static_cast<std::size_t>(std::floor(pos)), src - 1);
    const std::size_t hi = std::min(lo + 1, src - 1);
    taps[i] = Tap{lo, hi, pos - static_cast<double>(lo)};
  }
  return taps;
}

double lerp(double a, double b, double f) { return f == 0.0 ? a : (1.0 - f) * a + f * b; }

double ramp_weight(std::size_t i, std::size_t len, std::size_t overlap) {
  if (overlap == 0) return 1.0;
  const double d = static_cast<double>(overlap + 1);
  return std::min({1.0, static_cast<double>(i + 1) / d, static_cast<double>(len - i) / d});
}

}  // namespace

LatentVolume upsample(const LatentVolume& low_res, std::size_t factor_h, std::size_t factor_w) {
  if (factor_h == 0 || factor_w == 0) throw Error(ErrorCode::InvalidScale, "upsample factors must be >= 1");
  if (factor_h == 1 && factor_w == 1) return low_res;
  const std::size_t H = low_res.height() * factor_h;
  const std::size_t W = low_res.width() * factor_w;
  const auto th = linear_taps(low_res.height(), H);
  const auto tw = linear_taps(low_res.width(), W);
  LatentVolume out(Shape4{low_res.channels(), low_res.frames(), H, W});
  for (std::size_t c = 0; c < low_res.channels(); ++c) {
    for (std::size_t t = 0; t < low_res.frames(); ++t) {
      for (std::size_t y = 0; y < H; ++y) {
        for (std::size_t x = 0; x < W; ++x) {
          const double top = lerp(low_res.at(c, t, th[y].lo, tw[x].lo), low_res.at(c, t, th[y].lo, tw[x].hi), tw[x].frac);
          const double bot = lerp(low_res.at(c, t, th[y].hi, tw[x].lo), low_res.at(c, t, th[y].hi, tw[x].hi), tw[x].frac);
          out.at(c, t, y, x) = static_cast<float>(lerp(top, bot, th[y].frac));
        }
      }
    }
  }
  return out;
}

LatentVolume ConcatLayout::stack(const LatentVolume& noisy, const LatentVolume& condition) const {
  if (noisy.channels() != noisy_channels || condition.channels() != condition_channels) {
    throw Error(ErrorCode::ShapeMismatch, "channel counts do not match the concat layout");
  }
  return concat_channels(noisy, condition);
}

LatentVolume ConcatLayout::noisy_part(const LatentVolume& stacked) const {
  if (stacked.channels() != total()) throw Error(ErrorCode::ShapeMismatch, "stacked input has wrong channel count");
  const std::size_t n = noisy_channels * stacked.frames() * stacked.height() * stacked.width();
  std::vector<float> data(stacked.data().begin(), stacked.data().begin() + static_cast<std::ptrdiff_t>(n));
  return LatentVolume(Shape4{noisy_channels, stacked.frames(), stacked.height(), stacked.width()}, std::move(data));
}

LatentVolume ConcatLayout::condition_part(const LatentVolume& stacked) const {
  if (stacked.channels() != total()) throw Error(ErrorCode::ShapeMismatch, "stacked input has wrong channel count");
  const std::size_t n = noisy_channels * stacked.frames() * stacked.height() * stacked.width();
  std::vector<float> data(stacked.data().begin() + static_cast<std::ptrdiff_t>(n), stacked.data().end());
  return LatentVolume(Shape4{condition_channels, stacked.frames(), stacked.height(), stacked.width()},
                      std::move(data));
}

LatentVolume blend_tiles(const TilePlan& plan, const std::vector<LatentVolume>& tiles, bool feather) {
  if (tiles.size() != plan.windows.size()) {
    throw Error(ErrorCode::ShapeMismatch, "tile count differs from plan window count");
  }
  const Shape4& shape = plan.target;
  const std::size_t cells = shape.frames * shape.height * shape.width;
  std::vector<double> sum(shape.count(), 0.0);
  std::vector<double> weight(cells, 0.0);
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const TileWindow& win = plan.windows[i];
    const LatentVolume& tile = tiles[i];
    if (tile.shape() != Shape4{shape.channels, win.extent.t, win.extent.h, win.extent.w}) {
      throw Error(ErrorCode::ShapeMismatch, "tile " + std::to_string(i) + " does not match its window");
    }
    for (std::size_t t = 0; t < win.extent.t; ++t) {
      const double wt = feather ? ramp_weight(t, win.extent.t, plan.overlap.t) : 1.0;
      for (std::size_t h = 0; h < win.extent.h; ++h) {
        const double wh = feather ? ramp_weight(h, win.extent.h, plan.overlap.h) : 1.0;
        for (std::size_t w = 0; w < win.extent.w; ++w) {
          const double ww = feather ? ramp_weight(w, win.extent.w, plan.overlap.w) : 1.0;
          const double k = wt * wh * ww;
          const std::size_t cell =
              ((win.start.t + t) * shape.height + win.start.h + h) * shape.width + win.start.w + w;
          weight[cell] += k;
          for (std::size_t c = 0; c < shape.channels; ++c) sum[c * cells + cell] += k * tile.at(c, t, h, w);
        }
      }
    }
  }
  LatentVolume out(shape);
  auto od = out.data();
  for (std::size_t i = 0; i < od.size(); ++i) {
    const double k = weight[i % cells];
    if (k <= 0.0) throw Error(ErrorCode::ShapeMismatch, "plan leaves a cell uncovered");
    od[i] = static_cast<float>(sum[i] / k);
  }
  return out;
}

LatentVolume upscale_video(const LatentVolume& low_res, std::size_t scale, const Denoiser& denoiser,
                           const Schedule& schedule, const TileParams& params, std::uint64_t seed) {
  if (scale != 2 && scale != 4) throw Error(ErrorCode::InvalidScale, "scale must be 2 or 4, got " + std::to_string(scale));
  const LatentVolume condition = upsample(low_res, scale, scale);
  const TilePlan plan = make_plan(condition.shape(), params.tile, params.overlap);

  std::vector<LatentVolume> tiles(plan.windows.size());
  auto run_tile = [&](std::size_t i) {
    const TileWindow& win = plan.windows[i];
    const Shape4 shape{condition.channels(), win.extent.t, win.extent.h, win.extent.w};
    ConditionBundle cond;
    cond.extra_channels = condition.crop(win.start, shape);
    cond.origin = win.start;
    tiles[i] = sample(denoiser, schedule, shape, seed, cond);
  };

  std::size_t workers = params.threads ? params.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, tiles.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tiles.size(); ++i) run_tile(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (std::size_t k = 0; k < workers; ++k) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < tiles.size(); i = next++) {
            try {
              run_tile(i);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  return blend_tiles(plan, tiles, params.feather);
}

LatentVolume ConditionEchoDenoiser::velocity(const LatentVolume& input, float t, const ConditionBundle& cond) const {
  if (!cond.extra_channels || input.channels() != 2 * cond.extra_channels->channels()) {
    throw Error(ErrorCode::ShapeMismatch, "echo denoiser expects [noisy | condition] with equal halves");
  }
  const std::size_t c = cond.extra_channels->channels();
  const ConcatLayout layout{c, c};
  const LatentVolume noisy = layout.noisy_part(input);
  const LatentVolume target = layout.condition_part(input);
  LatentVolume v(noisy.shape());
  auto vd = v.data();
  for (std::size_t i = 0; i < vd.size(); ++i) vd[i] = (noisy.data()[i] - target.data()[i]) / t;
  return v;
}

}  // namespace forgeline
