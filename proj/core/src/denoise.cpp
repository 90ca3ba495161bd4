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

#include "forgeline/denoise.hpp"

#include <mutex>
#include <string>

#include "forgeline/error.hpp"
#include "forgeline/noise.hpp"

namespace forgeline {

namespace {

bool same_grid(const Shape4& a, const Shape4& b) {
  return a.frames == b.frames && a.height == b.height && a.width == b.width;
}

}  // namespace

Schedule Schedule::uniform(std::size_t steps) {
  if (steps == 0) throw Error(ErrorCode::InvalidSchedule, "need at least one step");
  std::vector<float> times(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    times[k] = static_cast<float>(static_cast<double>(steps - k) / static_cast<double>(steps));
  }
  return Schedule(std::move(times));
}

Schedule Schedule::from_times(std::vector<float> times) {
  if (times.size() < 2) throw Error(ErrorCode::InvalidSchedule, "need at least two time points");
  if (times.front() != 1.0f || times.back() != 0.0f) {
    throw Error(ErrorCode::InvalidSchedule, "grid must start at 1 and end at 0");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] < times[k - 1])) {
      throw Error(ErrorCode::InvalidSchedule, "grid not strictly decreasing at index " + std::to_string(k));
    }
  }
  return Schedule(std::move(times));
}

void ConditionBundle::validate(const Shape4& shape) const {
  if (mask) {
    if (!known) throw Error(ErrorCode::ShapeMismatch, "mask given without known content");
    if (!mask->matches(shape)) throw Error(ErrorCode::ShapeMismatch, "mask grid differs from sampled shape");
  }
  if (known && known->shape() != shape) {
    throw Error(ErrorCode::ShapeMismatch, "known content shape differs from sampled shape");
  }
  if (extra_channels && !same_grid(extra_channels->shape(), shape)) {
    throw Error(ErrorCode::ShapeMismatch, "extra channels grid differs from sampled shape");
  }
}

LatentVolume ToyDenoiser::velocity(const LatentVolume& input, float t, const ConditionBundle& cond) const {
  const std::size_t channels = target_.channels();
  if (input.channels() < channels) {
    throw Error(ErrorCode::ShapeMismatch, "toy target has more channels than the input");
  }
  const Shape4 out_shape{channels, input.frames(), input.height(), input.width()};
  const bool whole = target_.shape() == out_shape && cond.origin == Offset3{};
  LatentVolume cropped;
  if (!whole) cropped = target_.crop(cond.origin, out_shape);
  const LatentVolume& window = whole ? target_ : cropped;
  LatentVolume v(out_shape);
  auto vd = v.data();
  const auto xd = input.data();
  const auto td = window.data();
  for (std::size_t i = 0; i < vd.size(); ++i) vd[i] = (xd[i] - td[i]) / t;
  return v;
}

struct HarmonicFillDenoiser::Cache {
  std::mutex mutex;
  LatentVolume known;
  BinaryMask mask;
  LatentVolume target;
};

HarmonicFillDenoiser::HarmonicFillDenoiser(std::size_t sweeps) : sweeps_(sweeps), cache_(std::make_shared<Cache>()) {}

LatentVolume HarmonicFillDenoiser::fill_target(const LatentVolume& known, const BinaryMask& mask) const {
  LatentVolume out = known;
  const std::size_t T = known.frames(), H = known.height(), W = known.width();
  for (std::size_t c = 0; c < known.channels(); ++c) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t h = 0; h < H; ++h)
        for (std::size_t w = 0; w < W; ++w)
          if (!mask.test(t, h, w)) {
            sum += known.at(c, t, h, w);
            ++n;
          }
    const float seed_value = n ? static_cast<float>(sum / static_cast<double>(n)) : 0.5f;
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t h = 0; h < H; ++h)
        for (std::size_t w = 0; w < W; ++w)
          if (mask.test(t, h, w)) out.at(c, t, h, w) = seed_value;
    if (n == 0) continue;

    for (std::size_t sweep = 0; sweep < sweeps_; ++sweep) {
      for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t h = 0; h < H; ++h) {
          for (std::size_t w = 0; w < W; ++w) {
            if (!mask.test(t, h, w)) continue;
            float acc = 0.0f;
            int count = 0;
            if (t > 0) acc += out.at(c, t - 1, h, w), ++count;
            if (t + 1 < T) acc += out.at(c, t + 1, h, w), ++count;
            if (h > 0) acc += out.at(c, t, h - 1, w), ++count;
            if (h + 1 < H) acc += out.at(c, t, h + 1, w), ++count;
            if (w > 0) acc += out.at(c, t, h, w - 1), ++count;
            if (w + 1 < W) acc += out.at(c, t, h, w + 1), ++count;
            if (count) out.at(c, t, h, w) = acc / static_cast<float>(count);
          }
        }
      }
    }
  }
  return out;
}

LatentVolume HarmonicFillDenoiser::velocity(const LatentVolume& input, float t, const ConditionBundle& cond) const {
  if (!cond.known || !cond.mask) {
    throw Error(ErrorCode::ShapeMismatch, "harmonic fill needs known content and a mask");
  }
  LatentVolume target;
  {
    std::lock_guard lock(cache_->mutex);
    if (!bit_equal(cache_->known, *cond.known) || cache_->mask != *cond.mask) {
      cache_->target = fill_target(*cond.known, *cond.mask);
      cache_->known = *cond.known;
      cache_->mask = *cond.mask;
    }
    target = cache_->target;
  }
  if (input.channels() < target.channels() || !same_grid(input.shape(), target.shape())) {
    throw Error(ErrorCode::ShapeMismatch, "harmonic fill target does not match the input");
  }
  LatentVolume v(target.shape());
  auto vd = v.data();
  const auto xd = input.data();
  const auto td = target.data();
  for (std::size_t i = 0; i < vd.size(); ++i) vd[i] = (xd[i] - td[i]) / t;
  return v;
}

namespace {

LatentVolume integrate(const Denoiser& denoiser, const Schedule& schedule, LatentVolume x,
                       const ConditionBundle& cond, const std::function<void(LatentVolume&, float)>& after_step,
                       const StepObserver& observe) {
  const auto& times = schedule.times();
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const float t = times[k];
    const float dt = times[k] - times[k + 1];
    LatentVolume v = cond.extra_channels ? denoiser.velocity(concat_channels(x, *cond.extra_channels), t, cond)
                                         : denoiser.velocity(x, t, cond);
    if (v.shape() != x.shape()) {
      throw Error(ErrorCode::ShapeMismatch, "denoiser output shape differs from the noisy latent");
    }
    auto xd = x.data();
    const auto vd = v.data();
    for (std::size_t i = 0; i < xd.size(); ++i) xd[i] -= dt * vd[i];
    if (after_step) after_step(x, times[k + 1]);
    if (observe) observe(k + 1, times[k + 1], x);
  }
  x.check_finite();
  return x;
}

}  // namespace

LatentVolume sample(const Denoiser& denoiser, const Schedule& schedule, const Shape4& shape, std::uint64_t seed,
                    const ConditionBundle& cond, const StepObserver& observe) {
  cond.validate(shape);
  LatentVolume x = SeededNoise(seed).volume(shape, cond.origin);
  return integrate(denoiser, schedule, std::move(x), cond, {}, observe);
}

LatentVolume sample_inpaint(const Denoiser& denoiser, const Schedule& schedule, const LatentVolume& known,
                            const BinaryMask& mask, std::uint64_t seed, ConditionBundle cond,
                            const StepObserver& observe) {
  if (!mask.matches(known.shape())) {
    throw Error(ErrorCode::ShapeMismatch, "mask grid differs from known content");
  }
  cond.mask = mask;
  cond.known = known;
  const Shape4 shape = known.shape();
  cond.validate(shape);

  const LatentVolume eps = SeededNoise(sub_seed(seed, kKnownNoiseTag)).volume(shape, cond.origin);
  const std::size_t plane = shape.frames * shape.height * shape.width;
  const auto bits = mask.bits();
  auto blend = [&](LatentVolume& x, float s) {
    auto xd = x.data();
    const auto kd = known.data();
    const auto ed = eps.data();
    for (std::size_t i = 0; i < xd.size(); ++i) {
      if (bits[i % plane]) continue;
      xd[i] = s == 0.0f ? kd[i] : s * ed[i] + (1.0f - s) * kd[i];
    }
  };

  LatentVolume x = SeededNoise(seed).volume(shape, cond.origin);
  blend(x, schedule.times().front());
  return integrate(denoiser, schedule, std::move(x), cond, blend, observe);
}

}  // namespace forgeline
