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

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "forgeline/volume.hpp"

namespace forgeline {

/// Strictly decreasing time grid 1 = t_0 > t_1 > ... > t_N = 0.
class Schedule {
 public:
  /// Uniform grid with `steps` Euler steps. Throws InvalidSchedule if 0.
  static Schedule uniform(std::size_t steps);
  /// Throws InvalidSchedule unless the grid starts at exactly 1, ends at
  /// exactly 0 and strictly decreases.
  static Schedule from_times(std::vector<float> times);

  std::size_t steps() const noexcept { return times_.size() - 1; }
  const std::vector<float>& times() const noexcept { return times_; }

 private:
  explicit Schedule(std::vector<float> times) : times_(std::move(times)) {}
  std::vector<float> times_;
};

/// Everything a denoiser may condition on besides the noisy state.
///
/// `mask` uses the inpainting convention: 1 marks cells to synthesize, 0
/// marks cells held to `known`. `extra_channels` are stacked after the noisy
/// latent along the channel axis ([noisy | condition]) before the denoiser
/// sees them. `origin` is the absolute (t, h, w) position of the sampled
/// window inside the full volume; noise is indexed from it.
struct ConditionBundle {
  std::optional<BinaryMask> mask;
  std::optional<LatentVolume> known;
  std::optional<LatentVolume> extra_channels;
  std::optional<LatentVolume> pluecker;
  Offset3 origin{};

  /// Throws ShapeMismatch if any present component disagrees with `shape`
  /// on frames/height/width, or if `mask` is present without `known`.
  void validate(const Shape4& shape) const;
};

/// Pluggable velocity field for flow matching (t = 1 noise, t = 0 data).
///
/// `input` is the noisy latent, or [noisy | extra_channels] when the bundle
/// carries extra channels. The result must have the noisy latent's shape and
/// must be a pure function of its arguments.
class Denoiser {
 public:
  virtual ~Denoiser() = default;
  virtual LatentVolume velocity(const LatentVolume& input, float t, const ConditionBundle& cond) const = 0;
};

/// Closed-form velocity (x - target) / t. One Euler step from any t lands on
/// the target, so sampling reproduces it for every schedule.
///
/// The target may be larger than the sampled window along (t, h, w); the
/// window at `cond.origin` is used. When the input carries extra channels,
/// only its leading `target.channels()` channels are the noisy state.
class ToyDenoiser final : public Denoiser {
 public:
  explicit ToyDenoiser(LatentVolume target) : target_(std::move(target)) {}

  const LatentVolume& target() const noexcept { return target_; }
  LatentVolume velocity(const LatentVolume& input, float t, const ConditionBundle& cond) const override;

 private:
  LatentVolume target_;
};

/// Toy inpainting prior: the target keeps `cond.known` outside the mask and
/// fills masked cells with a discrete harmonic (Laplace) interpolation over
/// the (t, h, w) grid, solved by a fixed number of Gauss-Seidel sweeps. Used
/// by the CLI where no ground-truth target exists.
///
/// The fill depends only on (known, mask), which stay fixed across the
/// steps of one sampling run, so the last solved target is memoized.
class HarmonicFillDenoiser final : public Denoiser {
 public:
  explicit HarmonicFillDenoiser(std::size_t sweeps = 256);

  LatentVolume fill_target(const LatentVolume& known, const BinaryMask& mask) const;
  LatentVolume velocity(const LatentVolume& input, float t, const ConditionBundle& cond) const override;

 private:
  struct Cache;
  std::size_t sweeps_;
  std::shared_ptr<Cache> cache_;
};

/// Called after every Euler step with the step index (1-based), the time the
/// state landed on and the state itself.
using StepObserver = std::function<void(std::size_t step, float t, const LatentVolume& state)>;

/// Euler integration from seeded noise at t = 1 to t = 0:
/// x <- x - (t_k - t_{k+1}) * velocity(x, t_k). The velocity is never
/// evaluated at t = 0. Throws ShapeMismatch on inconsistent shapes.
LatentVolume sample(const Denoiser& denoiser, const Schedule& schedule, const Shape4& shape,
                    std::uint64_t seed, const ConditionBundle& cond = {}, const StepObserver& observe = {});

/// Blended inpainting. After each step landing at time s, cells with
/// mask == 0 are overwritten by s * eps + (1 - s) * known, with eps drawn
/// from a sub-seeded noise stream; at s = 0 they equal `known` exactly.
/// The bundle's mask/known are set to the arguments before sampling.
LatentVolume sample_inpaint(const Denoiser& denoiser, const Schedule& schedule, const LatentVolume& known,
                            const BinaryMask& mask, std::uint64_t seed, ConditionBundle cond = {},
                            const StepObserver& observe = {});

/// Noise sub-stream tag used for re-noising the known region.
inline constexpr std::uint64_t kKnownNoiseTag = 0x4B4E4F574Eull;

}  // namespace forgeline
