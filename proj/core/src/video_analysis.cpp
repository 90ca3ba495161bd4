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

#include "forgeline/video_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "forgeline/error.hpp"

namespace forgeline {

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

std::vector<std::uint8_t> luma_plane(const Rgba8Image& frame) {
  std::vector<std::uint8_t> out(frame.height() * frame.width());
  for (std::size_t y = 0; y < frame.height(); ++y)
    for (std::size_t x = 0; x < frame.width(); ++x)
      out[y * frame.width() + x] = luma(frame.at(y, x, 0), frame.at(y, x, 1), frame.at(y, x, 2));
  return out;
}

namespace {

std::vector<double> channel_histograms(const Rgba8Image& img, std::size_t bins) {
  std::vector<double> hist(3 * bins, 0.0);
  const std::size_t n = img.height() * img.width();
  for (std::size_t y = 0; y < img.height(); ++y)
    for (std::size_t x = 0; x < img.width(); ++x)
      for (std::size_t c = 0; c < 3; ++c) hist[c * bins + img.at(y, x, c) * bins / 256] += 1.0;
  if (n) {
    for (double& v : hist) v /= static_cast<double>(n);
  }
  return hist;
}

void require_frames(std::span<const Rgba8Image> frames, std::size_t minimum, const char* what) {
  if (frames.size() < minimum) {
    throw Error(ErrorCode::TooShort, std::string(what) + " needs at least " + std::to_string(minimum) +
                                         " frames, got " + std::to_string(frames.size()));
  }
}

}  // namespace

double histogram_distance(const Rgba8Image& a, const Rgba8Image& b, std::size_t bins) {
  const auto ha = channel_histograms(a, bins);
  const auto hb = channel_histograms(b, bins);
  double total = 0.0;
  for (std::size_t i = 0; i < ha.size(); ++i) {
    const double s = ha[i] + hb[i];
    if (s > 0.0) total += (ha[i] - hb[i]) * (ha[i] - hb[i]) / s;
  }
  return 0.5 * total / 3.0;
}

std::vector<ClipBounds> split_scenes(std::span<const Rgba8Image> frames, const SceneParams& params) {
  require_frames(frames, 2, "scene detection");
  const std::size_t n = frames.size();
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 1; i < n; ++i) {
    if (histogram_distance(frames[i - 1], frames[i], params.bins) > params.cut_threshold) starts.push_back(i);
  }
  starts.push_back(n);

  std::vector<ClipBounds> clips;
  std::size_t pending = 0;
  for (std::size_t k = 1; k < starts.size(); ++k) {
    const std::size_t end = starts[k];
    if (end - pending >= params.min_len) {
      clips.push_back(ClipBounds{pending, end});
      pending = end;
    }
  }
  if (pending < n) {
    if (clips.empty()) {
      clips.push_back(ClipBounds{pending, n});
    } else {
      clips.back().end = n;
    }
  }
  return clips;
}

BlockFlow block_match(const Rgba8Image& prev, const Rgba8Image& next, const FlowParams& params) {
  if (prev.height() != next.height() || prev.width() != next.width()) {
    throw Error(ErrorCode::ShapeMismatch, "block matching needs equally sized frames");
  }
  BlockFlow flow;
  const std::size_t W = next.width(), H = next.height(), B = params.block;
  const int R = params.radius;
  const auto r = static_cast<std::size_t>(R);
  if (B == 0 || R < 0) return flow;
  const auto lp = luma_plane(prev);
  const auto ln = luma_plane(next);

  for (std::size_t y0 = r; y0 + B + r <= H; y0 += B) {
    for (std::size_t x0 = r; x0 + B + r <= W; x0 += B) {
      MotionVector best;
      std::uint64_t best_sad = std::numeric_limits<std::uint64_t>::max();
      int best_len = std::numeric_limits<int>::max();
      for (int dy = -R; dy <= R; ++dy) {
        for (int dx = -R; dx <= R; ++dx) {
          const std::size_t sx = x0 - static_cast<std::size_t>(static_cast<long>(dx));
          const std::size_t sy = y0 - static_cast<std::size_t>(static_cast<long>(dy));
          std::uint64_t sad = 0;
          for (std::size_t y = 0; y < B; ++y) {
            const std::uint8_t* a = &ln[(y0 + y) * W + x0];
            const std::uint8_t* b = &lp[(sy + y) * W + sx];
            for (std::size_t x = 0; x < B; ++x) sad += static_cast<std::uint64_t>(std::abs(a[x] - b[x]));
          }
          const int len = std::abs(dx) + std::abs(dy);
          if (sad < best_sad || (sad == best_sad && len < best_len)) {
            best_sad = sad;
            best_len = len;
            best = MotionVector{dx, dy};
          }
        }
      }
      flow.push_back(BlockMotion{x0, y0, best});
    }
  }
  return flow;
}

std::vector<double> mean_flow_series(std::span<const Rgba8Image> frames, const FlowParams& params) {
  std::vector<double> series;
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
    const BlockFlow flow = block_match(frames[i], frames[i + 1], params);
    double sum = 0.0;
    for (const auto& b : flow) sum += std::hypot(static_cast<double>(b.v.dx), static_cast<double>(b.v.dy));
    series.push_back(flow.empty() ? 0.0 : sum / static_cast<double>(flow.size()));
  }
  return series;
}

std::vector<ClipBounds> motion_split(std::span<const Rgba8Image> frames, double threshold, const FlowParams& params) {
  require_frames(frames, 3, "motion splitting");
  const auto mu = mean_flow_series(frames, params);
  std::vector<ClipBounds> ranges;
  std::size_t start = 0;
  for (std::size_t i = 0; i + 1 < mu.size(); ++i) {
    if (std::abs(mu[i + 1] - mu[i]) > threshold) {
      ranges.push_back(ClipBounds{start, i + 1});
      start = i + 1;
    }
  }
  ranges.push_back(ClipBounds{start, frames.size()});
  return ranges;
}

double luminance_quality(std::span<const Rgba8Image> frames) {
  if (frames.empty()) return 0.0;
  double clipped_sum = 0.0;
  for (const auto& frame : frames) {
    const auto plane = luma_plane(frame);
    std::size_t clipped = 0;
    for (std::uint8_t y : plane) {
      const unsigned bin = y / 8u;  // 32 bins
      if (bin <= 1 || bin >= 30) ++clipped;
    }
    clipped_sum += plane.empty() ? 0.0 : static_cast<double>(clipped) / static_cast<double>(plane.size());
  }
  return std::clamp(1.0 - clipped_sum / static_cast<double>(frames.size()), 0.0, 1.0);
}

std::size_t direction_bin(const MotionVector& v) noexcept {
  // Image rows grow downward; flip dy so "up" is +90 degrees.
  const double angle = std::atan2(-static_cast<double>(v.dy), static_cast<double>(v.dx));
  const double sector = std::floor((angle + std::numbers::pi / 8.0) / (std::numbers::pi / 4.0));
  const long bin = static_cast<long>(sector) % 8;
  return static_cast<std::size_t>(bin < 0 ? bin + 8 : bin);
}

double motion_richness(std::span<const Rgba8Image> frames, double fps, const FlowParams& params) {
  require_frames(frames, 2, "motion richness");
  std::array<double, 8> hist{};
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
    const BlockFlow flow = block_match(frames[i], frames[i + 1], params);
    for (const auto& b : flow) {
      if (b.v.dx == 0 && b.v.dy == 0) continue;
      hist[direction_bin(b.v)] += 1.0;
      total += 1.0;
    }
  }
  if (total == 0.0) return 0.0;
  double entropy = 0.0;
  for (double h : hist) {
    if (h > 0.0) {
      const double p = h / total;
      entropy -= p * std::log2(p);
    }
  }
  const double duration = static_cast<double>(frames.size()) / fps;
  return entropy / duration;
}

}  // namespace forgeline
