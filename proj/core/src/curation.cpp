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

#include "forgeline/curation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "forgeline/error.hpp"
#include "forgeline/noise.hpp"

namespace forgeline {

std::string_view to_string(AssetKind kind) noexcept { return kind == AssetKind::Image ? "image" : "clip"; }

std::string_view to_string(Style style) noexcept {
  switch (style) {
    case Style::TwoD: return "2D";
    case Style::ThreeD: return "3D";
    case Style::Other: return "other";
  }
  return "other";
}

std::string_view to_string(Tier tier) noexcept {
  switch (tier) {
    case Tier::Rejected: return "rejected";
    case Tier::Bronze: return "bronze";
    case Tier::Gold: return "gold";
    case Tier::Premium: return "premium";
  }
  return "rejected";
}

std::optional<Style> parse_style(std::string_view text) noexcept {
  if (text == "2D" || text == "2d") return Style::TwoD;
  if (text == "3D" || text == "3d") return Style::ThreeD;
  if (text == "other") return Style::Other;
  return std::nullopt;
}

std::string_view to_string(AestheticDimension dimension) noexcept {
  switch (dimension) {
    case AestheticDimension::ColorHarmony: return "color_harmony";
    case AestheticDimension::LightShadowHarmony: return "light_shadow_harmony";
    case AestheticDimension::StructuralRationality: return "structural_rationality";
    case AestheticDimension::FormFluidity: return "form_fluidity";
    case AestheticDimension::ImageCompleteness: return "image_completeness";
    case AestheticDimension::CompositionalLayering: return "compositional_layering";
  }
  return "color_harmony";
}

namespace {

double require_score(const CurationRecord& record, const std::string& name) {
  const auto it = record.scores.find(name);
  if (it == record.scores.end()) {
    throw Error(ErrorCode::MissingScore, "record '" + record.asset_id + "' has no '" + name + "' score");
  }
  return it->second;
}

}  // namespace

Tier classify_tier(const CurationRecord& record, const TierThresholds& thresholds) {
  const double style = require_score(record, "style");
  const double clarity = require_score(record, "clarity");
  const double aesthetic = require_score(record, "aesthetic");

  if (style < thresholds.style) return Tier::Rejected;
  const bool gold = record.width >= thresholds.min_side && record.height >= thresholds.min_side &&
                    clarity >= thresholds.clarity && aesthetic >= thresholds.aesthetic && !record.flags.watermark &&
                    !record.flags.ocr_text;
  if (!gold) return Tier::Bronze;
  const bool premium = !record.flags.defect && !record.flags.aigc && record.manual_pass.value_or(false);
  return premium ? Tier::Premium : Tier::Gold;
}

std::optional<int> aggregate_annotation(const AnnotationTask& task) {
  if (task.scores.size() != 5) {
    throw Error(ErrorCode::MalformedTask, "task '" + task.asset_id + "' has " + std::to_string(task.scores.size()) +
                                              " scores, expected 5");
  }
  std::array<int, 6> counts{};
  for (int s : task.scores) {
    if (s < 1 || s > 5) throw Error(ErrorCode::MalformedTask, "score " + std::to_string(s) + " outside 1..5");
    ++counts[static_cast<std::size_t>(s)];
  }
  for (int v = 1; v <= 5; ++v) {
    if (counts[static_cast<std::size_t>(v)] >= 4) return v;
  }
  return std::nullopt;
}

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  // Lemire-style rejection keeps the draw exactly uniform.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

AcceptanceResult acceptance_check(std::span<const std::pair<int, int>> pairs, double sample_rate, std::uint64_t seed) {
  if (pairs.empty()) throw Error(ErrorCode::EmptyBatch, "no annotations to inspect");
  if (!(sample_rate > 0.0) || sample_rate > 1.0) {
    throw Error(ErrorCode::EmptyBatch, "sample rate must lie in (0, 1]");
  }
  const std::size_t n = pairs.size();
  const std::size_t k = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(sample_rate * static_cast<double>(n))), 1, n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (k < n) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(bounded_draw(rng, n - i));
      std::swap(order[i], order[j]);
    }
  }

  AcceptanceResult result;
  result.sampled = k;
  for (std::size_t i = 0; i < k; ++i) {
    const auto [final_score, reference] = pairs[order[i]];
    const int diff = std::abs(final_score - reference);
    if (diff == 0) ++result.exact;
    if (diff <= 1) ++result.within_one;
  }
  result.exact_fraction = static_cast<double>(result.exact) / static_cast<double>(k);
  result.within_one_fraction = static_cast<double>(result.within_one) / static_cast<double>(k);
  // Integer comparisons keep the 70% / 95% boundaries exact.
  result.pass = result.exact * 10 >= 7 * k && result.within_one * 20 >= 19 * k;
  return result;
}

const std::string& sample_caption(const CaptionSet& set, std::mt19937_64& rng) {
  if (!set.short_text || !set.medium || !set.detailed || !set.comprehensive) {
    throw Error(ErrorCode::IncompleteCaptionSet, "image captions need short, medium, detailed and comprehensive");
  }
  const std::uint64_t r = bounded_draw(rng, 10);
  if (r == 0) return *set.short_text;
  if (r == 1) return *set.medium;
  if (r == 2) return *set.detailed;
  return *set.comprehensive;
}

const std::string& sample_clip_caption(const CaptionSet& set, std::mt19937_64& rng, const ClipCaptionWeights& weights) {
  const std::array<const std::optional<std::string>*, 4> slots{&set.long_visual, &set.long_motion, &set.short_visual,
                                                               &set.short_motion};
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    if (*slots[i] && weights[i] > 0.0) total += weights[i];
  if (total <= 0.0) throw Error(ErrorCode::IncompleteCaptionSet, "clip has no weighted caption variant");
  double u = unit_draw(rng) * total;
  std::size_t last = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!*slots[i] || weights[i] <= 0.0) continue;
    last = i;
    if (u < weights[i]) return **slots[i];
    u -= weights[i];
  }
  return **slots[last];
}

std::vector<CurationRecord> balance_styles(std::span<const CurationRecord> records, std::uint64_t seed) {
  std::vector<std::size_t> two_d, three_d;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].style == Style::TwoD) two_d.push_back(i);
    if (records[i].style == Style::ThreeD) three_d.push_back(i);
  }
  if (two_d.empty() || three_d.empty()) {
    throw Error(ErrorCode::OneStyleMissing, "balancing needs both 2D and 3D records");
  }
  std::vector<std::size_t>& majority = two_d.size() >= three_d.size() ? two_d : three_d;
  const std::size_t keep = std::min(two_d.size(), three_d.size());

  auto aesthetic = [&](std::size_t i) {
    const auto it = records[i].scores.find("aesthetic");
    return it == records[i].scores.end() ? 0.0 : it->second;
  };
  auto tiebreak = [&](std::size_t i) {
    std::uint64_t h = seed;
    for (char ch : records[i].asset_id) h = splitmix64(h ^ static_cast<unsigned char>(ch));
    return h;
  };
  std::stable_sort(majority.begin(), majority.end(), [&](std::size_t a, std::size_t b) {
    const double sa = aesthetic(a), sb = aesthetic(b);
    if (sa != sb) return sa > sb;
    return tiebreak(a) < tiebreak(b);
  });
  std::vector<bool> dropped(records.size(), false);
  for (std::size_t r = keep; r < majority.size(); ++r) dropped[majority[r]] = true;

  std::vector<CurationRecord> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i)
    if (!dropped[i]) out.push_back(records[i]);
  return out;
}

}  // namespace forgeline
