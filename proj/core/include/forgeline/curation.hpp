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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace forgeline {

enum class AssetKind { Image, Clip };
enum class Style { TwoD, ThreeD, Other };
enum class Tier { Rejected, Bronze, Gold, Premium };

std::string_view to_string(AssetKind kind) noexcept;
std::string_view to_string(Style style) noexcept;
std::string_view to_string(Tier tier) noexcept;
std::optional<Style> parse_style(std::string_view text) noexcept;

struct QualityFlags {
  bool watermark = false;
  bool ocr_text = false;
  bool logo = false;
  bool defect = false;
  bool aigc = false;

  bool operator==(const QualityFlags&) const = default;
};

/// Caption variants. Images use the four length variants; clips
/// additionally carry visual/motion captions and tags.
struct CaptionSet {
  std::optional<std::string> short_text;
  std::optional<std::string> medium;
  std::optional<std::string> detailed;
  std::optional<std::string> comprehensive;
  std::optional<std::string> long_visual;
  std::optional<std::string> long_motion;
  std::optional<std::string> short_visual;
  std::optional<std::string> short_motion;
  std::vector<std::string> tags;

  bool operator==(const CaptionSet&) const = default;
};

struct ClipBounds {
  std::size_t start = 0;  // inclusive
  std::size_t end = 0;    // exclusive
  bool operator==(const ClipBounds&) const = default;
};

struct CurationRecord {
  std::string asset_id;
  AssetKind kind = AssetKind::Image;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t frames = 1;
  /// Named scorer outputs ("style", "clarity", "aesthetic", ...).
  std::map<std::string, double> scores;
  /// Which scorer produced each score.
  std::map<std::string, std::string> scorer_ids;
  QualityFlags flags;
  /// Outcome of the manual aesthetic review; absent until reviewed.
  std::optional<bool> manual_pass;
  Style style = Style::Other;
  std::optional<Tier> tier;
  CaptionSet captions;
  std::optional<ClipBounds> clip;
};

/// Gate thresholds. The resolution gate (both sides >= 1024) is fixed; the
/// score thresholds are configuration.
struct TierThresholds {
  double style = 0.5;
  double clarity = 0.3;
  double aesthetic = 0.5;
  std::size_t min_side = 1024;
};

/// Bronze: style >= theta_style. Gold: Bronze, both sides >= 1024,
/// clarity >= theta_c, aesthetic >= theta_a, no watermark, no OCR text.
/// Premium: Gold, no defect, not AIGC, manual review passed. Returns the
/// highest tier reached. Throws MissingScore naming an absent score.
Tier classify_tier(const CurationRecord& record, const TierThresholds& thresholds);

enum class AestheticDimension {
  ColorHarmony,
  LightShadowHarmony,
  StructuralRationality,
  FormFluidity,
  ImageCompleteness,
  CompositionalLayering,
};

std::string_view to_string(AestheticDimension dimension) noexcept;

struct AnnotationTask {
  std::string asset_id;
  AestheticDimension dimension = AestheticDimension::ColorHarmony;
  std::vector<int> scores;  // exactly five, each in 1..5
};

/// Valid with the agreed score when at least four of the five annotators
/// gave the same value; otherwise nullopt. Throws MalformedTask.
std::optional<int> aggregate_annotation(const AnnotationTask& task);

struct AcceptanceResult {
  bool pass = false;
  std::size_t sampled = 0;
  std::size_t exact = 0;
  std::size_t within_one = 0;
  double exact_fraction = 0.0;
  double within_one_fraction = 0.0;
};

inline constexpr double kDefaultInspectionRate = 0.05;

/// Draws round(rate * n) pairs (at least one) without replacement using a
/// seeded shuffle and passes iff at least 70% match the reference exactly
/// and at least 95% are within one point. Throws EmptyBatch.
AcceptanceResult acceptance_check(std::span<const std::pair<int, int>> pairs, double sample_rate = kDefaultInspectionRate,
                                  std::uint64_t seed = 0);

/// Uniform double in [0, 1) from the top 53 bits of the engine.
double unit_draw(std::mt19937_64& rng);
/// Uniform integer in [0, bound) without modulo bias.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

/// Picks short/medium/detailed/comprehensive with weights 1:1:1:7. Throws
/// IncompleteCaptionSet unless all four are present.
const std::string& sample_caption(const CaptionSet& set, std::mt19937_64& rng);

/// Weights for long_visual, long_motion, short_visual, short_motion.
using ClipCaptionWeights = std::array<double, 4>;
inline constexpr ClipCaptionWeights kDefaultClipCaptionWeights{1.0, 1.0, 1.0, 1.0};

/// Weighted pick among the clip caption variants that are present. Throws
/// IncompleteCaptionSet if none is.
const std::string& sample_clip_caption(const CaptionSet& set, std::mt19937_64& rng,
                                       const ClipCaptionWeights& weights = kDefaultClipCaptionWeights);

/// Keeps every 2D/3D record of the minority style and the top-scored
/// (aesthetic, descending; ties by a seeded hash of the asset id) records of
/// the majority style so that both counts are equal. Records of other styles
/// pass through. Output keeps input order. Throws OneStyleMissing.
std::vector<CurationRecord> balance_styles(std::span<const CurationRecord> records, std::uint64_t seed = 0);

}  // namespace forgeline
