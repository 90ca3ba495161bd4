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
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "forgeline/config.hpp"
#include "forgeline/curation.hpp"
#include "forgeline/volume.hpp"

namespace forgeline {

/// A deterministic per-image score in [lo(), hi()].
class Scorer {
 public:
  virtual ~Scorer() = default;
  /// Score name as used by the tier gates ("style", "clarity", ...).
  virtual std::string name() const = 0;
  /// Identifier of the implementation, recorded next to every score.
  virtual std::string id() const = 0;
  virtual double lo() const { return 0.0; }
  virtual double hi() const { return 1.0; }
  virtual double score(const Rgba8Image& image) const = 0;
};

/// Mean HSV saturation.
class SaturationStyleScorer final : public Scorer {
 public:
  std::string name() const override { return "style"; }
  std::string id() const override { return "hsv-saturation/1"; }
  double score(const Rgba8Image& image) const override;
};

/// Mean |dL/dx| + |dL/dy| of integer luma over 32, clamped to 1.
class GradientClarityScorer final : public Scorer {
 public:
  std::string name() const override { return "clarity"; }
  std::string id() const override { return "luma-gradient-energy/1"; }
  double score(const Rgba8Image& image) const override;
};

/// Entropy of the 32-bin luma histogram over its 5-bit maximum.
class LumaEntropyAestheticScorer final : public Scorer {
 public:
  std::string name() const override { return "aesthetic"; }
  std::string id() const override { return "luma-entropy/1"; }
  double score(const Rgba8Image& image) const override;
};

std::vector<std::unique_ptr<Scorer>> default_image_scorers();

inline constexpr const char* kLuminanceScorerId = "luma-histogram-clip/1";
inline constexpr const char* kRichnessScorerId = "block-flow-direction-entropy/1";

struct CorpusAsset {
  std::string id;
  AssetKind kind = AssetKind::Image;
  std::filesystem::path path;     // PNG file or frame directory
  std::filesystem::path sidecar;  // may not exist
};

/// Lists <root>/images/*.png and <root>/clips/<id>/ frame directories,
/// sorted by id. Sidecars are <id>.json next to the asset.
std::vector<CorpusAsset> scan_corpus(const std::filesystem::path& root);

/// Ingested labels: style, quality flags, manual review outcome, captions.
struct Sidecar {
  Style style = Style::Other;
  QualityFlags flags;
  std::optional<bool> manual_pass;
  CaptionSet captions;
};

Sidecar parse_sidecar(std::string_view json_text);
Sidecar load_sidecar(const std::filesystem::path& path);

/// Frames of a clip directory: every *.png, in file-name order.
std::vector<Rgba8Image> load_clip_frames(const std::filesystem::path& dir);

struct CurationRun {
  std::vector<CurationRecord> images;
  std::vector<CurationRecord> clips;  // one record per scene/motion segment
  std::vector<bool> clip_kept;        // passed the luminance gate
  std::vector<bool> clip_selected;    // kept and survived style balancing
  /// One JSON object per line, keys sorted, in (kind, id) order.
  std::vector<std::string> manifest_lines;
  std::string summary_json;
};

CurationRun run_curation(const std::filesystem::path& corpus_root, const CurationConfig& config, std::uint64_t seed);

/// Writes manifest.jsonl and summary.json into `dir`.
void write_curation_outputs(const CurationRun& run, const std::filesystem::path& dir);

/// Writes the deterministic 60-asset fixture corpus (40 images, 20 clips).
void generate_fixture_corpus(const std::filesystem::path& root, std::uint64_t seed = 0);

}  // namespace forgeline
