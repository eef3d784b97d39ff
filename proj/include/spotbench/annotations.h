// Copyright 2026 The Spotbench Authors
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

// Ground-truth and prediction data model, benchmark format readers and the
// canonical JSONL interchange format.
//
// Canonical ground truth, one image per line:
//   {"image_id": str, "width": int?, "height": int?,
//    "instances": [{"polygon": [[x,y],...], "text": str, "ignore": bool,
//                   "lang": str?}]}
// Canonical predictions, one prediction per line:
//   {"image_id": str, "polygon": [[x,y],...], "text": str, "score": float,
//    "control_points": [[x,y],...]?}
// Reals are written with 6 fractional digits and no exponent. Unknown keys
// are carried through a read/write cycle unchanged.

#ifndef SPOTBENCH_ANNOTATIONS_H_
#define SPOTBENCH_ANNOTATIONS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spotbench/geometry.h"

namespace spotbench::annot {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kIgnoreSentinel = "###";

struct TextInstance {
  geom::Polygon polygon;
  std::string transcription;
  bool ignore = false;
  std::optional<std::string> language_tag;
  // False when the source polygon self-intersects; such instances are
  // forced to ignore and overlap nothing.
  bool polygon_simple = true;
  Json extra = Json::object();
};

struct SpottingPrediction {
  geom::Polygon polygon;
  std::string text;
  double score = 0.0;
  std::optional<std::vector<geom::Point2>> control_points;
  bool polygon_simple = true;
  Json extra = Json::object();
};

struct ImageAnnotations {
  std::string image_id;
  std::optional<int> width;
  std::optional<int> height;
  std::vector<TextInstance> instances;
  Json extra = Json::object();
};

// Predictions grouped by image, input order kept within each image.
using PredictionSet = std::map<std::string, std::vector<SpottingPrediction>>;

struct ValidationConfig {
  int max_queries_per_image = 100;
  int control_points_per_instance = 20;
  int max_text_length = 25;
};

// Line-level CTW1500 transcriptions run up to 100 characters.
ValidationConfig Ctw1500ValidationConfig();

enum class Format { kIcdar15, kTotalText, kCtw1500, kBezierSynthText, kCanonical };

// Throws ArgumentError for unknown tags.
Format ParseFormat(std::string_view tag);
std::string_view FormatName(Format f);

struct ParseOptions {
  int bezier_samples = 10;  // per curve, for bezier-synthtext
};

struct GroundTruth {
  std::vector<ImageAnnotations> images;
  std::vector<std::string> warnings;
};

// `path` is a file or, for the per-image formats, a directory of *.txt
// files (image_id = file stem without a leading "gt_"). Throws ParseError
// for malformed records and IoError for unreadable paths.
GroundTruth ParseGroundTruth(const std::string& path, Format format,
                             const ParseOptions& opts = {});

// Parses one per-image annotation file body.
ImageAnnotations ParseImageText(std::string_view content, Format format,
                                const std::string& image_id,
                                const std::string& source_name,
                                std::vector<std::string>& warnings,
                                const ParseOptions& opts = {});

GroundTruth ParseCanonicalGroundTruth(std::string_view content,
                                      const std::string& source_name);

std::string WriteCanonicalGroundTruth(const std::vector<ImageAnnotations>& images);

struct Predictions {
  PredictionSet by_image;
  std::vector<std::string> warnings;
};

Predictions ParsePredictions(const std::string& path);
Predictions ParsePredictionsText(std::string_view content,
                                 const std::string& source_name);
std::string WritePredictions(const PredictionSet& preds);

// Never fatal; one message per violation.
std::vector<std::string> ValidatePredictions(const PredictionSet& preds,
                                             const ValidationConfig& cfg = {});

struct DatasetStats {
  int images = 0;
  int instances = 0;
  int ignored = 0;
  double words_per_image = 0.0;
};

// Throws ArgumentError on an empty dataset.
DatasetStats ComputeDatasetStats(const std::vector<ImageAnnotations>& images);

}  // namespace spotbench::annot

#endif  // SPOTBENCH_ANNOTATIONS_H_
