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

// End-to-end spotting scores: word accuracy under the None / Full / Strong /
// Weak / Generic lexicon protocols, 1-NED and out-of-vocabulary P/R/H.

#ifndef SPOTBENCH_E2E_EVAL_H_
#define SPOTBENCH_E2E_EVAL_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spotbench/detection_eval.h"
#include "spotbench/text.h"

namespace spotbench::e2e {

enum class LexiconKind { kNone, kFull, kStrong, kWeak, kGeneric };

LexiconKind ParseLexiconKind(std::string_view tag);  // throws ArgumentError
std::string_view LexiconKindName(LexiconKind k);

struct LexiconProtocol {
  LexiconKind kind = LexiconKind::kNone;
  // Full / Weak / Generic.
  std::vector<std::string> dataset_lexicon;
  // Strong: image_id -> words.
  std::map<std::string, std::vector<std::string>> per_image;
};

// Reads "<image_id>.txt" files (one word per line) from a directory.
std::map<std::string, std::vector<std::string>> ReadPerImageLexicons(
    const std::string& directory);

// Word-level P/R/H on the 0-100 scale.
// A matched pair is a word hit when the normalized GT equals the normalized
// prediction after optional lexicon correction. Ignore GT and, per policy,
// non-evaluable GT behave like ignore regions. Throws ConfigError when the
// protocol lacks its lexicon.
detect::Prf ScoreEndToEnd(const std::vector<annot::ImageAnnotations>& gt,
                          const annot::PredictionSet& preds,
                          const LexiconProtocol& protocol,
                          const text::NormalizationPolicy& norm = {},
                          double iou_threshold = detect::kDefaultIouThreshold,
                          Exec exec = Exec::kParallel);

// Mean over max(#GT, #counted predictions) slots of 1 - ED / max length,
// x100. Unmatched GT and surplus predictions score 0. The policy's case,
// whitespace and punctuation rules apply; drop_non_evaluable does not.
double OneMinusNed(const std::vector<annot::ImageAnnotations>& gt,
                   const annot::PredictionSet& preds,
                   double iou_threshold = detect::kDefaultIouThreshold,
                   const text::NormalizationPolicy& norm = {},
                   Exec exec = Exec::kParallel);

// Out-of-vocabulary scoring on the 0-1 scale. Recall is empty when no GT
// word is out of vocabulary, precision is empty when no prediction is;
// hmean needs both.
struct OovResult {
  std::optional<double> recall;
  std::optional<double> precision;
  std::optional<double> hmean;
  int oov_gt = 0;
  int oov_gt_hit = 0;
  int oov_pred = 0;
  int oov_pred_hit = 0;
};

// Throws ArgumentError on an empty vocabulary.
OovResult EvaluateOov(const std::vector<annot::ImageAnnotations>& gt,
                      const annot::PredictionSet& preds,
                      const std::vector<std::string>& train_vocabulary,
                      double iou_threshold = detect::kDefaultIouThreshold,
                      const text::NormalizationPolicy& norm = {},
                      Exec exec = Exec::kParallel);

}  // namespace spotbench::e2e

#endif  // SPOTBENCH_E2E_EVAL_H_
