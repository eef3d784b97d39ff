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

// IoU-based detection matching, precision / recall / H-mean and
// 101-point interpolated average precision.

#ifndef SPOTBENCH_DETECTION_EVAL_H_
#define SPOTBENCH_DETECTION_EVAL_H_

#include <span>
#include <string>
#include <vector>

#include "spotbench/annotations.h"
#include "spotbench/parallel.h"

namespace spotbench::detect {

inline constexpr double kDefaultIouThreshold = 0.5;

struct MatchedPair {
  int gt_index = 0;
  int pred_index = 0;
  double iou = 0.0;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct Matching {
  std::vector<MatchedPair> pairs;
  std::vector<int> unmatched_gt;
  std::vector<int> unmatched_pred;
  std::vector<int> ignored_pred;

  friend bool operator==(const Matching&, const Matching&) = default;
};

// Values on the 0-100 scale.
struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double hmean = 0.0;
};

// Row-major [pred][gt] IoU table. Non-simple polygons overlap nothing.
struct IouTable {
  int num_pred = 0;
  int num_gt = 0;
  std::vector<double> values;

  double at(int pred, int gt) const { return values[static_cast<std::size_t>(pred) * num_gt + gt]; }
};

IouTable ComputeIouTable(std::span<const annot::TextInstance> gt,
                         std::span<const annot::SpottingPrediction> pred,
                         Exec exec = Exec::kSerial);

// Greedy score-descending matching (ties by input order). Each prediction
// takes the best eligible GT at IoU >= threshold: any unmatched non-ignored
// GT, or any ignore GT. Landing on an ignore GT (which wins only on strictly
// higher IoU) sends the prediction to ignored_pred.
Matching MatchWithTable(const IouTable& table, std::span<const char> gt_ignore,
                        std::span<const double> scores, double iou_threshold);

// Throws ArgumentError unless iou_threshold lies in (0, 1].
Matching MatchInstances(std::span<const annot::TextInstance> gt,
                        std::span<const annot::SpottingPrediction> pred,
                        double iou_threshold = kDefaultIouThreshold);

// P/R/F from a matching. P := 100 when there are no counted predictions and
// no GT, 0 when GT exists; R := 100 when there is no GT.
Prf ComputePrf(int true_positives, int gt_count_non_ignored, int pred_count_counted);
Prf ComputePrf(const Matching& m, int gt_count_non_ignored, int pred_count_counted);

double Hmean(double p, double r);

// One image's ground truth and predictions, either side possibly empty.
struct ImageView {
  std::string image_id;
  std::span<const annot::TextInstance> gt;
  std::span<const annot::SpottingPrediction> pred;
};

// Union of GT and prediction image ids in ascending id order.
std::vector<ImageView> AlignImages(const std::vector<annot::ImageAnnotations>& gt,
                                   const annot::PredictionSet& preds);

struct DetectionResult {
  int true_positives = 0;
  int gt_count = 0;    // non-ignored
  int pred_count = 0;  // excluding ignored predictions
  Prf prf;
};

// Dataset-level detection scoring. Per-image matching may run in parallel;
// totals are summed in image_id order. Predictions for images absent from
// the ground truth count as false positives.
DetectionResult EvaluateDetection(const std::vector<annot::ImageAnnotations>& gt,
                                  const annot::PredictionSet& preds,
                                  double iou_threshold = kDefaultIouThreshold,
                                  Exec exec = Exec::kParallel);

struct ApResult {
  double ap = 0.0;    // mean over the supplied thresholds
  double ap50 = 0.0;
  double ap75 = 0.0;
};

// The 0.50:0.05:0.95 sweep.
std::vector<double> DefaultApThresholds();

// 101-point interpolated AP at one IoU threshold, 0-100 scale.
double AveragePrecisionAt(const std::vector<annot::ImageAnnotations>& gt,
                          const annot::PredictionSet& preds, double iou_threshold,
                          Exec exec = Exec::kParallel);

ApResult AveragePrecision(const std::vector<annot::ImageAnnotations>& gt,
                          const annot::PredictionSet& preds,
                          std::span<const double> iou_thresholds,
                          Exec exec = Exec::kParallel);

}  // namespace spotbench::detect

#endif  // SPOTBENCH_DETECTION_EVAL_H_
