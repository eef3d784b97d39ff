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

#include "spotbench/detection_eval.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "spotbench/errors.h"

namespace spotbench::detect {
namespace {

struct Box {
  double x0, y0, x1, y1;
};

Box Bounds(const geom::Polygon& p) {
  Box b{p[0].x, p[0].y, p[0].x, p[0].y};
  for (const auto& v : p.vertices()) {
    b.x0 = std::min(b.x0, v.x);
    b.y0 = std::min(b.y0, v.y);
    b.x1 = std::max(b.x1, v.x);
    b.y1 = std::max(b.y1, v.y);
  }
  return b;
}

bool Disjoint(const Box& a, const Box& b) {
  return a.x1 < b.x0 || b.x1 < a.x0 || a.y1 < b.y0 || b.y1 < a.y0;
}

void CheckThreshold(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw ArgumentError("IoU threshold must lie in (0, 1]");
}

std::vector<char> IgnoreFlags(std::span<const annot::TextInstance> gt) {
  std::vector<char> flags(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i) flags[i] = gt[i].ignore ? 1 : 0;
  return flags;
}

std::vector<double> Scores(std::span<const annot::SpottingPrediction> pred) {
  std::vector<double> s(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) s[i] = pred[i].score;
  return s;
}

int CountNonIgnored(std::span<const char> ignore) {
  return static_cast<int>(std::count(ignore.begin(), ignore.end(), 0));
}

}  // namespace

IouTable ComputeIouTable(std::span<const annot::TextInstance> gt,
                         std::span<const annot::SpottingPrediction> pred, Exec exec) {
  IouTable t;
  t.num_pred = static_cast<int>(pred.size());
  t.num_gt = static_cast<int>(gt.size());
  t.values.assign(pred.size() * gt.size(), 0.0);
  std::vector<Box> gt_boxes;
  gt_boxes.reserve(gt.size());
  for (const auto& g : gt) gt_boxes.push_back(Bounds(g.polygon));
  ForEachIndex(pred.size(), exec, [&](std::size_t p) {
    if (!pred[p].polygon_simple) return;
    const Box pb = Bounds(pred[p].polygon);
    for (std::size_t g = 0; g < gt.size(); ++g) {
      if (!gt[g].polygon_simple || Disjoint(pb, gt_boxes[g])) continue;
      t.values[p * gt.size() + g] = geom::IouUnchecked(pred[p].polygon, gt[g].polygon);
    }
  });
  return t;
}

Matching MatchWithTable(const IouTable& table, std::span<const char> gt_ignore,
                        std::span<const double> scores, double iou_threshold) {
  CheckThreshold(iou_threshold);
  std::vector<int> order(table.num_pred);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  std::vector<char> taken(table.num_gt, 0);
  Matching m;
  for (int p : order) {
    int best = -1;
    double best_iou = 0.0;
    for (int g = 0; g < table.num_gt; ++g) {
      if (!gt_ignore[g] && taken[g]) continue;
      const double iou = table.at(p, g);
      if (iou < iou_threshold) continue;
      // Strictly better wins; on ties a non-ignored GT beats an ignore GT,
      // otherwise the lower index is kept.
      const bool better = best < 0 || iou > best_iou ||
                          (iou == best_iou && gt_ignore[best] && !gt_ignore[g]);
      if (better) {
        best = g;
        best_iou = iou;
      }
    }
    if (best < 0) {
      m.unmatched_pred.push_back(p);
    } else if (gt_ignore[best]) {
      m.ignored_pred.push_back(p);
    } else {
      taken[best] = 1;
      m.pairs.push_back({best, p, best_iou});
    }
  }
  for (int g = 0; g < table.num_gt; ++g) {
    if (!gt_ignore[g] && !taken[g]) m.unmatched_gt.push_back(g);
  }
  return m;
}

Matching MatchInstances(std::span<const annot::TextInstance> gt,
                        std::span<const annot::SpottingPrediction> pred,
                        double iou_threshold) {
  CheckThreshold(iou_threshold);
  const auto ignore = IgnoreFlags(gt);
  const auto scores = Scores(pred);
  return MatchWithTable(ComputeIouTable(gt, pred), ignore, scores, iou_threshold);
}

double Hmean(double p, double r) {
  if (p + r <= 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

Prf ComputePrf(int tp, int gt_count, int pred_count) {
  Prf out;
  if (pred_count > 0) {
    out.precision = 100.0 * tp / pred_count;
  } else {
    out.precision = gt_count > 0 ? 0.0 : 100.0;
  }
  out.recall = gt_count > 0 ? 100.0 * tp / gt_count : 100.0;
  out.hmean = Hmean(out.precision, out.recall);
  return out;
}

Prf ComputePrf(const Matching& m, int gt_count, int pred_count) {
  return ComputePrf(static_cast<int>(m.pairs.size()), gt_count, pred_count);
}

std::vector<ImageView> AlignImages(const std::vector<annot::ImageAnnotations>& gt,
                                   const annot::PredictionSet& preds) {
  std::map<std::string, ImageView> views;
  for (const auto& img : gt) {
    auto& v = views[img.image_id];
    v.image_id = img.image_id;
    v.gt = img.instances;
  }
  for (const auto& [id, list] : preds) {
    auto& v = views[id];
    v.image_id = id;
    v.pred = list;
  }
  std::vector<ImageView> out;
  out.reserve(views.size());
  for (auto& [id, v] : views) out.push_back(v);
  return out;
}

DetectionResult EvaluateDetection(const std::vector<annot::ImageAnnotations>& gt,
                                  const annot::PredictionSet& preds, double iou_threshold,
                                  Exec exec) {
  CheckThreshold(iou_threshold);
  const auto views = AlignImages(gt, preds);
  std::vector<DetectionResult> per_image(views.size());
  ForEachIndex(views.size(), exec, [&](std::size_t i) {
    const auto& v = views[i];
    const auto ignore = IgnoreFlags(v.gt);
    const auto m = MatchWithTable(ComputeIouTable(v.gt, v.pred), ignore, Scores(v.pred),
                                  iou_threshold);
    auto& r = per_image[i];
    r.true_positives = static_cast<int>(m.pairs.size());
    r.gt_count = CountNonIgnored(ignore);
    r.pred_count = static_cast<int>(m.pairs.size() + m.unmatched_pred.size());
  });
  DetectionResult total;
  for (const auto& r : per_image) {
    total.true_positives += r.true_positives;
    total.gt_count += r.gt_count;
    total.pred_count += r.pred_count;
  }
  total.prf = ComputePrf(total.true_positives, total.gt_count, total.pred_count);
  return total;
}

std::vector<double> DefaultApThresholds() {
  std::vector<double> t;
  for (int k = 0; k < 10; ++k) t.push_back((50 + 5 * k) / 100.0);
  return t;
}

namespace {

struct ScoredDetection {
  double score;
  std::size_t image;
  int index;
  bool tp;
};

// Per-image matchings reused across thresholds.
struct ApImage {
  IouTable table;
  std::vector<char> ignore;
  std::vector<double> scores;
};

std::vector<ApImage> PrepareAp(const std::vector<ImageView>& views, Exec exec) {
  std::vector<ApImage> out(views.size());
  ForEachIndex(views.size(), exec, [&](std::size_t i) {
    out[i].table = ComputeIouTable(views[i].gt, views[i].pred);
    out[i].ignore = IgnoreFlags(views[i].gt);
    out[i].scores = Scores(views[i].pred);
  });
  return out;
}

double ApFromPrepared(const std::vector<ApImage>& images, double thr) {
  CheckThreshold(thr);
  std::vector<ScoredDetection> dets;
  int npos = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& im = images[i];
    npos += CountNonIgnored(im.ignore);
    const Matching m = MatchWithTable(im.table, im.ignore, im.scores, thr);
    for (const auto& pr : m.pairs) dets.push_back({im.scores[pr.pred_index], i, pr.pred_index, true});
    for (int p : m.unmatched_pred) dets.push_back({im.scores[p], i, p, false});
  }
  if (npos == 0) return 0.0;
  std::sort(dets.begin(), dets.end(), [](const ScoredDetection& a, const ScoredDetection& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.image != b.image) return a.image < b.image;
    return a.index < b.index;
  });
  std::vector<double> precision(dets.size());
  std::vector<double> recall(dets.size());
  int tp = 0;
  for (std::size_t k = 0; k < dets.size(); ++k) {
    if (dets[k].tp) ++tp;
    precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
    recall[k] = static_cast<double>(tp) / npos;
  }
  for (std::size_t k = dets.size(); k-- > 1;) {
    precision[k - 1] = std::max(precision[k - 1], precision[k]);
  }
  double sum = 0.0;
  for (int r = 0; r <= 100; ++r) {
    const double level = r / 100.0;
    const auto it = std::lower_bound(recall.begin(), recall.end(), level);
    if (it != recall.end()) sum += precision[it - recall.begin()];
  }
  return 100.0 * sum / 101.0;
}

}  // namespace

double AveragePrecisionAt(const std::vector<annot::ImageAnnotations>& gt,
                          const annot::PredictionSet& preds, double iou_threshold,
                          Exec exec) {
  return ApFromPrepared(PrepareAp(AlignImages(gt, preds), exec), iou_threshold);
}

ApResult AveragePrecision(const std::vector<annot::ImageAnnotations>& gt,
                          const annot::PredictionSet& preds,
                          std::span<const double> thresholds, Exec exec) {
  if (thresholds.empty()) throw ArgumentError("AP needs at least one IoU threshold");
  for (double t : thresholds) CheckThreshold(t);
  const auto prepared = PrepareAp(AlignImages(gt, preds), exec);
  ApResult r;
  double sum = 0.0;
  for (double t : thresholds) sum += ApFromPrepared(prepared, t);
  r.ap = sum / static_cast<double>(thresholds.size());
  r.ap50 = ApFromPrepared(prepared, 0.5);
  r.ap75 = ApFromPrepared(prepared, 0.75);
  return r;
}

}  // namespace spotbench::detect
