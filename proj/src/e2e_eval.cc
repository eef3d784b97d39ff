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

#include "spotbench/e2e_eval.h"

#include <algorithm>
#include <filesystem>

#include "spotbench/errors.h"

namespace spotbench::e2e {
namespace {

namespace fs = std::filesystem;

struct PreparedImage {
  detect::Matching matching;
  std::vector<std::u32string> gt_norm;
  std::vector<std::u32string> pred_norm;
  int gt_count = 0;
  int pred_count = 0;
};

// Normalizes texts, applies the ignore policy and matches one image.
PreparedImage Prepare(const detect::ImageView& v, const text::NormalizationPolicy& norm,
                      bool drop_non_evaluable, double thr) {
  PreparedImage out;
  std::vector<char> ignore(v.gt.size());
  out.gt_norm.reserve(v.gt.size());
  for (std::size_t g = 0; g < v.gt.size(); ++g) {
    out.gt_norm.push_back(text::Normalize(v.gt[g].transcription, norm));
    ignore[g] = v.gt[g].ignore ||
                (drop_non_evaluable && !text::IsEvaluable(out.gt_norm.back()));
    if (!ignore[g]) ++out.gt_count;
  }
  std::vector<double> scores(v.pred.size());
  out.pred_norm.reserve(v.pred.size());
  for (std::size_t p = 0; p < v.pred.size(); ++p) {
    scores[p] = v.pred[p].score;
    out.pred_norm.push_back(text::Normalize(v.pred[p].text, norm));
  }
  out.matching = detect::MatchWithTable(detect::ComputeIouTable(v.gt, v.pred), ignore,
                                        scores, thr);
  out.pred_count =
      static_cast<int>(out.matching.pairs.size() + out.matching.unmatched_pred.size());
  return out;
}

}  // namespace

LexiconKind ParseLexiconKind(std::string_view tag) {
  if (tag == "none") return LexiconKind::kNone;
  if (tag == "full") return LexiconKind::kFull;
  if (tag == "strong") return LexiconKind::kStrong;
  if (tag == "weak") return LexiconKind::kWeak;
  if (tag == "generic") return LexiconKind::kGeneric;
  throw ArgumentError("unknown lexicon protocol '" + std::string(tag) + "'");
}

std::string_view LexiconKindName(LexiconKind k) {
  switch (k) {
    case LexiconKind::kNone: return "none";
    case LexiconKind::kFull: return "full";
    case LexiconKind::kStrong: return "strong";
    case LexiconKind::kWeak: return "weak";
    case LexiconKind::kGeneric: return "generic";
  }
  return "unknown";
}

std::map<std::string, std::vector<std::string>> ReadPerImageLexicons(
    const std::string& directory) {
  if (!fs::is_directory(directory)) {
    throw IoError("strong lexicon path is not a directory: " + directory);
  }
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    out[entry.path().stem().string()] = text::ReadWordList(entry.path().string());
  }
  return out;
}

detect::Prf ScoreEndToEnd(const std::vector<annot::ImageAnnotations>& gt,
                          const annot::PredictionSet& preds,
                          const LexiconProtocol& protocol,
                          const text::NormalizationPolicy& norm, double thr, Exec exec) {
  const auto kind = protocol.kind;
  const bool dataset_level = kind == LexiconKind::kFull || kind == LexiconKind::kWeak ||
                             kind == LexiconKind::kGeneric;
  if (dataset_level && protocol.dataset_lexicon.empty()) {
    throw ConfigError("protocol '" + std::string(LexiconKindName(kind)) +
                      "' needs a dataset lexicon");
  }
  if (kind == LexiconKind::kStrong && protocol.per_image.empty()) {
    throw ConfigError("protocol 'strong' needs per-image lexicons");
  }
  const text::Lexicon shared =
      dataset_level ? text::Lexicon(protocol.dataset_lexicon, norm) : text::Lexicon();

  const auto views = detect::AlignImages(gt, preds);
  struct Counts {
    int hits = 0;
    int gt = 0;
    int pred = 0;
  };
  std::vector<Counts> per_image(views.size());
  ForEachIndex(views.size(), exec, [&](std::size_t i) {
    const auto& v = views[i];
    const PreparedImage im = Prepare(v, norm, norm.drop_non_evaluable, thr);
    const text::Lexicon* lex = dataset_level ? &shared : nullptr;
    text::Lexicon local;
    if (kind == LexiconKind::kStrong && !im.matching.pairs.empty()) {
      const auto it = protocol.per_image.find(v.image_id);
      if (it == protocol.per_image.end() || it->second.empty()) {
        throw ConfigError("no strong lexicon for image '" + v.image_id + "'");
      }
      local = text::Lexicon(it->second, norm);
      lex = &local;
    }
    Counts c;
    for (const auto& pair : im.matching.pairs) {
      const std::u32string& target = im.gt_norm[pair.gt_index];
      const std::u32string& raw = im.pred_norm[pair.pred_index];
      bool hit = false;
      if (lex != nullptr) {
        hit = lex->normalized(lex->Nearest(raw)) == target;
      } else {
        hit = raw == target;
      }
      if (hit) ++c.hits;
    }
    c.gt = im.gt_count;
    c.pred = im.pred_count;
    per_image[i] = c;
  });
  Counts total;
  for (const auto& c : per_image) {
    total.hits += c.hits;
    total.gt += c.gt;
    total.pred += c.pred;
  }
  return detect::ComputePrf(total.hits, total.gt, total.pred);
}

double OneMinusNed(const std::vector<annot::ImageAnnotations>& gt,
                   const annot::PredictionSet& preds, double thr,
                   const text::NormalizationPolicy& norm, Exec exec) {
  const auto views = detect::AlignImages(gt, preds);
  struct Partial {
    double similarity = 0.0;
    int gt = 0;
    int pred = 0;
  };
  std::vector<Partial> per_image(views.size());
  ForEachIndex(views.size(), exec, [&](std::size_t i) {
    const PreparedImage im = Prepare(views[i], norm, false, thr);
    Partial p;
    for (const auto& pair : im.matching.pairs) {
      const auto& a = im.gt_norm[pair.gt_index];
      const auto& b = im.pred_norm[pair.pred_index];
      const std::size_t longest = std::max(a.size(), b.size());
      if (longest == 0) {
        p.similarity += 1.0;
      } else {
        p.similarity += 1.0 - static_cast<double>(text::EditDistance(a, b)) /
                                  static_cast<double>(longest);
      }
    }
    p.gt = im.gt_count;
    p.pred = im.pred_count;
    per_image[i] = p;
  });
  double similarity = 0.0;
  int gt_total = 0;
  int pred_total = 0;
  for (const auto& p : per_image) {
    similarity += p.similarity;
    gt_total += p.gt;
    pred_total += p.pred;
  }
  const int slots = std::max(gt_total, pred_total);
  if (slots == 0) return 100.0;
  return 100.0 * similarity / slots;
}

OovResult EvaluateOov(const std::vector<annot::ImageAnnotations>& gt,
                      const annot::PredictionSet& preds,
                      const std::vector<std::string>& train_vocabulary, double thr,
                      const text::NormalizationPolicy& norm, Exec exec) {
  if (train_vocabulary.empty()) throw ArgumentError("training vocabulary is empty");
  std::set<std::u32string> vocab;
  for (const auto& w : train_vocabulary) vocab.insert(text::Normalize(w, norm));

  const auto views = detect::AlignImages(gt, preds);
  std::vector<OovResult> per_image(views.size());
  ForEachIndex(views.size(), exec, [&](std::size_t i) {
    const PreparedImage im = Prepare(views[i], norm, norm.drop_non_evaluable, thr);
    OovResult r;
    for (int g : im.matching.unmatched_gt) {
      if (!vocab.contains(im.gt_norm[g])) ++r.oov_gt;
    }
    for (const auto& pair : im.matching.pairs) {
      const auto& g = im.gt_norm[pair.gt_index];
      const auto& p = im.pred_norm[pair.pred_index];
      const bool hit = g == p;
      if (!vocab.contains(g)) {
        ++r.oov_gt;
        if (hit) ++r.oov_gt_hit;
      }
      if (!vocab.contains(p)) {
        ++r.oov_pred;
        if (hit) ++r.oov_pred_hit;
      }
    }
    for (int p : im.matching.unmatched_pred) {
      if (!vocab.contains(im.pred_norm[p])) ++r.oov_pred;
    }
    per_image[i] = r;
  });
  OovResult total;
  for (const auto& r : per_image) {
    total.oov_gt += r.oov_gt;
    total.oov_gt_hit += r.oov_gt_hit;
    total.oov_pred += r.oov_pred;
    total.oov_pred_hit += r.oov_pred_hit;
  }
  if (total.oov_gt > 0) total.recall = static_cast<double>(total.oov_gt_hit) / total.oov_gt;
  if (total.oov_pred > 0) {
    total.precision = static_cast<double>(total.oov_pred_hit) / total.oov_pred;
  }
  if (total.recall && total.precision) {
    total.hmean = detect::Hmean(*total.precision, *total.recall);
  }
  return total;
}

}  // namespace spotbench::e2e
