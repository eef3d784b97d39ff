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


// spotbench command-line entry point.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spotbench/annotations.h"
#include "spotbench/curriculum.h"
#include "spotbench/detection_eval.h"
#include "spotbench/diversity.h"
#include "spotbench/e2e_eval.h"
#include "spotbench/errors.h"
#include "spotbench/format.h"
#include "spotbench/image.h"
#include "spotbench/parallel.h"
#include "spotbench/report.h"
#include "spotbench/similarity.h"
#include "spotbench/text.h"

namespace spotbench {
namespace {

namespace fs = std::filesystem;

enum ExitCode { kOk = 0, kConfig = 1, kData = 2, kInternal = 3 };

struct Options {
  std::string gt, pred, format = "canonical", protocol = "none", lexicon, vocab, out, config;
  std::string style = "markdown";
  double iou = detect::kDefaultIouThreshold;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool ned = false;
  // dataset-sim
  std::string source, target, source_name = "source", target_name = "target";
  std::string source_gt, target_gt, source_features, target_features;
  int pairs = 1000, size = 256;
  bool identical = false, no_fsim = false;
  // diversity
  std::string synthetic;
  int count = 100;
  double noise = 0.001;
  // report
  std::string table, in, title;
  bool list = false;
};

// Stable digest of the effective options; path arguments contribute the
// content of the file they name.
class ConfigDigest {
 public:
  void Add(const std::string& key, const std::string& value) {
    text_ += key + "=" + value + "\n";
  }
  void AddFile(const std::string& key, const std::string& path) {
    if (path.empty()) return;
    std::string digest = "dir";
    if (fs::is_regular_file(path)) digest = HashHex(Fnv1a64(ReadFile(path)));
    Add(key, path + "#" + digest);
  }
  std::string Hex() const { return HashHex(Fnv1a64(text_)); }

 private:
  std::string text_;
};

void Emit(const Options& o, const std::string& body) {
  if (o.out.empty()) {
    std::cout << body;
  } else {
    WriteFile(o.out, body);
    std::cerr << "wrote " << o.out << "\n";
  }
}

report::RunInfo BaseInfo(const std::string& command, const ConfigDigest& digest) {
  report::RunInfo info;
  info.command = command;
  info.config_hash = digest.Hex();
  info.normalization = text::NormalizationPolicy{}.Describe();
  info.assumptions = report::StandardAssumptions();
  return info;
}

void Warn(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::vector<annot::ImageAnnotations> LoadGt(const std::string& path, const std::string& format) {
  if (path.empty()) throw ArgumentError("--gt is required");
  auto gt = annot::ParseGroundTruth(path, annot::ParseFormat(format));
  Warn(gt.warnings);
  return std::move(gt.images);
}

annot::PredictionSet LoadPred(const std::string& path) {
  if (path.empty()) throw ArgumentError("--pred is required");
  auto pred = annot::ParsePredictions(path);
  Warn(pred.warnings);
  Warn(annot::ValidatePredictions(pred.by_image));
  return std::move(pred.by_image);
}

int RunIngest(const Options& o) {
  const auto images = LoadGt(o.gt, o.format);
  const auto stats = annot::ComputeDatasetStats(images);
  std::cerr << "images " << stats.images << ", instances " << stats.instances << ", ignored "
            << stats.ignored << ", words/image " << FormatFixed(stats.words_per_image, 2) << "\n";
  Emit(o, annot::WriteCanonicalGroundTruth(images));
  return kOk;
}

int RunEvalDetect(const Options& o) {
  ConfigDigest digest;
  digest.AddFile("gt", o.gt);
  digest.AddFile("pred", o.pred);
  digest.Add("format", o.format);
  digest.Add("iou", FormatShortest(o.iou));
  const auto gt = LoadGt(o.gt, o.format);
  const auto pred = LoadPred(o.pred);
  const auto r = detect::EvaluateDetection(gt, pred, o.iou);

  report::ReportTable t;
  t.title = "Detection";
  t.columns = {{"P", true, 2}, {"R", true, 2}, {"F", true, 2}, {"TP", true, 0, false},
               {"GT", true, 0, false}, {"Pred", true, 0, false}};
  t.rows.push_back({fs::path(o.pred).stem().string(),
                    {r.prf.precision, r.prf.recall, r.prf.hmean, double(r.true_positives),
                     double(r.gt_count), double(r.pred_count)}});
  auto info = BaseInfo("eval-detect", digest);
  info.iou_threshold = o.iou;
  Emit(o, report::RenderRunHeader(info) + report::RenderTable(t, report::ParseStyle(o.style)));
  return kOk;
}

e2e::LexiconProtocol LoadProtocol(e2e::LexiconKind kind, const Options& o) {
  e2e::LexiconProtocol p;
  p.kind = kind;
  if (kind == e2e::LexiconKind::kNone) return p;
  if (o.lexicon.empty()) {
    throw ConfigError("protocol " + std::string(e2e::LexiconKindName(kind)) + " needs --lexicon");
  }
  if (kind == e2e::LexiconKind::kStrong) {
    p.per_image = e2e::ReadPerImageLexicons(o.lexicon);
  } else {
    p.dataset_lexicon = text::ReadWordList(o.lexicon);
  }
  return p;
}

int RunEvalE2e(const Options& o) {
  ConfigDigest digest;
  digest.AddFile("gt", o.gt);
  digest.AddFile("pred", o.pred);
  digest.AddFile("lexicon", o.lexicon);
  digest.AddFile("vocab", o.vocab);
  digest.Add("format", o.format);
  digest.Add("iou", FormatShortest(o.iou));
  digest.Add("protocol", o.protocol);
  const auto gt = LoadGt(o.gt, o.format);
  const auto pred = LoadPred(o.pred);
  const text::NormalizationPolicy norm;

  report::ReportTable t;
  t.title = "End-to-end spotting";
  t.columns = {{"P", true, 2}, {"R", true, 2}, {"F", true, 2}};
  for (auto tag : Split(o.protocol, ',')) {
    const auto kind = e2e::ParseLexiconKind(Trim(tag));
    const auto prf = e2e::ScoreEndToEnd(gt, pred, LoadProtocol(kind, o), norm, o.iou);
    t.rows.push_back({std::string(e2e::LexiconKindName(kind)), {prf.precision, prf.recall, prf.hmean}});
  }
  std::string body = report::RenderTable(t, report::ParseStyle(o.style));

  if (o.ned) {
    report::ReportTable n;
    n.title = "1-NED";
    n.columns = {{"1-NED", true, 2}};
    n.rows.push_back({"all", {e2e::OneMinusNed(gt, pred, o.iou, norm)}});
    body += "\n" + report::RenderTable(n, report::ParseStyle(o.style));
  }
  if (!o.vocab.empty()) {
    const auto r = e2e::EvaluateOov(gt, pred, text::ReadWordList(o.vocab), o.iou, norm);
    auto scaled = [](std::optional<double> v) {
      return v ? std::optional<double>(100 * *v) : std::nullopt;
    };
    report::ReportTable v;
    v.title = "Out-of-vocabulary words";
    v.columns = {{"R", true, 2}, {"P", true, 2}, {"H", true, 2}, {"OOV GT", true, 0, false},
                 {"OOV pred", true, 0, false}};
    v.rows.push_back({"oov", {scaled(r.recall), scaled(r.precision), scaled(r.hmean),
                              double(r.oov_gt), double(r.oov_pred)}});
    body += "\n" + report::RenderTable(v, report::ParseStyle(o.style));
  }
  auto info = BaseInfo("eval-e2e", digest);
  info.normalization = norm.Describe();
  info.iou_threshold = o.iou;
  Emit(o, report::RenderRunHeader(info) + body);
  return kOk;
}

int RunEvalAp(const Options& o) {
  ConfigDigest digest;
  digest.AddFile("gt", o.gt);
  digest.AddFile("pred", o.pred);
  digest.Add("format", o.format);
  const auto gt = LoadGt(o.gt, o.format);
  const auto pred = LoadPred(o.pred);
  const auto thresholds = detect::DefaultApThresholds();
  const auto r = detect::AveragePrecision(gt, pred, thresholds);
  report::ReportTable t;
  t.title = "Average precision";
  t.columns = {{"AP", true, 2}, {"AP50", true, 2}, {"AP75", true, 2}};
  t.rows.push_back({fs::path(o.pred).stem().string(), {r.ap, r.ap50, r.ap75}});
  auto info = BaseInfo("eval-ap", digest);
  info.assumptions.push_back("AP: 101-point interpolation, IoU 0.50:0.05:0.95");
  Emit(o, report::RenderRunHeader(info) + report::RenderTable(t, report::ParseStyle(o.style)));
  return kOk;
}

// Images of one dataset, or their text-region crops when annotations are given.
std::vector<sim::GrayImage> LoadSimilarityImages(const std::string& dir, const std::string& gt_path) {
  std::vector<std::string> warnings;
  auto named = sim::LoadImageDirectory(dir, warnings);
  Warn(warnings);
  std::vector<sim::GrayImage> out;
  if (gt_path.empty()) {
    for (auto& n : named) out.push_back(std::move(n.image));
    return out;
  }
  const auto gt = annot::ParseGroundTruth(gt_path, annot::Format::kCanonical);
  Warn(gt.warnings);
  std::map<std::string, const annot::ImageAnnotations*> by_id;
  for (const auto& img : gt.images) by_id[img.image_id] = &img;
  for (const auto& n : named) {
    const auto it = by_id.find(fs::path(n.id).stem().string());
    if (it == by_id.end()) continue;
    for (auto& crop : sim::TextRegionCrops(n.image, *it->second)) out.push_back(std::move(crop));
  }
  if (out.empty()) throw ValidationError(dir + ": no text regions matched the annotations");
  return out;
}

int RunDatasetSim(const Options& o) {
  if (o.source.empty() || o.target.empty()) throw ArgumentError("--source and --target are required");
  ConfigDigest digest;
  digest.Add("source", o.source);
  digest.Add("target", o.target);
  digest.AddFile("source_gt", o.source_gt);
  digest.AddFile("target_gt", o.target_gt);
  digest.AddFile("source_features", o.source_features);
  digest.AddFile("target_features", o.target_features);
  sim::SimilarityConfig cfg;
  cfg.pair_samples = o.pairs;
  cfg.common_size = o.size;
  cfg.seed = o.seed;
  cfg.pair_mode = o.identical ? sim::PairMode::kIdentical : sim::PairMode::kRandom;
  cfg.compute_fsim = !o.no_fsim;
  digest.Add("pairs", std::to_string(cfg.pair_samples));
  digest.Add("size", std::to_string(cfg.common_size));
  digest.Add("mode", o.identical ? "identical" : "random");

  const auto src = LoadSimilarityImages(o.source, o.source_gt);
  const auto tgt = LoadSimilarityImages(o.target, o.target_gt);
  std::optional<sim::FeatureMatrix> fs_src, fs_tgt;
  if (!o.source_features.empty() || !o.target_features.empty()) {
    if (o.source_features.empty() || o.target_features.empty()) {
      throw ConfigError("--source-features and --target-features go together");
    }
    fs_src = sim::ReadFeatureCsv(o.source_features);
    fs_tgt = sim::ReadFeatureCsv(o.target_features);
  }
  const auto row = sim::DatasetPairSimilarity(o.source_name, src, o.target_name, tgt, cfg,
                                              fs_src ? &*fs_src : nullptr,
                                              fs_tgt ? &*fs_tgt : nullptr);
  report::ReportTable t;
  t.title = "Dataset similarity";
  t.columns = {{"FID", false, 2}, {"FSIM", true, 4}, {"SSIM", true, 4}};
  t.rows.push_back({row.source_dataset + " → " + row.target_dataset,
                    {row.fid, cfg.compute_fsim ? std::optional<double>(row.fsim) : std::nullopt,
                     row.ssim}});
  auto info = BaseInfo("dataset-sim", digest);
  info.seeds.emplace_back("pairs", std::to_string(cfg.seed));
  info.assumptions.push_back(std::string("regions: ") +
                             (o.source_gt.empty() && o.target_gt.empty() ? "full frames"
                                                                         : "text-region crops"));
  info.assumptions.push_back(std::string("FID features: ") +
                             (fs_src ? "external feature CSV" : "builtin 8x8 intensity grid"));
  Emit(o, report::RenderRunHeader(info) + report::RenderTable(t, report::ParseStyle(o.style)));
  return kOk;
}

int RunDiversity(const Options& o) {
  ConfigDigest digest;
  std::vector<annot::ImageAnnotations> images;
  if (!o.synthetic.empty()) {
    const auto cls = diversity::ParseOrientation(o.synthetic);
    if (o.count <= 0) throw ArgumentError("--count must be positive");
    std::array<int, diversity::kNumOrientations> quota = {};
    quota[static_cast<int>(cls)] = 1;
    diversity::GeneratorOptions gen;
    gen.noise = o.noise;
    images = diversity::GenerateSyntheticDataset(
        std::vector<std::array<int, diversity::kNumOrientations>>(o.count, quota), o.seed, gen);
    digest.Add("synthetic", o.synthetic);
    digest.Add("count", std::to_string(o.count));
    digest.Add("noise", FormatShortest(o.noise));
    digest.Add("seed", std::to_string(o.seed));
  } else {
    digest.AddFile("gt", o.gt);
    digest.Add("format", o.format);
    images = LoadGt(o.gt, o.format);
  }
  const auto features = diversity::ComputeDatasetShapeFeatures(images);
  std::vector<std::vector<double>> vectors;
  for (const auto& f : features) vectors.push_back(f.Vector());
  const auto proj = vectors.size() >= 2 ? diversity::PcaProject(vectors, 2)
                                        : std::vector<std::vector<double>>(vectors.size(), {0.0, 0.0});
  const std::string csv = diversity::RenderEmbedding(features, proj);
  if (!o.out.empty()) {
    WriteFile(o.out, csv);
    std::cerr << "wrote " << o.out << "\n";
  }

  report::ReportTable t;
  t.title = "Text-shape orientation mix";
  for (auto cls : diversity::kAllOrientations) {
    t.columns.push_back({std::string(diversity::OrientationName(cls)) + " %", true, 2, false});
  }
  t.columns.push_back({"Instances", true, 0, false});
  std::array<double, diversity::kNumOrientations> totals = {};
  double instances = 0;
  for (const auto& f : features) {
    for (int c = 0; c < diversity::kNumOrientations; ++c) totals[c] += f.class_histogram[c] * f.instance_count;
    instances += f.instance_count;
  }
  report::Row row{o.synthetic.empty() ? fs::path(o.gt).filename().string() : "synthetic " + o.synthetic, {}};
  for (double v : totals) row.values.push_back(instances > 0 ? 100 * v / instances : 0.0);
  row.values.push_back(instances);
  t.rows.push_back(std::move(row));
  auto info = BaseInfo("diversity", digest);
  info.assumptions.push_back("classifier: " + diversity::ClassifierThresholds{}.Describe());
  if (!o.synthetic.empty()) info.seeds.emplace_back("generator", std::to_string(o.seed));
  std::cout << report::RenderRunHeader(info) << report::RenderTable(t, report::ParseStyle(o.style));
  if (o.out.empty()) std::cout << "\n" << csv;
  return kOk;
}

curriculum::PlanConfig LoadPlanConfig(const Options& o) {
  if (o.config.empty()) throw ArgumentError("--config is required");
  auto cfg = curriculum::ParsePlanConfig(ReadFile(o.config), o.config);
  if (o.seed_set) cfg.seed = o.seed;
  return cfg;
}

int RunPlan(const Options& o) {
  const auto plan = curriculum::BuildPlan(LoadPlanConfig(o));
  auto json = curriculum::PlanToJson(plan);
  json["plan_hash"] = curriculum::PlanHash(plan);
  Emit(o, json.dump(2) + "\n");
  return kOk;
}

int RunManifest(const Options& o) {
  const auto cfg = LoadPlanConfig(o);
  const auto plan = curriculum::BuildPlan(cfg);
  if (o.out.empty()) {
    curriculum::WriteManifestCsv(plan, cfg.dataset_sizes, std::cout);
    return kOk;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw IoError(o.out + ": cannot open for writing");
  curriculum::WriteManifestCsv(plan, cfg.dataset_sizes, out);
  out.close();
  if (!out) throw IoError(o.out + ": write failed");
  std::cerr << "wrote " << o.out << "\n";
  return kOk;
}

int RunReport(const Options& o) {
  if (o.list) {
    for (const auto& id : report::BuiltinTableIds()) std::cout << id << "\n";
    return kOk;
  }
  report::ReportTable t;
  if (!o.in.empty()) {
    t = report::ParseTableCsv(ReadFile(o.in), o.in, o.title.empty() ? fs::path(o.in).stem().string() : o.title);
  } else if (!o.table.empty()) {
    t = report::BuiltinTable(o.table);
  } else {
    throw ArgumentError("report needs --table, --in or --list");
  }
  Emit(o, report::RenderTable(t, report::ParseStyle(o.style)));
  return kOk;
}

int Fail(const std::string& command, const char* kind, const std::exception& e, int code) {
  std::cerr << "spotbench " << command << ": " << kind << ": " << e.what() << "\n";
  return code;
}

int Run(int argc, char** argv) {
  CLI::App app{"spotbench: scene-text spotting evaluation and curriculum toolkit"};
  app.set_version_flag("--version", "spotbench 1.0.0");
  app.require_subcommand(1);
  Options o;

  auto io = [&](CLI::App* sub) {
    sub->add_option("--gt", o.gt, "ground truth file or directory");
    sub->add_option("--format", o.format, "ground truth format: icdar15, totaltext, ctw1500, bezier-synthtext, canonical");
    sub->add_option("--out", o.out, "output file (default stdout)");
  };
  auto styled = [&](CLI::App* sub) {
    sub->add_option("--style", o.style, "markdown or csv");
  };
  auto seeded = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "random seed")->each([&](const std::string&) { o.seed_set = true; });
  };

  auto* ingest = app.add_subcommand("ingest", "convert annotations to canonical JSON lines");
  io(ingest);

  auto* detect_cmd = app.add_subcommand("eval-detect", "detection precision, recall and H-mean");
  io(detect_cmd);
  styled(detect_cmd);
  detect_cmd->add_option("--pred", o.pred, "canonical predictions");
  detect_cmd->add_option("--iou", o.iou, "IoU threshold")->check(CLI::Range(0.0, 1.0));

  auto* e2e_cmd = app.add_subcommand("eval-e2e", "end-to-end spotting under lexicon protocols");
  io(e2e_cmd);
  styled(e2e_cmd);
  e2e_cmd->add_option("--pred", o.pred, "canonical predictions");
  e2e_cmd->add_option("--iou", o.iou, "IoU threshold")->check(CLI::Range(0.0, 1.0));
  e2e_cmd->add_option("--protocol", o.protocol, "comma list of none, full, strong, weak, generic");
  e2e_cmd->add_option("--lexicon", o.lexicon, "word list, or per-image directory for strong");
  e2e_cmd->add_option("--vocab", o.vocab, "training vocabulary for out-of-vocabulary scoring");
  e2e_cmd->add_flag("--ned", o.ned, "also report 1-NED");

  auto* ap_cmd = app.add_subcommand("eval-ap", "101-point interpolated average precision");
  io(ap_cmd);
  styled(ap_cmd);
  ap_cmd->add_option("--pred", o.pred, "canonical predictions");

  auto* sim_cmd = app.add_subcommand("dataset-sim", "FID, FSIM and SSIM between two image sets");
  styled(sim_cmd);
  seeded(sim_cmd);
  sim_cmd->add_option("--out", o.out, "output file (default stdout)");
  sim_cmd->add_option("--source", o.source, "directory of source PGM images");
  sim_cmd->add_option("--target", o.target, "directory of target PGM images");
  sim_cmd->add_option("--source-name", o.source_name, "source dataset label");
  sim_cmd->add_option("--target-name", o.target_name, "target dataset label");
  sim_cmd->add_option("--source-gt", o.source_gt, "canonical annotations; compare text-region crops");
  sim_cmd->add_option("--target-gt", o.target_gt, "canonical annotations; compare text-region crops");
  sim_cmd->add_option("--source-features", o.source_features, "feature CSV for FID");
  sim_cmd->add_option("--target-features", o.target_features, "feature CSV for FID");
  sim_cmd->add_option("--pairs", o.pairs, "sampled image pairs")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--size", o.size, "common resize side")->check(CLI::Range(32, 4096));
  sim_cmd->add_flag("--identical", o.identical, "pair image k with image k");
  sim_cmd->add_flag("--no-fsim", o.no_fsim, "skip FSIM");

  auto* div_cmd = app.add_subcommand("diversity", "orientation features and embedding export");
  io(div_cmd);
  styled(div_cmd);
  seeded(div_cmd);
  div_cmd->add_option("--synthetic", o.synthetic, "generate instances of one class instead of reading --gt");
  div_cmd->add_option("--count", o.count, "synthetic instance count");
  div_cmd->add_option("--noise", o.noise, "synthetic vertex jitter")->check(CLI::Range(0.0, 1.0));

  auto* plan_cmd = app.add_subcommand("plan", "compile a curriculum plan to JSON");
  seeded(plan_cmd);
  plan_cmd->add_option("--config", o.config, "plan config file");
  plan_cmd->add_option("--out", o.out, "output file (default stdout)");

  auto* manifest_cmd = app.add_subcommand("manifest", "sample the per-iteration data manifest");
  seeded(manifest_cmd);
  manifest_cmd->add_option("--config", o.config, "plan config file");
  manifest_cmd->add_option("--out", o.out, "output CSV (default stdout)");

  auto* report_cmd = app.add_subcommand("report", "render transcribed or user tables");
  styled(report_cmd);
  report_cmd->add_option("--table", o.table, "builtin table id");
  report_cmd->add_option("--in", o.in, "table CSV");
  report_cmd->add_option("--title", o.title, "title for --in tables");
  report_cmd->add_option("--out", o.out, "output file (default stdout)");
  report_cmd->add_flag("--list", o.list, "list builtin table ids");

  if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr) {
    std::cerr << "spotbench: unknown subcommand '" << argv[1] << "'\n\n" << app.help();
    return kConfig;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "spotbench: " << e.what() << "\n\n" << app.help();
    return kConfig;
  }

  ConfigureThreadsFromEnv();
  const std::string command = app.get_subcommands().front()->get_name();
  const std::map<std::string, int (*)(const Options&)> handlers = {
      {"ingest", RunIngest},         {"eval-detect", RunEvalDetect}, {"eval-e2e", RunEvalE2e},
      {"eval-ap", RunEvalAp},        {"dataset-sim", RunDatasetSim}, {"diversity", RunDiversity},
      {"plan", RunPlan},             {"manifest", RunManifest},      {"report", RunReport}};
  try {
    return handlers.at(command)(o);
  } catch (const ArgumentError& e) {
    return Fail(command, "argument error", e, kConfig);
  } catch (const ConfigError& e) {
    return Fail(command, "config error", e, kConfig);
  } catch (const ParseError& e) {
    return Fail(command, "parse error", e, kData);
  } catch (const ValidationError& e) {
    return Fail(command, "invalid data", e, kData);
  } catch (const IoError& e) {
    return Fail(command, "i/o error", e, kData);
  } catch (const std::exception& e) {
    return Fail(command, "internal error", e, kInternal);
  }
}

}  // namespace
}  // namespace spotbench

int main(int argc, char** argv) { return spotbench::Run(argc, argv); }
