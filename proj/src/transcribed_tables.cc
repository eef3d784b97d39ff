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

#include <cmath>
#include <limits>

#include "spotbench/errors.h"
#include "spotbench/report.h"

namespace spotbench::report {
namespace {

constexpr double kNa = std::numeric_limits<double>::quiet_NaN();

Row R(std::string method, std::initializer_list<double> values) {
  Row r{std::move(method), {}};
  for (double v : values) {
    if (std::isnan(v)) {
      r.values.emplace_back(std::nullopt);
    } else {
      r.values.emplace_back(v);
    }
  }
  return r;
}

std::vector<Column> Cols(std::initializer_list<const char*> names, int decimals = 2,
                         bool higher_is_better = true) {
  std::vector<Column> out;
  for (const char* n : names) out.push_back({n, higher_is_better, decimals, true});
  return out;
}

const char* const kSynth = "Synth-Text";
const char* const kSynthMlt = "Synth-Text → ICDAR MLT17";
const char* const kSynthIc15 = "Synth-Text → ICDAR15";
const char* const kSynthMltIc15 = "Synth-Text → ICDAR MLT17 → ICDAR15";
const char* const kSynthMltTt = "Synth-Text → ICDAR MLT17 → Total-Text";
const char* const kSynthMltCtw = "Synth-Text → ICDAR MLT17 → CTW1500";
const char* const kSynthTt = "Synth-Text → Total-Text";
const char* const kSynthCtw = "Synth-Text → CTW1500";
const char* const kMix = "Mix pre-train";
const char* const kMlt = "ICDAR MLT17";
const char* const kMltSynth = "ICDAR MLT17 → Synth-Text";
const char* const kSynthRects = "Synth-Text → ReCTS";
const char* const kMixFt = "Mix pre-train → Fine-tune";
const char* const kProposed = "Proposed method";

ReportTable DaCurved() {
  ReportTable t;
  t.title = "Domain adaptation on curved-text benchmarks (Total-Text, CTW-1500)";
  t.columns = Cols({"Total-Text P", "Total-Text R", "Total-Text F", "Total-Text None",
                    "Total-Text Full", "CTW-1500 P", "CTW-1500 R", "CTW-1500 F", "CTW-1500 None",
                    "CTW-1500 Full"});
  t.rows = {
      R(kSynth, {76.79, 28.09, 41.13, 27.54, 38.54, 50.37, 15.25, 23.42, 12.45, 19.25}),
      R(kSynthMlt, {90.02, 59.17, 82.74, 62.97, 77.98, 38.48, 49.00, 43.10, 28.24, 33.84}),
      R(kSynthIc15, {90.24, 60.16, 72.20, 55.76, 69.74, 36.20, 28.53, 31.91, 19.64, 24.3}),
      R(kSynthMltIc15, {90.52, 67.71, 77.47, 58.14, 74.48, 39.94, 31.10, 34.97, 23.47, 27.23}),
      R(kSynthMltTt, {92.01, 85.82, 88.81, 71.33, 83.17, 39.76, 56.85, 46.7, 28.23, 35.46}),
      R(kSynthMltCtw, {66.23, 36.77, 47.28, 24.11, 41.54, 92.61, 82.55, 87.29, 54.88, 81.94}),
      R(kSynthTt, {92.19, 78.95, 85.06, 70.51, 81.06, 43.86, 51.04, 47.18, 29.33, 35.63}),
      R(kSynthCtw, {62.14, 33.29, 43.35, 21.03, 37.3, 94.11, 77.27, 84.86, 47.56, 80.2}),
      R(kMix, {93.59, 75.2, 83.4, 67.06, 80.51, 39.19, 36.35, 37.71, 25.83, 29.57}),
      R(kMlt, {79.35, 55.37, 65.23, 15.44, 36.02, 33.46, 32.28, 32.81, 0.077, 20.03}),
      R(kMltSynth, {77.98, 26.56, 39.62, 21.09, 34.45, 59.27, 26.41, 36.54, 17.81, 30.37}),
      R(kSynthRects, {87.08, 36.22, 51.16, 33.17, 0.02, 41.89, 23.36, 30.00, 19.11, 0.04}),
      R(kMixFt, {90.58, 85.46, 87.95, 75.14, 86.0, 91.45, 85.16, 88.19, 56.02, 82.91}),
  };
  t.notes = {
      "Mix pre-train: SynthText, ICDAR MLT17, ICDAR15 and Total-Text.",
      "ICDAR MLT17 / CTW-1500 None is printed as 0.077 in the source and shown at column "
      "precision."};
  return t;
}

ReportTable DaRegular() {
  ReportTable t;
  t.title = "Domain adaptation on regular and Chinese benchmarks (ICDAR 2015, ReCTS)";
  t.columns = Cols({"ICDAR15 P", "ICDAR15 R", "ICDAR15 F", "ICDAR15 S", "ICDAR15 W", "ICDAR15 G",
                    "ICDAR15 None", "ReCTS P", "ReCTS R", "ReCTS F", "ReCTS 1-NED"});
  t.rows = {
      R(kSynth, {76.81, 26.62, 39.54, 37.19, 32.78, 26.6, 20.02, 61.43, 12.85, 21.25, 5.98}),
      R(kSynthMlt, {89.49, 84.02, 86.67, 82.95, 75.15, 67.69, 57.36, 78.62, 73.78, 76.12, 14.77}),
      R(kSynthIc15, {89.83, 74.82, 81.64, 77.07, 70.91, 62.51, 52.82, 47.35, 21.51, 29.58, 10.24}),
      R(kSynthMltIc15,
        {93.42, 79.25, 85.75, 81.48, 75.88, 68.14, 57.17, 45.34, 32.59, 37.64, 11.01}),
      R(kSynthMltTt, {84.27, 77.61, 80.8, 54.99, 72.01, 64.81, 54.09, 60.96, 29.17, 39.46, 14.56}),
      R(kSynthMltCtw,
        {69.84, 41.69, 52.22, 24.78, 42.95, 35.69, 24.78, 52.16, 30.91, 38.81, 12.94}),
      R(kSynthTt, {77.27, 77.56, 77.41, 46.9, 66.59, 58.41, 46.95, 45.38, 32.65, 37.98, 11.43}),
      R(kSynthCtw, {57.93, 39.58, 47.03, 19.22, 37.09, 30.61, 19.22, 41.87, 23.34, 29.98, 9.13}),
      R(kMix, {95.25, 76.26, 84.71, 81.39, 75.36, 68.04, 57.29, 73.32, 64.46, 68.61, 13.30}),
      R(kMlt, {75.27, 70.49, 72.8, 46.16, 33.93, 21.68, 10.94, 65.85, 59.49, 62.51, 6.62}),
      R(kMltSynth, {79.68, 33.41, 47.08, 43.42, 37.23, 30.55, 21.76, 60.92, 19.65, 29.72, 7.22}),
      R(kSynthRects, {84.48, 44.29, 58.12, 1.54, 0.05, 0.05, 18.19, 82.95, 72.67, 77.47, 48.75}),
      R(kMixFt, {95.03, 85.70, 90.13, 86.63, 81.67, 75.44, 66.46, 79.24, 56.39, 66.19, 38.12}),
  };
  t.notes = {"S / W / G: strong, weak and generic lexicon protocols."};
  return t;
}

ReportTable Sota() {
  ReportTable t;
  t.title = "End-to-end spotting against published systems (Total-Text, CTW-1500, ICDAR 2015)";
  t.columns = Cols({"Total-Text H-mean", "Total-Text None", "Total-Text Full", "CTW-1500 H-mean",
                    "CTW-1500 None", "CTW-1500 Full", "ICDAR15 H-mean", "ICDAR15 S", "ICDAR15 W",
                    "ICDAR15 G"});
  t.rows = {
      R("Text Perceptron", {85.2, 69.7, 78.3, 84.6, 57.0, kNa, 87.5, 83.4, 79.9, 68.0}),
      R("ABCNet v2", {87.0, 70.4, 78.1, 84.7, 57.5, 77.2, 88.1, 82.7, 78.5, 73.0}),
      R("MANGO", {kNa, 72.9, 83.6, kNa, 58.9, 78.7, kNa, 81.8, 78.9, 67.3}),
      R("TESTR", {86.90, 73.25, 83.9, 86.3, 53.3, 79.9, 90.0, 85.2, 79.4, 73.6}),
      R("SwinTextSpotter", {88.0, 74.3, 84.1, 88.0, 51.8, 77.0, kNa, 83.9, 77.3, 70.5}),
      R("ABINet++", {kNa, 79.4, 85.4, kNa, 61.5, 81.2, kNa, 86.1, 81.9, 77.8}),
      R(kProposed, {87.95, 75.14, 86.0, 88.19, 56.02, 82.91, 90.13, 86.63, 81.67, 75.44}),
  };
  t.notes = {"Blank cells: the system does not report detection.",
             "None: no lexicon; Full: every test-set word."};
  return t;
}

ReportTable DatasetSimilarity() {
  ReportTable t;
  t.title = "Dataset similarity between benchmark pairs";
  t.columns = {{"FID", false, 2, true}, {"FSIM", true, 2, true}, {"SSIM", true, 2, true}};
  const auto pair = [](const char* s, const char* d) { return std::string(s) + " → " + d; };
  t.rows = {
      R(pair("MLT2017", "Total-Text"), {0.82, 25.23, 21.22}),
      R(pair("MLT2017", "CTW1500"), {6.97, 18.12, 16.98}),
      R(pair("MLT2017", "ICDAR15"), {14.78, 14.20, 13.25}),
      R(pair("MLT2017", "ReCTS"), {11.23, 6.24, 5.17}),
      R(pair("MLT2017", "VinText"), {2.22, 21.48, 19.07}),
      R(pair("Total-Text", "CTW1500"), {1.29, 24.27, 23.32}),
      R(pair("Total-Text", "ICDAR15"), {9.74, 16.67, 15.12}),
      R(pair("Total-Text", "ReCTS"), {12.14, 4.37, 3.54}),
      R(pair("Total-Text", "VinText"), {2.43, 19.32, 19.14}),
      R(pair("CTW1500", "ICDAR15"), {0.97, 23.12, 22.87}),
      R(pair("CTW1500", "ReCTS"), {16.32, 2.22, 1.46}),
      R(pair("CTW1500", "VinText"), {0.92, 20.27, 20.12}),
      R(pair("ReCTS", "ICDAR15"), {20.20, 1.05, 1.03}),
      R(pair("ReCTS", "VinText"), {12.32, 6.98, 4.42}),
  };
  t.notes = {"FID: lower is better. FSIM and SSIM are printed on the source's own scale, "
             "which this toolkit's [0, 1] metrics do not reproduce."};
  return t;
}

ReportTable Oov() {
  ReportTable t;
  t.title = "Out-of-vocabulary end-to-end recognition";
  t.columns = Cols({"Recall", "Precision", "Hmean"}, 4);
  t.rows = {
      R(kSynth, {0.0011, 0.0033, 0.0021}),
      R(kSynthMlt, {0.1146, 0.2903, 0.1644}),
      R(kSynthIc15, {0.0217, 0.1088, 0.0361}),
      R(kSynthMltIc15, {0.0563, 0.2076, 0.0886}),
      R(kSynthMltTt, {0.0446, 0.1638, 0.0701}),
      R(kSynthMltCtw, {0.0399, 0.2518, 0.0688}),
      R(kSynthTt, {0.0445, 0.1779, 0.0711}),
      R(kSynthCtw, {0.0375, 0.1510, 0.0601}),
      R(kMix, {0.0865, 0.4674, 0.1459}),
      R(kMlt, {0.0364, 0.1309, 0.0433}),
      R(kMltSynth, {0.0439, 0.1712, 0.0699}),
      R(kSynthRects, {0.0848, 0.2473, 0.1263}),
      R(kMixFt, {0.2492, 0.2724, 0.2603}),
  };
  return t;
}

ReportTable Rects() {
  ReportTable t;
  t.title = "Chinese text spotting (ReCTS)";
  t.columns = Cols({"P", "R", "F", "1-NED"});
  t.rows = {
      R("FOTS", {78.3, 82.5, 80.31, 50.8}),
      R("Mask TextSpotter", {89.3, 88.8, 89.0, 67.8}),
      R("AE TextSpotter", {92.6, 91.0, 91.8, 71.8}),
      R("ABCNet v2", {93.6, 87.5, 90.4, 62.7}),
      R("SwinTextSpotter", {94.1, 87.1, 90.4, 72.5}),
      R(kProposed, {92.61, 67.72, 78.21, 68.12}),
  };
  return t;
}

ReportTable Layout() {
  ReportTable t;
  t.title = "Document layout detection with scene-text OCR";
  t.columns = Cols({"Text", "Image", "Table", "Math", "Separator", "Other", "AP", "AP@0.5",
                    "AP@0.75"},
                   1);
  t.rows = {
      R("Layout Parser", {83.1, 73.6, 95.4, 75.6, 20.6, 39.7, 64.7, 77.6, 71.6}),
      R("Layout Parser (proposed OCR)", {85.2, 64.7, 90.2, 77.1, 11.2, 28.1, 59.8, 68.1, 61.7}),
      R("LayoutLMv3", {70.8, 50.1, 42.5, 46.5, 9.6, 17.4, 40.3, 49.4, 42.7}),
      R("LayoutLMv3 (proposed OCR)", {72.1, 47.8, 43.5, 47.2, 1.8, 20.2, 38.7, 45.2, 40.8}),
  };
  return t;
}

ReportTable Vintext() {
  ReportTable t;
  t.title = "Vietnamese text spotting (VinText)";
  t.columns = Cols({"H-mean"});
  t.rows = {
      R("ABCNet", {54.2}),
      R("ABCNet + D", {57.4}),
      R("Mask TextSpotter v3", {53.4}),
      R("Mask TextSpotter v3 + D", {68.5}),
      R("SwinTextSpotter", {71.1}),
      R("Proposed method (no fine-tune)", {21.54}),
      R(kProposed, {73.20}),
  };
  return t;
}

ReportTable Backbones() {
  ReportTable t;
  t.title = "Feature-extraction backbones on Total-Text";
  t.columns = Cols({"P", "R", "F", "None"});
  t.rows = {
      R("ResNet-50", {88.87, 76.47, 82.20, 60.06}),
      R("ViT-T", {90.17, 72.90, 80.62, 59.40}),
      R("Swin-T", {93.59, 75.20, 83.40, 67.06}),
  };
  return t;
}

ReportTable LabelFraction() {
  ReportTable t;
  t.title = "Fraction of labelled training data on Total-Text";
  t.columns = Cols({"P", "R", "F", "None"});
  t.rows = {
      R("25%", {89.88, 81.8, 85.65, 65.71}),
      R("50%", {90.56, 82.75, 86.48, 70.38}),
      R("75%", {89.61, 85.73, 87.63, 71.17}),
      R("All", {90.58, 85.46, 87.95, 74.13}),
  };
  return t;
}

}  // namespace

std::vector<std::string> BuiltinTableIds() {
  return {"da-curved", "da-regular", "sota",     "dataset-similarity", "oov",
          "rects",     "layout",     "vintext",  "backbones",          "label-fraction"};
}

ReportTable BuiltinTable(std::string_view id) {
  if (id == "da-curved") return DaCurved();
  if (id == "da-regular") return DaRegular();
  if (id == "sota") return Sota();
  if (id == "dataset-similarity") return DatasetSimilarity();
  if (id == "oov") return Oov();
  if (id == "rects") return Rects();
  if (id == "layout") return Layout();
  if (id == "vintext") return Vintext();
  if (id == "backbones") return Backbones();
  if (id == "label-fraction") return LabelFraction();
  throw ArgumentError("unknown built-in table '" + std::string(id) + "'");
}

std::vector<PrintedPrf> TranscribedPrfRows() {
  struct Group {
    const char* table;
    const char* dataset;
    std::size_t p_column;
  };
  const Group groups[] = {{"da-curved", "Total-Text", 0},
                          {"da-curved", "CTW-1500", 5},
                          {"da-regular", "ICDAR15", 0},
                          {"da-regular", "ReCTS", 7}};
  std::vector<PrintedPrf> out;
  for (const auto& g : groups) {
    const ReportTable t = BuiltinTable(g.table);
    for (const auto& row : t.rows) {
      out.push_back({g.table, g.dataset, row.method, *row.values[g.p_column],
                     *row.values[g.p_column + 1], *row.values[g.p_column + 2]});
    }
  }
  return out;
}

}  // namespace spotbench::report
