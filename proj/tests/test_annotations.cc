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


#include "spotbench/annotations.h"

#include <filesystem>
#include <string>

#include "doctest.h"
#include "spotbench/errors.h"
#include "spotbench/format.h"
#include "test_support.h"

namespace spotbench::annot {
namespace {

namespace fs = std::filesystem;

ImageAnnotations ParseOne(std::string_view body, Format f, std::vector<std::string>* w = nullptr) {
  std::vector<std::string> local;
  return ParseImageText(body, f, "img", "mem.txt", w ? *w : local);
}

TEST_CASE("icdar15 lines") {
  const auto img = ParseOne("0,0,10,0,10,5,0,5,HELLO\n1,1,9,1,9,4,1,4,###\n", Format::kIcdar15);
  REQUIRE(img.instances.size() == 2);
  CHECK(img.instances[0].transcription == "HELLO");
  CHECK_FALSE(img.instances[0].ignore);
  CHECK(img.instances[0].polygon.size() == 4);
  CHECK(img.instances[1].ignore);
}

TEST_CASE("icdar15 keeps commas inside the transcription and strips BOM-free CRLF") {
  const auto img = ParseOne("0,0,10,0,10,5,0,5,a,b\r\n", Format::kIcdar15);
  CHECK(img.instances.at(0).transcription == "a,b");
}

TEST_CASE("malformed line reports file, line and reason") {
  try {
    ParseOne("0,0,10,0,10,5,0,5,ok\n0,0,x,0,10,5,0,5,bad\n", Format::kIcdar15);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.file() == "mem.txt");
    CHECK(e.line() == 2);
    CHECK(e.reason().find("coordinate 3") != std::string::npos);
  }
  CHECK_THROWS_AS(ParseOne("0,0,10,0,HELLO\n", Format::kIcdar15), ParseError);
}

TEST_CASE("self-intersecting polygon becomes an ignore instance with a warning") {
  std::vector<std::string> w;
  const auto img = ParseOne("0,0,10,10,10,0,0,10,BOW\n", Format::kIcdar15, &w);
  REQUIRE(img.instances.size() == 1);
  CHECK(img.instances[0].ignore);
  CHECK_FALSE(img.instances[0].polygon_simple);
  CHECK(w.size() == 1);
}

TEST_CASE("total-text records") {
  const auto img = ParseOne(
      "x: [[115 503 494 115]], y: [[322 346 426 404]], ornt: [u'c'], transcriptions: "
      "[u'nauGHTY']\n"
      "x: [[1 9 9 1]], y: [[1 1 5 5]], ornt: [u'#'],\n transcriptions: [u'#']\n",
      Format::kTotalText);
  REQUIRE(img.instances.size() == 2);
  CHECK(img.instances[0].transcription == "nauGHTY");
  CHECK(img.instances[0].polygon.size() == 4);
  CHECK(img.instances[1].ignore);
}

TEST_CASE("bezier-synthtext samples both curves") {
  const auto img = ParseOne("0,0,1,0,2,0,3,0,3,1,2,1,1,1,0,1,WORD\n", Format::kBezierSynthText);
  REQUIRE(img.instances.size() == 1);
  CHECK(img.instances[0].polygon.size() == 20);
  CHECK(geom::PolygonArea(img.instances[0].polygon) == doctest::Approx(3.0));
}

TEST_CASE("ctw1500 records round-trip through the canonical format") {
  Rng rng(9);
  std::vector<ImageAnnotations> images;
  for (int k = 0; k < 5; ++k) {
    std::string body;
    for (int n = 0; n < 3; ++n) {
      // 7 top points left to right, 7 bottom points right to left.
      const double y = 40.0 * n, x0 = static_cast<double>(rng.Below(50));
      for (int i = 0; i < 7; ++i) body += std::to_string(int(x0 + 10 * i)) + "," + std::to_string(int(y)) + ",";
      for (int i = 6; i >= 0; --i) body += std::to_string(int(x0 + 10 * i)) + "," + std::to_string(int(y + 20)) + ",";
      body += n == 2 ? "###\n" : "word" + std::to_string(n) + "\n";
    }
    std::vector<std::string> w;
    images.push_back(ParseImageText(body, Format::kCtw1500, "ctw_" + std::to_string(k), "m", w));
    CHECK(images.back().instances[0].polygon.size() == 14);
    CHECK(images.back().instances[2].ignore);
  }
  const std::string text = WriteCanonicalGroundTruth(images);
  const auto back = ParseCanonicalGroundTruth(text, "canon.jsonl");
  REQUIRE(back.images.size() == images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = 0; j < images[i].instances.size(); ++j) {
      CHECK(back.images[i].instances[j].polygon == images[i].instances[j].polygon);
      CHECK(back.images[i].instances[j].ignore == images[i].instances[j].ignore);
    }
  }
  CHECK(WriteCanonicalGroundTruth(back.images) == text);
}

TEST_CASE("canonical records keep unknown keys") {
  const std::string line =
      R"({"image_id":"a","width":10,"height":8,"instances":[{"polygon":[[0,0],[4,0],[4,2]],"text":"hi","ignore":false,"lang":"en","conf":0.5}],"source":"x"})"
      "\n";
  const auto gt = ParseCanonicalGroundTruth(line, "c.jsonl");
  REQUIRE(gt.images.size() == 1);
  CHECK(gt.images[0].width == 10);
  CHECK(gt.images[0].instances[0].language_tag == "en");
  const std::string out = WriteCanonicalGroundTruth(gt.images);
  CHECK(out.find("\"conf\"") != std::string::npos);
  CHECK(out.find("\"source\":\"x\"") != std::string::npos);
  CHECK(ParseCanonicalGroundTruth(out, "c2").images[0].extra == gt.images[0].extra);
}

TEST_CASE("canonical errors") {
  CHECK_THROWS_AS(ParseCanonicalGroundTruth("{not json}\n", "c"), ParseError);
  CHECK_THROWS_AS(ParseCanonicalGroundTruth(R"({"image_id":"a"})", "c"), ParseError);
  CHECK_THROWS_AS(ParseCanonicalGroundTruth(
                      R"({"image_id":"a","instances":[]})"
                      "\n"
                      R"({"image_id":"a","instances":[]})",
                      "c"),
                  ParseError);
  CHECK_THROWS_AS(ParseFormat("coco"), ArgumentError);
  CHECK(ParseFormat("ctw1500") == Format::kCtw1500);
}

TEST_CASE("predictions keep order and group by image") {
  CHECK(ParsePredictionsText("", "p").by_image.empty());
  std::string body;
  for (int i = 0; i < 250; ++i) {
    body += R"({"image_id":"im)" + std::to_string(i % 3) +
            R"(","polygon":[[0,0],[1,0],[1,1]],"text":"t)" + std::to_string(i) +
            R"(","score":0.5})" + "\n";
  }
  const auto p = ParsePredictionsText(body, "p");
  REQUIRE(p.by_image.size() == 3);
  std::size_t total = 0;
  for (const auto& [id, v] : p.by_image) total += v.size();
  CHECK(total == 250);
  CHECK(p.by_image.at("im1")[0].text == "t1");
  CHECK(p.by_image.at("im1")[1].text == "t4");
  CHECK(ParsePredictionsText(WritePredictions(p.by_image), "p2").by_image.at("im2").size() == 83);
}

TEST_CASE("prediction errors carry the record index") {
  try {
    ParsePredictionsText(R"({"image_id":"a","polygon":[[0,0],[1,0],[1,1]],"text":"x","score":1.5})",
                         "p.jsonl");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.reason().find("record 1") != std::string::npos);
  }
  CHECK_THROWS_AS(ParsePredictionsText(R"({"image_id":"a","text":"x","score":0.5})", "p"),
                  ParseError);
}

TEST_CASE("prediction validation warnings") {
  PredictionSet preds;
  auto& v = preds["a"];
  for (int i = 0; i < 100; ++i) {
    v.push_back(testing::Pred(testing::Rect(0, 0, 1, 1), "ok", 0.5));
    v.back().control_points = std::vector<geom::Point2>(20);
  }
  CHECK(ValidatePredictions(preds).empty());
  v.push_back(v.back());
  CHECK(ValidatePredictions(preds).size() == 1);
  v.pop_back();
  v[0].text = std::string(26, 'a');
  CHECK(ValidatePredictions(preds).size() == 1);
  v[0].text = std::string(25, 'a');
  v[1].control_points->pop_back();
  CHECK(ValidatePredictions(preds).size() == 1);
  CHECK(Ctw1500ValidationConfig().max_text_length == 100);
}

TEST_CASE("dataset statistics") {
  std::vector<ImageAnnotations> images(3);
  for (int i = 0; i < 3; ++i) {
    images[i].image_id = std::to_string(i);
    for (int k = 0; k < i + 2; ++k) images[i].instances.push_back(testing::Gt(testing::Rect(0, 0, 1, 1), "w"));
  }
  const auto s = ComputeDatasetStats(images);
  CHECK(s.images == 3);
  CHECK(s.instances == 9);
  CHECK(s.words_per_image == doctest::Approx(3.0));
  for (auto& img : images) {
    for (auto& inst : img.instances) inst.ignore = true;
  }
  CHECK(ComputeDatasetStats(images).words_per_image == 0.0);
  CHECK_THROWS_AS(ComputeDatasetStats({}), ArgumentError);
}

TEST_CASE("directory of per-image files") {
  const fs::path dir = fs::temp_directory_path() / "spotbench_annot_dir";
  fs::remove_all(dir);
  fs::create_directories(dir);
  WriteFile((dir / "gt_img_2.txt").string(), "0,0,10,0,10,5,0,5,B\n");
  WriteFile((dir / "gt_img_1.txt").string(), "0,0,10,0,10,5,0,5,A\n");
  const auto gt = ParseGroundTruth(dir.string(), Format::kIcdar15);
  REQUIRE(gt.images.size() == 2);
  CHECK(gt.images[0].image_id == "img_1");
  CHECK(gt.images[1].instances[0].transcription == "B");
  CHECK_THROWS_AS(ParseGroundTruth((dir / "missing").string(), Format::kIcdar15), IoError);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace spotbench::annot
