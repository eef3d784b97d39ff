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


#include "spotbench/diversity.h"

#include <cmath>
#include <filesystem>
#include <numbers>

#include "doctest.h"
#include "spotbench/errors.h"
#include "spotbench/format.h"
#include "test_support.h"

namespace spotbench::diversity {
namespace {

namespace fs = std::filesystem;

annot::ImageAnnotations Image(std::vector<geom::Polygon> polys) {
  annot::ImageAnnotations img;
  img.image_id = "img";
  for (auto& p : polys) img.instances.push_back(testing::Gt(std::move(p), "w"));
  return img;
}

TEST_CASE("basic orientation rules") {
  CHECK(ClassifyOrientation(testing::Rect(0, 0, 200, 30)) == Orientation::kHorizontal);
  CHECK(ClassifyOrientation(testing::Rect(0, 0, 30, 200)) == Orientation::kVertical);
  CHECK(OrientationName(Orientation::kWavy) == "Wavy");
  CHECK(ParseOrientation("circular") == Orientation::kCircular);
  CHECK_THROWS_AS(ParseOrientation("diagonal"), ArgumentError);
}

TEST_CASE("generated shapes classify as their class") {
  ShapeGenerator gen(17);
  for (auto cls : kAllOrientations) {
    int hits = 0;
    for (int i = 0; i < 50; ++i) hits += ClassifyOrientation(gen.Generate(cls)) == cls;
    CHECK(hits >= 48);
  }
}

TEST_CASE("rotation by a right angle") {
  ShapeGenerator gen(23);
  for (int i = 0; i < 30; ++i) {
    const auto h = gen.Generate(Orientation::kHorizontal);
    if (ClassifyOrientation(h) != Orientation::kHorizontal) continue;
    CHECK(ClassifyOrientation(testing::Rotated(h, std::numbers::pi / 2)) == Orientation::kVertical);
    const auto c = gen.Generate(Orientation::kCircular);
    CHECK(ClassifyOrientation(testing::Rotated(c, std::numbers::pi / 2)) == ClassifyOrientation(c));
    const auto w = gen.Generate(Orientation::kWavy);
    CHECK(ClassifyOrientation(testing::Rotated(w, std::numbers::pi / 2)) == ClassifyOrientation(w));
  }
}

TEST_CASE("scaling never changes the class") {
  ShapeGenerator gen(29);
  for (auto cls : kAllOrientations) {
    for (int i = 0; i < 10; ++i) {
      const auto p = gen.Generate(cls);
      for (double s : {0.25, 2.0, 8.0}) {
        CHECK(ClassifyOrientation(testing::Scaled(p, s)) == ClassifyOrientation(p));
      }
    }
  }
}

TEST_CASE("image features count classes in fixed column order") {
  const auto f = ComputeImageShapeFeatures(
      Image({testing::Rect(0, 0, 200, 30), testing::Rect(0, 50, 200, 80),
             testing::Rect(300, 0, 330, 200), testing::Rect(400, 0, 430, 200)}));
  CHECK(f.instance_count == 4);
  CHECK(f.class_histogram == std::array<double, 4>{0.5, 0, 0, 0.5});
  CHECK(f.Vector().size() == 7);
  CHECK(f.DominantClass() == "Horizontal");
  const auto empty = ComputeImageShapeFeatures(Image({}));
  CHECK(empty.instance_count == 0);
  CHECK(empty.class_histogram == std::array<double, 4>{0, 0, 0, 0});
  CHECK(empty.DominantClass() == "none");
}

TEST_CASE("ignored instances are left out") {
  auto img = Image({testing::Rect(0, 0, 200, 30), testing::Rect(0, 0, 30, 200)});
  img.instances[1].ignore = true;
  CHECK(ComputeImageShapeFeatures(img).instance_count == 1);
}

TEST_CASE("synthetic dataset histograms follow the quotas") {
  std::vector<std::array<int, 4>> quotas;
  for (int i = 0; i < 10; ++i) quotas.push_back({i % 3, 1, (i + 1) % 2, 2});
  const auto data = GenerateSyntheticDataset(quotas, 5);
  REQUIRE(data.size() == 10);
  CHECK(data[3].image_id == "synthetic_00003");
  const auto feats = ComputeDatasetShapeFeatures(data);
  const auto serial = ComputeDatasetShapeFeatures(data, {}, Exec::kSerial);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int total = quotas[i][0] + quotas[i][1] + quotas[i][2] + quotas[i][3];
    CHECK(feats[i].instance_count == total);
    for (int c = 0; c < 4; ++c) {
      CHECK(feats[i].class_histogram[c] == doctest::Approx(double(quotas[i][c]) / total));
    }
    CHECK(feats[i].Vector() == serial[i].Vector());
  }
}

TEST_CASE("pca projection cases") {
  const auto two = PcaProject({{0, 0}, {3, 4}}, 1);
  CHECK(std::abs(std::abs(two[0][0]) - 2.5) < 1e-12);
  CHECK(two[0][0] == doctest::Approx(-two[1][0]));
  const auto same = PcaProject({{1, 2}, {1, 2}, {1, 2}}, 2);
  for (const auto& r : same) {
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 0.0);
  }
  const auto line = PcaProject({{0, 0, 0}, {1, 2, 3}, {3, 6, 9}}, 2);
  for (const auto& r : line) CHECK(std::abs(r[1]) <= 1e-9 * 11.3);
  CHECK_THROWS(PcaProject({{1, 2}}, 1));
  CHECK_THROWS(PcaProject({{1, 2}, {3, 4}}, 3));
}

TEST_CASE("pca keeps total variance at full dimension") {
  Rng rng(31);
  std::vector<std::vector<double>> x(40, std::vector<double>(5));
  for (auto& r : x) {
    for (auto& v : r) v = rng.Normal();
  }
  auto variance = [](const std::vector<std::vector<double>>& m) {
    double total = 0;
    for (std::size_t c = 0; c < m[0].size(); ++c) {
      double mean = 0;
      for (const auto& r : m) mean += r[c];
      mean /= m.size();
      for (const auto& r : m) total += (r[c] - mean) * (r[c] - mean);
    }
    return total;
  };
  const double before = variance(x);
  CHECK(std::abs(variance(PcaProject(x, 5)) - before) <= 1e-9 * before);
}

TEST_CASE("embedding export is deterministic and reads back") {
  const auto data = GenerateSyntheticDataset({{1, 0, 0, 1}, {0, 2, 0, 0}, {0, 0, 1, 3}}, 8);
  const auto feats = ComputeDatasetShapeFeatures(data);
  std::vector<std::vector<double>> vecs;
  for (const auto& f : feats) vecs.push_back(f.Vector());
  const auto proj = PcaProject(vecs, 2);
  const auto path = (fs::temp_directory_path() / "spotbench_embed.csv").string();
  ExportEmbedding(path, feats, proj);
  const std::string first = ReadFile(path);
  ExportEmbedding(path, feats, proj);
  CHECK(ReadFile(path) == first);
  CHECK(first == RenderEmbedding(feats, proj));
  const auto rows = ReadEmbedding(path);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(std::abs(rows[i].proj_x - proj[i][0]) <= 5e-7);
    CHECK(FormatFixed(rows[i].proj_y, 6) == FormatFixed(proj[i][1], 6));
    CHECK(rows[i].dominant_class == feats[i].DominantClass());
  }
  CHECK(first.substr(0, first.find('\n')) == EmbeddingHeader());
  fs::remove(path);
  CHECK_THROWS_AS(ExportEmbedding("/nonexistent/dir/x.csv", feats, proj), IoError);
}

}  // namespace
}  // namespace spotbench::diversity
