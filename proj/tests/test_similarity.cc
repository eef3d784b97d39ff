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


#include "spotbench/similarity.h"

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "spotbench/errors.h"
#include "spotbench/format.h"
#include "test_support.h"

namespace spotbench::sim {
namespace {

namespace fs = std::filesystem;

FeatureMatrix FromRows(const std::vector<std::vector<double>>& rows) {
  std::vector<double> v;
  for (const auto& r : rows) v.insert(v.end(), r.begin(), r.end());
  return FeatureMatrix(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), v);
}

FeatureMatrix RandomFeatures(Rng& rng, int rows, int dim, double shift) {
  std::vector<double> v(static_cast<std::size_t>(rows) * dim);
  for (auto& x : v) x = rng.Normal() + shift;
  return FeatureMatrix(rows, dim, v);
}

TEST_CASE("ssim identity and constant closed form") {
  Rng rng(1);
  const auto a = testing::RandomImage(rng, 40, 30);
  CHECK(std::abs(Ssim(a, a) - 1.0) <= 1e-12);
  const double expected = (2 * 100.0 * 120 + kSsimC1) / (100.0 * 100 + 120.0 * 120 + kSsimC1);
  CHECK(std::abs(Ssim(GrayImage(32, 32, 100.0), GrayImage(32, 32, 120.0)) - expected) <= 1e-12);
  CHECK(std::abs(expected - 0.98361) <= 1e-5);
}

TEST_CASE("ssim matches the windowed brute force") {
  Rng rng(2);
  for (int i = 0; i < 5; ++i) {
    const auto a = testing::RandomImage(rng, 32, 32), b = testing::RandomImage(rng, 32, 32);
    CHECK(std::abs(Ssim(a, b) - testing::BruteForceSsim(a, b)) <= 1e-9);
    CHECK(Ssim(a, b) == doctest::Approx(Ssim(b, a)).epsilon(1e-14));
  }
}

TEST_CASE("ssim window is a normalized 11x11 Gaussian") {
  const auto w = SsimWindow();
  REQUIRE(w.size() == 121);
  double sum = 0;
  for (double x : w) sum += x;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w[60] > w[59]);
  CHECK(w[0] == doctest::Approx(w[120]));
}

TEST_CASE("ssim and fsim argument checks") {
  CHECK_THROWS_AS(Ssim(GrayImage(20, 20, 0.0), GrayImage(21, 20, 0.0)), ArgumentError);
  CHECK_THROWS_AS(Ssim(GrayImage(10, 20, 0.0), GrayImage(10, 20, 0.0)), ArgumentError);
  CHECK_THROWS_AS(Fsim(GrayImage(31, 40, 0.0), GrayImage(31, 40, 0.0)), ArgumentError);
  CHECK_THROWS_AS(Fsim(GrayImage(40, 40, 0.0), GrayImage(41, 40, 0.0)), ArgumentError);
}

TEST_CASE("fsim identity, symmetry and reference value") {
  const fs::path dir = SPOTBENCH_FIXTURE_DIR "/fsim";
  const auto a = ReadPgm((dir / "pair_a.pgm").string());
  const auto b = ReadPgm((dir / "pair_b.pgm").string());
  double reference = 0;
  REQUIRE(ParseReal(ReadFile((dir / "reference.txt").string()), reference));
  CHECK(std::abs(Fsim(a, a) - 1.0) <= 1e-9);
  CHECK(std::abs(Fsim(a, b) - reference) <= 1e-4);
  CHECK(Fsim(a, b) == doctest::Approx(Fsim(b, a)).epsilon(1e-12));
  Rng rng(3);
  const auto c = testing::RandomImage(rng, 48, 40), d = testing::RandomImage(rng, 48, 40);
  const double fcd = Fsim(c, d);
  CHECK(fcd == doctest::Approx(Fsim(d, c)).epsilon(1e-12));
  CHECK(fcd >= 0.0);
  CHECK(fcd <= 1.0);
}

TEST_CASE("fid closed forms") {
  Rng rng(4);
  const auto x = RandomFeatures(rng, 30, 5, 0.0);
  CHECK(std::abs(Fid(x, x)) <= 1e-9);
  const double h = std::sqrt(0.5), s = std::sqrt(2.0);
  const auto a = FromRows({{-h}, {h}});
  const auto b = FromRows({{1 - s}, {1 + s}});
  CHECK(std::abs(Fid(a, b) - 2.0) <= 1e-9);
}

TEST_CASE("fid of diagonal covariances sums per dimension") {
  Rng rng(5);
  const int d = 6;
  auto make = [&](std::vector<double>& mean, std::vector<double>& var) {
    // Rows +-s_i e_i share no support, so the sample covariance is diagonal.
    std::vector<std::vector<double>> rows;
    std::vector<double> spread(d);
    mean.assign(d, 0.0);
    for (int i = 0; i < d; ++i) mean[i] = 3 * rng.Uniform();
    for (int i = 0; i < d; ++i) {
      spread[i] = 0.5 + 2 * rng.Uniform();
      for (double sign : {1.0, -1.0}) {
        std::vector<double> r = mean;
        r[i] += sign * spread[i];
        rows.push_back(r);
      }
    }
    var.resize(d);
    for (int i = 0; i < d; ++i) var[i] = 2 * spread[i] * spread[i] / (2 * d - 1);
    return FromRows(rows);
  };
  std::vector<double> ma, va, mb, vb;
  const auto a = make(ma, va);
  const auto b = make(mb, vb);
  double expected = 0;
  for (int i = 0; i < d; ++i) {
    expected += (ma[i] - mb[i]) * (ma[i] - mb[i]) +
                (std::sqrt(va[i]) - std::sqrt(vb[i])) * (std::sqrt(va[i]) - std::sqrt(vb[i]));
  }
  CHECK(std::abs(Fid(a, b) - expected) <= 1e-8);
}

TEST_CASE("fid is symmetric and rotation invariant") {
  Rng rng(6);
  const int dim = 8;
  const auto a = RandomFeatures(rng, 40, dim, 0.0), b = RandomFeatures(rng, 50, dim, 0.7);
  CHECK(std::abs(Fid(a, b) - Fid(b, a)) <= 1e-8);
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = rng.Normal();
  }
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
  auto rotate = [&](const FeatureMatrix& f) {
    std::vector<double> v;
    for (int r = 0; r < f.rows(); ++r) {
      Eigen::VectorXd row(dim);
      for (int c = 0; c < dim; ++c) row(c) = f.at(r, c);
      const Eigen::VectorXd out = q * row;
      v.insert(v.end(), out.data(), out.data() + dim);
    }
    return FeatureMatrix(f.rows(), dim, v);
  };
  CHECK(std::abs(Fid(rotate(a), rotate(b)) - Fid(a, b)) <= 1e-6);
}

TEST_CASE("fid argument checks") {
  Rng rng(7);
  CHECK_THROWS_AS(Fid(RandomFeatures(rng, 5, 3, 0), RandomFeatures(rng, 5, 4, 0)), ArgumentError);
  CHECK_THROWS_AS(Fid(RandomFeatures(rng, 1, 3, 0), RandomFeatures(rng, 5, 3, 0)), ArgumentError);
  CHECK_THROWS_AS(FeatureMatrix(1, 2, {1.0, NAN}), ArgumentError);
}

TEST_CASE("builtin descriptor") {
  const auto white = BuiltinDescriptor(GrayImage(64, 64, 255.0));
  REQUIRE(white.size() == 64);
  for (double v : white) CHECK(v == 1.0);
  std::vector<double> px(64 * 64);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) px[y * 64 + x] = x < 32 ? 0.0 : 255.0;
  }
  const GrayImage split(64, 64, px);
  const auto d = BuiltinDescriptor(split);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) CHECK(d[r * 8 + c] == (c < 4 ? 0.0 : 1.0));
  }
  CHECK(BuiltinDescriptor(split) == d);
  CHECK_THROWS_AS(BuiltinDescriptor(GrayImage(15, 40, 0.0)), ArgumentError);
}

TEST_CASE("pgm round trip and decoding") {
  Rng rng(8);
  const auto img = testing::RandomImage(rng, 17, 9);
  const auto path = (fs::temp_directory_path() / "spotbench_rt.pgm").string();
  WritePgm(path, img);
  const auto back = ReadPgm(path);
  CHECK(back.width() == 17);
  CHECK(back.pixels() == img.pixels());
  fs::remove(path);
  const auto p2 = DecodePgm("P2\n# c\n2 1\n510\n0 510\n", "m.pgm");
  CHECK(p2.at(1, 0) == doctest::Approx(255.0));
  CHECK_THROWS_AS(DecodePgm("P6\n1 1\n255\nabc", "m.pgm"), ParseError);
}

TEST_CASE("dataset pair similarity") {
  Rng rng(9);
  std::vector<GrayImage> src;
  for (int i = 0; i < 4; ++i) src.push_back(testing::RandomImage(rng, 40 + i, 36));
  SimilarityConfig cfg;
  cfg.pair_samples = 6;
  cfg.common_size = 32;
  cfg.pair_mode = PairMode::kIdentical;
  const auto self = DatasetPairSimilarity("a", src, "a", src, cfg);
  CHECK(self.ssim == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(self.fsim == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(self.fid) <= 1e-9);

  cfg.pair_mode = PairMode::kRandom;
  const std::vector<GrayImage> black(3, GrayImage(40, 40, 0.0)), white(3, GrayImage(40, 40, 255.0));
  const auto bw = DatasetPairSimilarity("black", black, "white", white, cfg);
  CHECK(bw.fid == doctest::Approx(64.0));
  CHECK(bw.ssim == doctest::Approx(kSsimC1 / (255.0 * 255 + kSsimC1)).epsilon(1e-12));

  const auto r1 = DatasetPairSimilarity("a", src, "b", black, cfg, nullptr, nullptr, Exec::kSerial);
  const auto r2 = DatasetPairSimilarity("a", src, "b", black, cfg, nullptr, nullptr, Exec::kParallel);
  CHECK(r1.ssim == r2.ssim);
  CHECK(r1.fsim == r2.fsim);
  CHECK(r1.fid == r2.fid);
}

TEST_CASE("pair sampling is seeded") {
  SimilarityConfig cfg;
  cfg.pair_samples = 50;
  cfg.seed = 3;
  const auto p = SamplePairs(7, 9, cfg);
  CHECK(p.size() == 50);
  CHECK(p == SamplePairs(7, 9, cfg));
  for (auto [s, t] : p) {
    CHECK(s >= 0);
    CHECK(s < 7);
    CHECK(t < 9);
  }
  cfg.seed = 4;
  CHECK(p != SamplePairs(7, 9, cfg));
}

TEST_CASE("feature csv with and without header") {
  const auto path = (fs::temp_directory_path() / "spotbench_feat.csv").string();
  WriteFile(path, "image_id,f0,f1\na,1,2\nb,3,4.5\n");
  const auto f = ReadFeatureCsv(path);
  CHECK(f.rows() == 2);
  CHECK(f.dim() == 2);
  CHECK(f.at(1, 1) == 4.5);
  CHECK(f.ids()[1] == "b");
  WriteFile(path, "a,1,2\nb,3\n");
  CHECK_THROWS_AS(ReadFeatureCsv(path), ParseError);
  fs::remove(path);
}

}  // namespace
}  // namespace spotbench::sim
