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


// Serial and parallel paths must agree bit for bit.

#include <cstdlib>

#include "doctest.h"
#include "spotbench/detection_eval.h"
#include "spotbench/diversity.h"
#include "spotbench/e2e_eval.h"
#include "spotbench/errors.h"
#include "spotbench/parallel.h"
#include "test_support.h"

namespace spotbench {
namespace {

struct Scene {
  std::vector<annot::ImageAnnotations> gt;
  annot::PredictionSet pred;
};

Scene RandomScene(std::uint64_t seed, int images) {
  Rng rng(seed);
  Scene s;
  for (int i = 0; i < images; ++i) {
    annot::ImageAnnotations img;
    img.image_id = "im" + std::to_string(i);
    auto& preds = s.pred[img.image_id];
    for (int k = 0; k < 8; ++k) {
      const double x = 40.0 * k, y = 20 * rng.Uniform();
      const auto gt = testing::RandomConcave(rng, {x, y}, 15);
      img.instances.push_back(testing::Gt(gt, "word" + std::to_string(rng.Below(5)), rng.Uniform() < 0.1));
      const auto p = testing::RandomConvex(rng, {x + 6 * rng.Normal(), y + 6 * rng.Normal()}, 15);
      preds.push_back(testing::Pred(p, "word" + std::to_string(rng.Below(5)), rng.Uniform()));
    }
    s.gt.push_back(std::move(img));
  }
  return s;
}

TEST_CASE("iou tables match") {
  const auto s = RandomScene(1, 1);
  const auto& gt = s.gt[0].instances;
  const auto& pr = s.pred.at("im0");
  const auto a = detect::ComputeIouTable(gt, pr, Exec::kSerial);
  const auto b = detect::ComputeIouTable(gt, pr, Exec::kParallel);
  CHECK(a.values == b.values);
}

TEST_CASE("dataset scores match") {
  const auto s = RandomScene(2, 24);
  const auto ds = detect::EvaluateDetection(s.gt, s.pred, 0.5, Exec::kSerial);
  const auto dp = detect::EvaluateDetection(s.gt, s.pred, 0.5, Exec::kParallel);
  CHECK(ds.true_positives == dp.true_positives);
  CHECK(ds.prf.hmean == dp.prf.hmean);
  const auto thr = detect::DefaultApThresholds();
  CHECK(detect::AveragePrecision(s.gt, s.pred, thr, Exec::kSerial).ap ==
        detect::AveragePrecision(s.gt, s.pred, thr, Exec::kParallel).ap);
  const e2e::LexiconProtocol full{e2e::LexiconKind::kFull, {"word0", "word1", "word2", "word3", "word4"}, {}};
  CHECK(e2e::ScoreEndToEnd(s.gt, s.pred, full, {}, 0.5, Exec::kSerial).hmean ==
        e2e::ScoreEndToEnd(s.gt, s.pred, full, {}, 0.5, Exec::kParallel).hmean);
  CHECK(e2e::OneMinusNed(s.gt, s.pred, 0.5, {}, Exec::kSerial) ==
        e2e::OneMinusNed(s.gt, s.pred, 0.5, {}, Exec::kParallel));
}

TEST_CASE("exceptions cross the parallel region") {
  CHECK_THROWS_AS(ForEachIndex(100, Exec::kParallel,
                               [](std::size_t i) {
                                 if (i == 37) throw ValidationError("boom");
                               }),
                  ValidationError);
}

TEST_CASE("thread cap from the environment") {
  ::setenv("SPOTBENCH_THREADS", "1", 1);
  CHECK(ConfigureThreadsFromEnv() == 1);
  ::unsetenv("SPOTBENCH_THREADS");
}

}  // namespace
}  // namespace spotbench
