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


#include "spotbench/curriculum.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "spotbench/errors.h"

namespace spotbench::curriculum {
namespace {

PlanConfig Config(std::string chain, std::map<std::string, long long> sizes) {
  PlanConfig cfg;
  cfg.chain = std::move(chain);
  cfg.dataset_sizes = std::move(sizes);
  return cfg;
}

std::string ManifestText(const CurriculumPlan& plan, const std::map<std::string, long long>& sizes) {
  std::ostringstream out;
  WriteManifestCsv(plan, sizes, out);
  return out.str();
}

TEST_CASE("mixing weights") {
  for (double l : {0.0, 0.3, 1.0, 2.5, 1e6}) {
    const auto w = ComputeMixingWeights(l);
    CHECK(w.p_source + w.p_target == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(ComputeMixingWeights(0.999).p_source > ComputeMixingWeights(0.999).p_target);
  CHECK(ComputeMixingWeights(1.0).p_source == ComputeMixingWeights(1.0).p_target);
  CHECK(ComputeMixingWeights(1.001).p_source < ComputeMixingWeights(1.001).p_target);
  CHECK_THROWS_AS(ComputeMixingWeights(-1.0), ArgumentError);
  CHECK_THROWS_AS(ComputeMixingWeights(INFINITY), ArgumentError);
}

TEST_CASE("chain expansion") {
  CHECK(SplitChain("SynthText->MLT17") == std::vector<std::string>{"SynthText", "MLT17"});
  CHECK(SplitChain("A→B→C").size() == 3);
  CHECK(SplitChain("mix(A,B)->C") == std::vector<std::string>{"mix(A,B)", "C"});
  const auto plan = BuildPlan(Config("SynthText->MLT17", {{"SynthText", 100}, {"MLT17", 50}}));
  REQUIRE(plan.stages.size() == 2);
  CHECK(plan.stages[0].mix[0].dataset_id == "SynthText");
  CHECK(plan.stages[1].mix[0].dataset_id == "MLT17");
  CHECK(plan.stages[0].iterations == 4'000'000);
  CHECK(plan.stages[0].base_lr == 2e-5);
  REQUIRE(plan.stages[0].decay.size() == 1);
  CHECK(plan.stages[0].decay[0].iteration == 3'000'000);
  CHECK(plan.stages[0].decay[0].factor == 0.1);
}

TEST_CASE("mix and adapt stages") {
  const std::map<std::string, long long> sizes = {{"S", 10}, {"M", 10}, {"I", 10}, {"T", 10}};
  const auto mix = BuildPlan(Config("mix(S,M,I,T)", sizes));
  REQUIRE(mix.stages[0].mix.size() == 4);
  for (const auto& m : mix.stages[0].mix) CHECK(m.weight == mix.stages[0].mix[0].weight);
  auto cfg = Config("adapt(S,M|T)", sizes);
  cfg.lambda = 3.0;
  const auto adapt = BuildPlan(cfg);
  const auto& st = adapt.stages[0];
  REQUIRE(st.mix.size() == 3);
  CHECK(st.mix[0].weight == doctest::Approx(0.125));
  CHECK(st.mix[2].weight == doctest::Approx(0.75));
  REQUIRE(st.domain_pair.has_value());
  CHECK(st.domain_pair->lambda == 3.0);
}

TEST_CASE("plan errors") {
  CHECK_THROWS_AS(BuildPlan(Config("A->B", {{"A", 1}})), ConfigError);
  CHECK_THROWS_AS(BuildPlan(Config("", {{"A", 1}})), ConfigError);
  CHECK_THROWS_AS(BuildPlan(Config("blend(A)", {{"A", 1}})), ConfigError);
  auto cfg = Config("A", {{"A", 1}});
  cfg.decay = {{5'000'000, 0.1}};
  CHECK_THROWS_AS(BuildPlan(cfg), ConfigError);
  cfg.decay = {{2, 0.1}, {1, 0.1}};
  cfg.iterations = 10;
  CHECK_THROWS_AS(BuildPlan(cfg), ConfigError);
  cfg = Config("A", {{"A", 1}});
  cfg.stage_iterations[2] = 5;
  CHECK_THROWS_AS(BuildPlan(cfg), ConfigError);
}

TEST_CASE("plan config text") {
  const auto cfg = ParsePlanConfig(
      "# pretraining\n"
      "dataset.SynthText = 1000\n"
      "dataset.TotalText = 300\n"
      "chain = SynthText -> TotalText\n"
      "iterations.2 = 1000\n"
      "decay.2 = none\n"
      "fraction.TotalText = 0.25\n"
      "seed = 7  # trailing comment\n",
      "plan.cfg");
  CHECK(cfg.dataset_sizes.at("TotalText") == 300);
  CHECK(cfg.seed == 7);
  const auto plan = BuildPlan(cfg);
  CHECK(plan.stages[1].iterations == 1000);
  CHECK(plan.stages[1].decay.empty());
  CHECK(plan.stages[1].mix[0].label_fraction == 0.25);
  CHECK_THROWS_AS(ParsePlanConfig("seed = 1\nseed = 2\n", "p"), ParseError);
  CHECK_THROWS_AS(ParsePlanConfig("colour = red\n", "p"), ConfigError);
  CHECK_THROWS_AS(ParsePlanConfig("just text\n", "p"), ParseError);
  CHECK_THROWS_AS(ParsePlanConfig("decay = 10:x\n", "p"), ParseError);
}

TEST_CASE("plan hash tracks content") {
  const std::map<std::string, long long> sizes = {{"A", 5}, {"B", 5}};
  const auto a = BuildPlan(Config("A->B", sizes));
  CHECK(PlanHash(a) == PlanHash(BuildPlan(Config("A->B", sizes))));
  CHECK(PlanHash(a) != PlanHash(BuildPlan(Config("B->A", sizes))));
  CHECK(PlanToJson(a)["stages"].size() == 2);
}

TEST_CASE("label fraction subsets") {
  const auto all = LabelFractionSubset(50, 1.0, 3);
  CHECK(all.size() == 50);
  CHECK(std::set<long long>(all.begin(), all.end()).size() == 50);
  CHECK(LabelFractionSubset(10, 0.5, 3).size() == 5);
  CHECK(LabelFractionSubset(10, 0.3, 3).size() == 3);
  CHECK_THROWS_AS(LabelFractionSubset(10, 0.0, 3), ArgumentError);
  CHECK_THROWS_AS(LabelFractionSubset(10, 1.5, 3), ArgumentError);
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    std::vector<std::vector<long long>> nested;
    for (double f : {0.25, 0.5, 0.75, 1.0}) nested.push_back(LabelFractionSubset(997, f, seed));
    for (std::size_t i = 0; i + 1 < nested.size(); ++i) {
      CHECK(std::equal(nested[i].begin(), nested[i].end(), nested[i + 1].begin()));
    }
  }
}

TEST_CASE("learning rate schedule") {
  Stage st;
  st.base_lr = 2e-5;
  CHECK(LrSchedule(st) == std::vector<std::pair<long long, double>>{{0, 2e-5}});
  st.decay = {{3'000'000, 0.1}};
  const auto one = LrSchedule(st);
  REQUIRE(one.size() == 2);
  CHECK(one[1].first == 3'000'000);
  CHECK(one[1].second == doctest::Approx(2e-6));
  st.decay = {{10, 0.1}, {20, 0.1}};
  CHECK(LrSchedule(st).back().second == doctest::Approx(2e-7));
}

TEST_CASE("manifest sampling") {
  const std::map<std::string, long long> sizes = {{"A", 40}, {"B", 60}};
  auto cfg = Config("A->mix(A,B)", sizes);
  cfg.iterations = 100'000;
  cfg.decay.clear();
  cfg.stage_iterations[1] = 500;
  cfg.seed = 11;
  const auto plan = BuildPlan(cfg);
  const auto m = SampleManifest(plan, sizes);
  REQUIRE(m.size() == 2);
  CHECK(m[0].entries.size() == 500);
  for (const auto& e : m[0].entries) CHECK(e.dataset == 0);
  long long count_a = 0;
  for (const auto& e : m[1].entries) {
    count_a += e.dataset == 0;
    CHECK(e.sample_index < sizes.at(m[1].dataset_ids[e.dataset]));
  }
  const double n = 100'000, sigma = std::sqrt(n * 0.25);
  CHECK(std::abs(count_a - n / 2) <= 3 * sigma);
  CHECK(ManifestText(plan, sizes) == ManifestText(plan, sizes));
  cfg.seed = 12;
  CHECK(ManifestText(BuildPlan(cfg), sizes) != ManifestText(plan, sizes));
}

TEST_CASE("manifest draws stay inside the label fraction subset") {
  const std::map<std::string, long long> sizes = {{"A", 100}};
  auto cfg = Config("A", sizes);
  cfg.iterations = 2000;
  cfg.decay.clear();
  cfg.label_fraction = 0.1;
  const auto plan = BuildPlan(cfg);
  const auto subset = LabelFractionSubset(100, 0.1, SubsetSeed(plan.seed, "A"));
  const std::set<long long> allowed(subset.begin(), subset.end());
  std::set<long long> seen;
  const Manifest m = SampleManifest(plan, sizes);
  for (const auto& e : m[0].entries) seen.insert(e.sample_index);
  CHECK(seen == allowed);
}

TEST_CASE("manifest errors") {
  auto cfg = Config("A", {{"A", 0}});
  cfg.iterations = 10;
  cfg.decay.clear();
  CHECK_THROWS_AS(SampleManifest(BuildPlan(cfg), {{"A", 0}}), ConfigError);
  cfg.dataset_sizes = {{"A", 5}};
  CHECK_THROWS_AS(SampleManifest(BuildPlan(cfg), {}), ConfigError);
}

TEST_CASE("manifest csv layout") {
  const std::map<std::string, long long> sizes = {{"A", 3}};
  auto cfg = Config("A", sizes);
  cfg.iterations = 4;
  cfg.decay.clear();
  const std::string text = ManifestText(BuildPlan(cfg), sizes);
  CHECK(text.rfind("# ", 0) == 0);
  CHECK(text.find("plan_hash") != std::string::npos);
  CHECK(text.find("iteration,stage,dataset_id,sample_index\n") != std::string::npos);
  CHECK(text.find("\n3,stage1:A,A,") != std::string::npos);
}

}  // namespace
}  // namespace spotbench::curriculum
