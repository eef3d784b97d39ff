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

// Domain-adaptation curricula: dataset chains, lambda-weighted source /
// target mixing, label-fraction subsets and learning-rate schedules,
// compiled into deterministic per-iteration training manifests.

#ifndef SPOTBENCH_CURRICULUM_H_
#define SPOTBENCH_CURRICULUM_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spotbench/annotations.h"

namespace spotbench::curriculum {

struct DomainPair {
  std::vector<std::string> source_ids;
  std::vector<std::string> target_ids;
  double lambda = 1.0;
};

struct MixingWeights {
  double p_source = 1.0;
  double p_target = 0.0;
};

// p_source = 1 / (1 + lambda), p_target = lambda / (1 + lambda).
// Throws ArgumentError for negative or non-finite lambda.
MixingWeights ComputeMixingWeights(double lambda);
MixingWeights ComputeMixingWeights(const DomainPair& dp);

struct MixEntry {
  std::string dataset_id;
  double weight = 1.0;
  double label_fraction = 1.0;
};

struct DecayPoint {
  long long iteration = 0;
  double factor = 0.1;
};

struct Stage {
  std::string name;
  std::vector<MixEntry> mix;
  long long iterations = 0;
  double base_lr = 0.0;
  std::vector<DecayPoint> decay;
  std::uint64_t seed = 0;
  std::optional<DomainPair> domain_pair;  // set for adapt(...) stages
};

// Emitted as opaque metadata.
struct Hyper {
  std::string optimizer_name = "AdamW";
  double beta1 = 0.9;
  double beta2 = 0.999;
  double weight_decay = 1e-5;
  int queries = 100;
  int control_points = 20;
  int max_text_len = 25;
};

struct CurriculumPlan {
  std::vector<Stage> stages;
  Hyper hyper;
  std::uint64_t seed = 0;
};

// Pretraining schedule used when a config does not override it.
inline constexpr long long kDefaultIterations = 4'000'000;
inline constexpr double kDefaultBaseLr = 2e-5;
inline constexpr DecayPoint kDefaultDecay = {3'000'000, 0.1};

// Key-value plan description:
//   dataset.<id> = <size>
//   chain = A -> B -> mix(C, D) -> adapt(A, B | C)   ("→" also accepted)
//   iterations, base_lr, decay = <iter>:<factor>[, ...], label_fraction,
//   lambda, seed, optimizer; per-stage overrides iterations.<k>,
//   base_lr.<k>, decay.<k> (k is 1-based; decay.<k> = none clears);
//   fraction.<id> = per-dataset label fraction.
struct PlanConfig {
  std::string chain;
  std::map<std::string, long long> dataset_sizes;
  long long iterations = kDefaultIterations;
  double base_lr = kDefaultBaseLr;
  std::vector<DecayPoint> decay = {kDefaultDecay};
  double label_fraction = 1.0;
  std::map<std::string, double> fractions;
  double lambda = 1.0;
  std::uint64_t seed = 0;
  std::string optimizer = "AdamW";
  std::map<int, long long> stage_iterations;
  std::map<int, double> stage_base_lr;
  std::map<int, std::vector<DecayPoint>> stage_decay;
};

// Throws ParseError on malformed lines, ConfigError on unknown keys.
PlanConfig ParsePlanConfig(std::string_view text, const std::string& source_name);

// Splits "A -> B → C" at top-level arrows.
std::vector<std::string> SplitChain(std::string_view chain);

// Expands the chain into stages and validates the plan; unknown datasets,
// bad decay points or bad fractions raise ConfigError.
CurriculumPlan BuildPlan(const PlanConfig& cfg);

// Structural checks only; dataset sizes are checked when sampling.
void ValidatePlan(const CurriculumPlan& plan);

// Canonical JSON rendering and its FNV-1a hash.
annot::Json PlanToJson(const CurriculumPlan& plan);
std::string PlanHash(const CurriculumPlan& plan);

// First floor(fraction * N) entries of a seeded Fisher-Yates permutation of
// 0..N-1, so subsets of one (N, seed) nest. ArgumentError unless
// 0 < fraction <= 1 and N >= 0.
std::vector<long long> LabelFractionSubset(long long dataset_size, double fraction,
                                           std::uint64_t seed);

// Subset seed shared by every stage and fraction of one dataset.
std::uint64_t SubsetSeed(std::uint64_t plan_seed, std::string_view dataset_id);

// Piecewise-constant breakpoints starting at (0, base_lr).
std::vector<std::pair<long long, double>> LrSchedule(const Stage& stage);

struct ManifestEntry {
  long long iteration = 0;
  int dataset = 0;  // index into the stage mix
  long long sample_index = 0;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct StageManifest {
  std::string stage;
  std::vector<std::string> dataset_ids;
  std::vector<ManifestEntry> entries;
};

using Manifest = std::vector<StageManifest>;

// Calls fn(stage_index, entry) for every iteration of every stage.
void ForEachDraw(const CurriculumPlan& plan, const std::map<std::string, long long>& sizes,
                 const std::function<void(std::size_t, const ManifestEntry&)>& fn);

Manifest SampleManifest(const CurriculumPlan& plan,
                        const std::map<std::string, long long>& sizes);

// Streams "# " header lines then CSV rows iteration,stage,dataset_id,sample_index.
void WriteManifestCsv(const CurriculumPlan& plan, const std::map<std::string, long long>& sizes,
                      std::ostream& out);

}  // namespace spotbench::curriculum

#endif  // SPOTBENCH_CURRICULUM_H_
