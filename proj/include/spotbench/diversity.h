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

// Text-orientation taxonomy, per-image shape features, synthetic shape
// generators and a PCA embedding.

#ifndef SPOTBENCH_DIVERSITY_H_
#define SPOTBENCH_DIVERSITY_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spotbench/annotations.h"
#include "spotbench/geometry.h"
#include "spotbench/parallel.h"
#include "spotbench/rng.h"

namespace spotbench::diversity {

// Serialized column order.
enum class Orientation { kHorizontal = 0, kCircular = 1, kWavy = 2, kVertical = 3 };
inline constexpr int kNumOrientations = 4;
inline constexpr std::array<Orientation, kNumOrientations> kAllOrientations = {
    Orientation::kHorizontal, Orientation::kCircular, Orientation::kWavy,
    Orientation::kVertical};

std::string_view OrientationName(Orientation o);
Orientation ParseOrientation(std::string_view name);  // throws ArgumentError

struct ClassifierThresholds {
  double circular_min_turning = 5.0;  // radians
  double circular_max_residual = 0.2;
  int wavy_min_sign_changes = 2;
  double vertical_min_angle_deg = 65.0;
  geom::ShapeOptions shape;

  std::string Describe() const;
};

// Throws ValidationError on a degenerate polygon.
Orientation ClassifyOrientation(const geom::Polygon& polygon,
                                const ClassifierThresholds& t = {});
Orientation ClassifyOrientation(const geom::ShapeDescriptor& d,
                                const ClassifierThresholds& t = {});

struct ImageShapeFeatures {
  std::string image_id;
  std::array<double, kNumOrientations> class_histogram = {};
  double mean_total_turning = 0.0;
  double mean_sign_changes = 0.0;
  double mean_aspect = 0.0;
  int instance_count = 0;
  int skipped_degenerate = 0;

  // Histogram then the three means.
  std::vector<double> Vector() const;
  // Most frequent class (earliest column on ties); "none" without instances.
  std::string DominantClass() const;
};

// Aggregates the non-ignored instances; degenerate ones are counted in
// skipped_degenerate.
ImageShapeFeatures ComputeImageShapeFeatures(const annot::ImageAnnotations& image,
                                             const ClassifierThresholds& t = {});

std::vector<ImageShapeFeatures> ComputeDatasetShapeFeatures(
    const std::vector<annot::ImageAnnotations>& images, const ClassifierThresholds& t = {},
    Exec exec = Exec::kParallel);

// Synthetic instances with known class: top polyline followed by the
// reversed bottom polyline. noise is the vertex jitter as a fraction of the
// band thickness.
struct GeneratorOptions {
  double noise = 0.001;
  int points_per_side = 16;
};

class ShapeGenerator {
 public:
  explicit ShapeGenerator(std::uint64_t seed, GeneratorOptions opts = {})
      : rng_(seed), opts_(opts) {}
  geom::Polygon Generate(Orientation cls);

 private:
  double Range(double lo, double hi) { return lo + (hi - lo) * rng_.Uniform(); }
  geom::Polygon Band(const std::vector<geom::Point2>& top,
                     const std::vector<geom::Point2>& bottom, double thickness);

  Rng rng_;
  GeneratorOptions opts_;
};

// One image per entry of quotas; quotas[i][c] instances of class c.
std::vector<annot::ImageAnnotations> GenerateSyntheticDataset(
    const std::vector<std::array<int, kNumOrientations>>& quotas, std::uint64_t seed,
    GeneratorOptions opts = {});

// Mean-centred projection on the top principal components; each component
// has its largest-magnitude loading positive. Needs >= 2 equal-length
// vectors and 1 <= out_dim <= dim (ArgumentError otherwise).
std::vector<std::vector<double>> PcaProject(const std::vector<std::vector<double>>& features,
                                            int out_dim);

struct EmbeddingRow {
  std::string image_id;
  ImageShapeFeatures features;
  double proj_x = 0.0;
  double proj_y = 0.0;
  std::string dominant_class;
};

std::string EmbeddingHeader();
void ExportEmbedding(const std::string& path, const std::vector<ImageShapeFeatures>& features,
                     const std::vector<std::vector<double>>& projections);
std::string RenderEmbedding(const std::vector<ImageShapeFeatures>& features,
                            const std::vector<std::vector<double>>& projections);
std::vector<EmbeddingRow> ReadEmbedding(const std::string& path);

}  // namespace spotbench::diversity

#endif  // SPOTBENCH_DIVERSITY_H_
