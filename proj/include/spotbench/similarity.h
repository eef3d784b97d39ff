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

// Dataset similarity: SSIM, FSIM, FID and their dataset-level aggregation.

#ifndef SPOTBENCH_SIMILARITY_H_
#define SPOTBENCH_SIMILARITY_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spotbench/annotations.h"
#include "spotbench/image.h"
#include "spotbench/parallel.h"

namespace spotbench::sim {

// Row-major samples x dim. Throws ArgumentError on a size mismatch or a
// non-finite value.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(int rows, int dim, std::vector<double> values,
                std::vector<std::string> ids = {});

  int rows() const { return rows_; }
  int dim() const { return dim_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::string>& ids() const { return ids_; }
  double at(int r, int c) const { return values_[static_cast<std::size_t>(r) * dim_ + c]; }

 private:
  int rows_ = 0;
  int dim_ = 0;
  std::vector<double> values_;
  std::vector<std::string> ids_;
};

// CSV with one image per row: image_id, then reals. A first row whose
// second field is not numeric is taken as a header.
FeatureMatrix ReadFeatureCsv(const std::string& path);

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimC1 = (0.01 * 255) * (0.01 * 255);
inline constexpr double kSsimC2 = (0.03 * 255) * (0.03 * 255);

// Mean SSIM map over all fully covered 11x11 Gaussian windows. Both images
// must share dimensions and be at least 11x11 (ArgumentError otherwise).
double Ssim(const GrayImage& a, const GrayImage& b);

// The normalized 11x11 Gaussian window, row-major.
std::vector<double> SsimWindow();

// Per-image FSIM ingredients: phase congruency and Scharr gradient
// magnitude on the (possibly downsampled) image.
struct FsimMaps {
  int width = 0;
  int height = 0;
  std::vector<double> phase_congruency;
  std::vector<double> gradient;
};

FsimMaps ComputeFsimMaps(const GrayImage& img);
double FsimFromMaps(const FsimMaps& a, const FsimMaps& b);

// FSIM with a 4-scale x 4-orientation log-Gabor bank, T1 = 0.85, T2 = 160.
// Images must share dimensions with min side >= 32. When neither image has
// any phase congruency the unweighted mean similarity is returned.
double Fsim(const GrayImage& a, const GrayImage& b);

// Frechet distance between Gaussians fitted to two feature sets. Requires
// equal dims and >= 2 rows each.
double Fid(const FeatureMatrix& a, const FeatureMatrix& b);

// 8x8 grid of mean intensities scaled to [0, 1]; image must be >= 16x16.
inline constexpr int kDescriptorGrid = 8;
std::vector<double> BuiltinDescriptor(const GrayImage& img);

struct NamedImage {
  std::string id;
  GrayImage image;
};

// Reads every *.pgm in a directory in file-name order. Unreadable files are
// skipped with a warning; throws IoError when nothing could be read.
std::vector<NamedImage> LoadImageDirectory(const std::string& directory,
                                           std::vector<std::string>& warnings);

// Bounding-box crops of the non-ignored text instances of one image.
std::vector<GrayImage> TextRegionCrops(const GrayImage& img,
                                       const annot::ImageAnnotations& annotations);

enum class PairMode { kRandom, kIdentical };

struct SimilarityConfig {
  int pair_samples = 1000;
  int common_size = 256;
  std::uint64_t seed = 0;
  PairMode pair_mode = PairMode::kRandom;
  bool compute_fsim = true;
};

// Random mode draws (src, tgt) indices from the seed; identical mode pairs
// index k with itself cyclically and requires equal dataset sizes.
std::vector<std::pair<int, int>> SamplePairs(int num_src, int num_tgt, const SimilarityConfig& cfg);

struct SimilarityRow {
  std::string source_dataset;
  std::string target_dataset;
  double fid = 0.0;
  double fsim = 0.0;
  double ssim = 0.0;
};

// Resizes everything to common_size^2, averages SSIM / FSIM over the
// sampled pairs and takes FID over the supplied feature matrices, or over
// builtin descriptors when they are null.
SimilarityRow DatasetPairSimilarity(const std::string& source_name,
                                    const std::vector<GrayImage>& source,
                                    const std::string& target_name,
                                    const std::vector<GrayImage>& target,
                                    const SimilarityConfig& cfg,
                                    const FeatureMatrix* source_features = nullptr,
                                    const FeatureMatrix* target_features = nullptr,
                                    Exec exec = Exec::kParallel);

}  // namespace spotbench::sim

#endif  // SPOTBENCH_SIMILARITY_H_
