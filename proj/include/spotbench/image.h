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

#ifndef SPOTBENCH_IMAGE_H_
#define SPOTBENCH_IMAGE_H_

#include <string>
#include <string_view>
#include <vector>

namespace spotbench::sim {

// Row-major grayscale image with intensities in [0, 255].
class GrayImage {
 public:
  GrayImage() = default;
  // Throws ArgumentError on non-positive sizes, a pixel count mismatch or
  // out-of-range intensities.
  GrayImage(int width, int height, std::vector<double> pixels);
  GrayImage(int width, int height, double fill);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<double>& pixels() const { return pixels_; }
  double at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> pixels_;
};

// Binary (P5) or ASCII (P2) PGM. maxval up to 65535, rescaled to [0, 255].
// Throws ParseError on malformed data, IoError when unreadable.
GrayImage ReadPgm(const std::string& path);
GrayImage DecodePgm(std::string_view bytes, const std::string& source_name);
void WritePgm(const std::string& path, const GrayImage& img);

GrayImage ResizeNearest(const GrayImage& img, int width, int height);

// Clamped to the image; throws ArgumentError when the box misses it.
GrayImage Crop(const GrayImage& img, int x0, int y0, int x1, int y1);

}  // namespace spotbench::sim

#endif  // SPOTBENCH_IMAGE_H_
