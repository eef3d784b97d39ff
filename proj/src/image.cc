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

#include "spotbench/image.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "spotbench/errors.h"
#include "spotbench/format.h"

namespace spotbench::sim {
namespace {

class HeaderReader {
 public:
  HeaderReader(std::string_view bytes, const std::string& name) : bytes_(bytes), name_(name) {}

  // Next whitespace-delimited token, skipping '#' comments.
  std::string_view Token() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) Fail("unexpected end of data");
    return bytes_.substr(start, pos_ - start);
  }

  long long Int(long long lo, long long hi, const char* what) {
    long long v = 0;
    const auto tok = Token();
    if (!ParseInt(tok, v) || v < lo || v > hi) {
      Fail(std::string("bad ") + what + " '" + std::string(tok) + "'");
    }
    return v;
  }

  [[noreturn]] void Fail(const std::string& reason) const { throw ParseError(name_, 1, reason); }

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

 private:
  std::string_view bytes_;
  const std::string& name_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage::GrayImage(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width <= 0 || height <= 0) throw ArgumentError("image dimensions must be positive");
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw ArgumentError("pixel count does not match image dimensions");
  }
  for (double v : pixels_) {
    if (!(v >= 0.0 && v <= 255.0)) throw ArgumentError("pixel intensity outside [0, 255]");
  }
}

GrayImage::GrayImage(int width, int height, double fill)
    : GrayImage(width, height,
                std::vector<double>(width > 0 && height > 0
                                        ? static_cast<std::size_t>(width) * height
                                        : 0,
                                    fill)) {}

GrayImage DecodePgm(std::string_view bytes, const std::string& source_name) {
  HeaderReader in(bytes, source_name);
  const auto magic = in.Token();
  const bool binary = magic == "P5";
  if (!binary && magic != "P2") in.Fail("not a P2/P5 PGM");
  const int w = static_cast<int>(in.Int(1, 1 << 20, "width"));
  const int h = static_cast<int>(in.Int(1, 1 << 20, "height"));
  const long long maxval = in.Int(1, 65535, "maxval");
  const std::size_t n = static_cast<std::size_t>(w) * h;
  const double scale = 255.0 / static_cast<double>(maxval);
  std::vector<double> px(n);
  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    std::size_t pos = in.pos() + 1;
    const std::size_t bpp = maxval > 255 ? 2 : 1;
    if (pos > bytes.size() || bytes.size() - pos < n * bpp) in.Fail("truncated raster");
    for (std::size_t i = 0; i < n; ++i) {
      unsigned v = static_cast<unsigned char>(bytes[pos]);
      if (bpp == 2) v = (v << 8) | static_cast<unsigned char>(bytes[pos + 1]);
      pos += bpp;
      if (v > maxval) in.Fail("sample exceeds maxval");
      px[i] = v * scale;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) px[i] = in.Int(0, maxval, "sample") * scale;
  }
  return GrayImage(w, h, std::move(px));
}

GrayImage ReadPgm(const std::string& path) { return DecodePgm(ReadFile(path), path); }

void WritePgm(const std::string& path, const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) +
                    "\n255\n";
  out.reserve(out.size() + img.pixels().size());
  for (double v : img.pixels()) {
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v))));
  }
  WriteFile(path, out);
}

GrayImage ResizeNearest(const GrayImage& img, int width, int height) {
  if (width <= 0 || height <= 0) throw ArgumentError("resize target must be positive");
  std::vector<double> px(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    const int sy = std::min(img.height() - 1,
                            static_cast<int>((static_cast<long long>(y) * img.height()) / height));
    for (int x = 0; x < width; ++x) {
      const int sx = std::min(img.width() - 1,
                              static_cast<int>((static_cast<long long>(x) * img.width()) / width));
      px[static_cast<std::size_t>(y) * width + x] = img.at(sx, sy);
    }
  }
  return GrayImage(width, height, std::move(px));
}

GrayImage Crop(const GrayImage& img, int x0, int y0, int x1, int y1) {
  x0 = std::clamp(x0, 0, img.width());
  x1 = std::clamp(x1, 0, img.width());
  y0 = std::clamp(y0, 0, img.height());
  y1 = std::clamp(y1, 0, img.height());
  if (x1 <= x0 || y1 <= y0) throw ArgumentError("crop box does not intersect the image");
  const int w = x1 - x0;
  const int h = y1 - y0;
  std::vector<double> px(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) px[static_cast<std::size_t>(y) * w + x] = img.at(x0 + x, y0 + y);
  }
  return GrayImage(w, h, std::move(px));
}

}  // namespace spotbench::sim
