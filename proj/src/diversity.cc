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

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "spotbench/errors.h"
#include "spotbench/format.h"

namespace spotbench::diversity {
namespace {

using geom::Point2;
constexpr double kPi = std::numbers::pi;

double Deg(double d) { return d * kPi / 180.0; }

Point2 Rotate(Point2 p, Point2 c, double a) {
  const Point2 d = p - c;
  return {c.x + d.x * std::cos(a) - d.y * std::sin(a), c.y + d.x * std::sin(a) + d.y * std::cos(a)};
}

std::string Num(double v) { return FormatFixed(v, 6); }

}  // namespace

std::string_view OrientationName(Orientation o) {
  switch (o) {
    case Orientation::kHorizontal: return "Horizontal";
    case Orientation::kCircular: return "Circular";
    case Orientation::kWavy: return "Wavy";
    case Orientation::kVertical: return "Vertical";
  }
  return "unknown";
}

Orientation ParseOrientation(std::string_view name) {
  for (Orientation o : kAllOrientations) {
    std::string lower(OrientationName(o));
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (name == OrientationName(o) || name == lower) return o;
  }
  throw ArgumentError("unknown orientation class '" + std::string(name) + "'");
}

std::string ClassifierThresholds::Describe() const {
  std::ostringstream out;
  out << "circular_min_turning=" << FormatFixed(circular_min_turning, 4)
      << " circular_max_residual=" << FormatFixed(circular_max_residual, 4)
      << " wavy_min_sign_changes=" << wavy_min_sign_changes
      << " vertical_min_angle_deg=" << FormatFixed(vertical_min_angle_deg, 4)
      << " dead_band=" << FormatFixed(shape.dead_band, 4)
      << " resample_n=" << shape.resample_n;
  return out.str();
}

Orientation ClassifyOrientation(const geom::ShapeDescriptor& d, const ClassifierThresholds& t) {
  if (d.total_turning >= t.circular_min_turning &&
      d.circle_fit_relative_residual < t.circular_max_residual) {
    return Orientation::kCircular;
  }
  if (d.curvature_sign_changes >= t.wavy_min_sign_changes) return Orientation::kWavy;
  if (std::abs(d.principal_angle) >= Deg(t.vertical_min_angle_deg)) return Orientation::kVertical;
  return Orientation::kHorizontal;
}

Orientation ClassifyOrientation(const geom::Polygon& polygon, const ClassifierThresholds& t) {
  return ClassifyOrientation(geom::DescribeShape(polygon, t.shape), t);
}

std::vector<double> ImageShapeFeatures::Vector() const {
  std::vector<double> v(class_histogram.begin(), class_histogram.end());
  v.push_back(mean_total_turning);
  v.push_back(mean_sign_changes);
  v.push_back(mean_aspect);
  return v;
}

std::string ImageShapeFeatures::DominantClass() const {
  if (instance_count == 0) return "none";
  int best = 0;
  for (int c = 1; c < kNumOrientations; ++c) {
    if (class_histogram[c] > class_histogram[best]) best = c;
  }
  return std::string(OrientationName(kAllOrientations[best]));
}

ImageShapeFeatures ComputeImageShapeFeatures(const annot::ImageAnnotations& image,
                                             const ClassifierThresholds& t) {
  ImageShapeFeatures f;
  f.image_id = image.image_id;
  std::array<int, kNumOrientations> counts = {};
  for (const auto& inst : image.instances) {
    if (inst.ignore) continue;
    geom::ShapeDescriptor d;
    try {
      d = geom::DescribeShape(inst.polygon, t.shape);
    } catch (const ValidationError&) {
      ++f.skipped_degenerate;
      continue;
    }
    ++counts[static_cast<int>(ClassifyOrientation(d, t))];
    f.mean_total_turning += d.total_turning;
    f.mean_sign_changes += d.curvature_sign_changes;
    f.mean_aspect += d.aspect_ratio;
    ++f.instance_count;
  }
  if (f.instance_count > 0) {
    const double n = f.instance_count;
    for (int c = 0; c < kNumOrientations; ++c) f.class_histogram[c] = counts[c] / n;
    f.mean_total_turning /= n;
    f.mean_sign_changes /= n;
    f.mean_aspect /= n;
  }
  return f;
}

std::vector<ImageShapeFeatures> ComputeDatasetShapeFeatures(
    const std::vector<annot::ImageAnnotations>& images, const ClassifierThresholds& t,
    Exec exec) {
  std::vector<ImageShapeFeatures> out(images.size());
  ForEachIndex(images.size(), exec,
               [&](std::size_t i) { out[i] = ComputeImageShapeFeatures(images[i], t); });
  return out;
}

geom::Polygon ShapeGenerator::Band(const std::vector<Point2>& top,
                                   const std::vector<Point2>& bottom, double thickness) {
  std::vector<Point2> pts(top);
  pts.insert(pts.end(), bottom.rbegin(), bottom.rend());
  if (opts_.noise > 0.0) {
    const double sigma = opts_.noise * thickness;
    for (auto& p : pts) {
      p.x += sigma * rng_.Normal();
      p.y += sigma * rng_.Normal();
    }
  }
  return geom::Polygon(std::move(pts));
}

geom::Polygon ShapeGenerator::Generate(Orientation cls) {
  const int m = std::max(2, opts_.points_per_side);
  const Point2 center{Range(200, 800), Range(200, 800)};
  std::vector<Point2> top(m), bottom(m);
  switch (cls) {
    case Orientation::kHorizontal:
    case Orientation::kVertical: {
      const double length = Range(80, 240);
      const double thickness = Range(16, 40);
      const double tilt = Deg(Range(-20, 20)) + (cls == Orientation::kVertical ? kPi / 2 : 0.0);
      for (int i = 0; i < m; ++i) {
        const double s = length * (static_cast<double>(i) / (m - 1) - 0.5);
        top[i] = Rotate({center.x + s, center.y - thickness / 2}, center, tilt);
        bottom[i] = Rotate({center.x + s, center.y + thickness / 2}, center, tilt);
      }
      return Band(top, bottom, thickness);
    }
    case Orientation::kWavy: {
      // Phase window holding exactly two zeros of sin.
      const double length = Range(150, 300);
      const double phase0 = Range(0.25, 0.75) * kPi;
      const double phase1 = Range(2.25, 2.75) * kPi;
      const double amp = Range(0.06, 0.10) * length;
      const double thickness = Range(0.08, 0.12) * length;
      const double k = (phase1 - phase0) / length;
      const double tilt = Deg(Range(-30, 30));
      for (int i = 0; i < m; ++i) {
        const double x = length * static_cast<double>(i) / (m - 1);
        const double phase = phase0 + k * x;
        const double y = amp * std::sin(phase);
        const double slope = amp * k * std::cos(phase);
        const double norm = std::hypot(1.0, slope);
        const Point2 n{-slope / norm, 1.0 / norm};
        const Point2 c{center.x + x - length / 2, center.y + y};
        top[i] = Rotate(c - (thickness / 2) * n, center, tilt);
        bottom[i] = Rotate(c + (thickness / 2) * n, center, tilt);
      }
      return Band(top, bottom, thickness);
    }
    case Orientation::kCircular: {
      const double radius = Range(50, 150);
      const double thickness = Range(0.2, 0.35) * radius;
      const double sweep = Deg(Range(320, 350));
      const double start = Range(0, 2 * kPi);
      for (int i = 0; i < m; ++i) {
        const double a = start + sweep * static_cast<double>(i) / (m - 1);
        const Point2 dir{std::cos(a), std::sin(a)};
        top[i] = center + (radius + thickness / 2) * dir;
        bottom[i] = center + (radius - thickness / 2) * dir;
      }
      return Band(top, bottom, thickness);
    }
  }
  throw ArgumentError("unknown orientation class");
}

std::vector<annot::ImageAnnotations> GenerateSyntheticDataset(
    const std::vector<std::array<int, kNumOrientations>>& quotas, std::uint64_t seed,
    GeneratorOptions opts) {
  ShapeGenerator gen(seed, opts);
  std::vector<annot::ImageAnnotations> out;
  out.reserve(quotas.size());
  for (std::size_t i = 0; i < quotas.size(); ++i) {
    annot::ImageAnnotations img;
    char id[32];
    std::snprintf(id, sizeof(id), "synthetic_%05zu", i);
    img.image_id = id;
    for (int c = 0; c < kNumOrientations; ++c) {
      if (quotas[i][c] < 0) throw ArgumentError("generator quota must be non-negative");
      for (int k = 0; k < quotas[i][c]; ++k) {
        annot::TextInstance inst{gen.Generate(kAllOrientations[c]),
                                 std::string(OrientationName(kAllOrientations[c]))};
        img.instances.push_back(std::move(inst));
      }
    }
    out.push_back(std::move(img));
  }
  return out;
}

std::vector<std::vector<double>> PcaProject(const std::vector<std::vector<double>>& features,
                                            int out_dim) {
  if (features.size() < 2) throw ArgumentError("pca needs at least 2 vectors");
  const int dim = static_cast<int>(features[0].size());
  if (dim == 0) throw ArgumentError("pca needs non-empty vectors");
  for (const auto& f : features) {
    if (static_cast<int>(f.size()) != dim) throw ArgumentError("pca vectors differ in length");
  }
  if (out_dim < 1 || out_dim > dim) throw ArgumentError("pca out_dim must lie in [1, dim]");
  const Eigen::Index n = static_cast<Eigen::Index>(features.size());
  Eigen::MatrixXd x(n, dim);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (int c = 0; c < dim; ++c) x(r, c) = features[r][c];
  }
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  Eigen::MatrixXd basis(dim, out_dim);
  for (int k = 0; k < out_dim; ++k) {
    // Eigenvalues ascend.
    Eigen::VectorXd v = es.eigenvectors().col(dim - 1 - k);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
      if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    }
    if (v[arg] < 0) v = -v;
    basis.col(k) = v;
  }
  const Eigen::MatrixXd proj = x * basis;
  std::vector<std::vector<double>> out(static_cast<std::size_t>(n),
                                       std::vector<double>(out_dim));
  for (Eigen::Index r = 0; r < n; ++r) {
    for (int k = 0; k < out_dim; ++k) out[r][k] = proj(r, k);
  }
  return out;
}

std::string EmbeddingHeader() {
  return "image_id,H,C,W,V,mean_total_turning,mean_sign_changes,mean_aspect,instance_count,"
         "proj_x,proj_y,dominant_class";
}

std::string RenderEmbedding(const std::vector<ImageShapeFeatures>& features,
                            const std::vector<std::vector<double>>& projections) {
  if (features.size() != projections.size()) {
    throw ArgumentError("features and projections are not aligned");
  }
  std::string out = EmbeddingHeader() + "\n";
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& f = features[i];
    const auto& p = projections[i];
    out += CsvEscape(f.image_id);
    for (double h : f.class_histogram) out += "," + Num(h);
    out += "," + Num(f.mean_total_turning) + "," + Num(f.mean_sign_changes) + "," +
           Num(f.mean_aspect) + "," + std::to_string(f.instance_count);
    out += "," + Num(p.empty() ? 0.0 : p[0]) + "," + Num(p.size() > 1 ? p[1] : 0.0);
    out += "," + f.DominantClass() + "\n";
  }
  return out;
}

void ExportEmbedding(const std::string& path, const std::vector<ImageShapeFeatures>& features,
                     const std::vector<std::vector<double>>& projections) {
  WriteFile(path, RenderEmbedding(features, projections));
}

std::vector<EmbeddingRow> ReadEmbedding(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::string line;
  std::size_t lineno = 0;
  std::vector<EmbeddingRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != EmbeddingHeader()) throw ParseError(path, lineno, "unexpected header");
      continue;
    }
    if (Trim(line).empty()) continue;
    const auto cells = CsvSplit(line);
    if (cells.size() != 12) throw ParseError(path, lineno, "expected 12 columns");
    double v[10];
    for (int c = 0; c < 10; ++c) {
      if (!ParseReal(cells[c + 1], v[c])) {
        throw ParseError(path, lineno, "bad number '" + cells[c + 1] + "'");
      }
    }
    EmbeddingRow r;
    r.image_id = cells[0];
    r.features.image_id = cells[0];
    for (int c = 0; c < kNumOrientations; ++c) r.features.class_histogram[c] = v[c];
    r.features.mean_total_turning = v[4];
    r.features.mean_sign_changes = v[5];
    r.features.mean_aspect = v[6];
    r.features.instance_count = static_cast<int>(v[7]);
    r.proj_x = v[8];
    r.proj_y = v[9];
    r.dominant_class = cells[11];
    rows.push_back(std::move(r));
  }
  if (lineno == 0) throw ParseError(path, 1, "empty embedding file");
  return rows;
}

}  // namespace spotbench::diversity
