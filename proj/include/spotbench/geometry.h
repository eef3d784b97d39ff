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

// Computational geometry for text regions.
//
// All values are immutable after construction and every free function is
// pure, so they are safe to call concurrently.

#ifndef SPOTBENCH_GEOMETRY_H_
#define SPOTBENCH_GEOMETRY_H_

#include <array>
#include <span>
#include <vector>

namespace spotbench::geom {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

// Simple closed polygon, stored counter-clockwise.
//
// Construction drops consecutive duplicate vertices (including the closing
// duplicate some formats repeat) and reverses clockwise input end to end, so
// vertex i keeps vertex n-1-i as its opposite in either order.
class Polygon {
 public:
  // Throws ValidationError on < 3 distinct vertices or non-finite values.
  explicit Polygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }

  // True when no two non-adjacent edges touch and no adjacent edges fold
  // back onto each other.
  bool IsSimple() const;

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  std::vector<Point2> vertices_;
};

// Two cubic Bezier curves: the top edge left to right and the bottom edge
// right to left, so the four corners run around the region.
struct BezierPair {
  std::array<Point2, 4> top;
  std::array<Point2, 4> bottom;
};

struct ShapeDescriptor {
  double principal_angle = 0.0;  // radians in [-pi/2, pi/2)
  double total_turning = 0.0;    // |net turning| of the centerline, radians
  int curvature_sign_changes = 0;
  double circle_fit_relative_residual = 0.0;
  double aspect_ratio = 1.0;  // centerline length / mean thickness
};

struct ShapeOptions {
  int resample_n = 48;
  // Turning angles below this magnitude count as zero for sign changes.
  double dead_band = 0.02;
};

// Signed shoelace area; positive for counter-clockwise vertex order.
double SignedArea(std::span<const Point2> vertices);

double PolygonArea(const Polygon& p);

// Area of a ∩ b for simple (possibly concave) polygons. Throws
// ValidationError if either input self-intersects.
double PolygonIntersectionArea(const Polygon& a, const Polygon& b);

// Intersection over union; 0 when the union area is 0.
double Iou(const Polygon& a, const Polygon& b);

// Same as Iou() but skips the simplicity check. Callers that validated both
// polygons at ingest use this on hot paths.
double IouUnchecked(const Polygon& a, const Polygon& b);

// Point-in-polygon via winding number. Boundary points count as inside.
bool Contains(const Polygon& p, Point2 q);

// Cubic Bernstein evaluation. Throws ArgumentError for t outside [0, 1].
Point2 BezierPoint(const std::array<Point2, 4>& ctrl, double t);

// Top curve samples followed by bottom curve samples, both in curve
// parameter order: 2 * samples_per_curve vertices.
Polygon BezierPairToPolygon(const BezierPair& bp, int samples_per_curve);

// Uniform resize factor: short side to target_short unless that would push
// the long side past max_long.
double ResizeScale(int width, int height, int target_short, int max_long);

ShapeDescriptor DescribeShape(const Polygon& p, const ShapeOptions& opts = {});

// Resamples an open polyline at n points equally spaced by arc length.
std::vector<Point2> ResampleByArcLength(std::span<const Point2> line, int n);

struct CircleFit {
  Point2 center;
  double radius = 0.0;
  double rms_radial_error = 0.0;
};

// Algebraic (Kasa) least-squares circle fit. Needs >= 3 points.
CircleFit FitCircle(std::span<const Point2> points);

}  // namespace spotbench::geom

#endif  // SPOTBENCH_GEOMETRY_H_
