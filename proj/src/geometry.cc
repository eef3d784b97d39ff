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

#include "spotbench/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spotbench/errors.h"

namespace spotbench::geom {
namespace {

double Cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double Dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double Norm(Point2 a) { return std::hypot(a.x, a.y); }

// Scale used to turn absolute tolerances into relative ones.
double Extent(std::span<const Point2> a, std::span<const Point2> b) {
  double lo_x = a[0].x, hi_x = a[0].x, lo_y = a[0].y, hi_y = a[0].y;
  auto grow = [&](std::span<const Point2> pts) {
    for (const auto& p : pts) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
  };
  grow(a);
  grow(b);
  return std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
}

enum class Side { kInside, kOutside, kBoundary };

struct BoundaryHit {
  Side side = Side::kOutside;
  Point2 edge_dir;  // direction of the boundary edge, when side == kBoundary
};

bool OnSegment(Point2 q, Point2 a, Point2 b, double eps) {
  const Point2 d = b - a;
  const double len = Norm(d);
  if (len == 0.0) return Norm(q - a) <= eps;
  if (std::abs(Cross(d, q - a)) > eps * len) return false;
  const double t = Dot(q - a, d);
  return t >= -eps * len && t <= len * len + eps * len;
}

BoundaryHit Classify(const std::vector<Point2>& poly, Point2 q, double eps) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % n];
    if (OnSegment(q, a, b, eps)) return {Side::kBoundary, b - a};
  }
  int winding = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % n];
    if (a.y <= q.y) {
      if (b.y > q.y && Cross(b - a, q - a) > 0) ++winding;
    } else if (b.y <= q.y && Cross(b - a, q - a) < 0) {
      --winding;
    }
  }
  return {winding != 0 ? Side::kInside : Side::kOutside, {}};
}

// Parameters along p->q where it meets segment a->b (crossings, touches and
// the ends of collinear overlaps).
void AppendHits(Point2 p, Point2 q, Point2 a, Point2 b, double eps,
                std::vector<double>& ts) {
  const Point2 d = q - p;
  const Point2 e = b - a;
  const double dl = Norm(d);
  const double el = Norm(e);
  if (dl == 0.0 || el == 0.0) return;
  const double denom = Cross(d, e);
  const Point2 ap = a - p;
  if (std::abs(denom) > 1e-12 * dl * el) {
    const double t = Cross(ap, e) / denom;
    const double u = Cross(ap, d) / denom;
    const double tt = eps / dl;
    const double tu = eps / el;
    if (t >= -tt && t <= 1 + tt && u >= -tu && u <= 1 + tu) {
      ts.push_back(std::clamp(t, 0.0, 1.0));
    }
    return;
  }
  if (std::abs(Cross(ap, d)) > eps * dl) return;  // parallel, not collinear
  for (Point2 end : {a, b}) {
    const double t = Dot(end - p, d) / (dl * dl);
    if (t > 0.0 && t < 1.0) ts.push_back(t);
  }
}

// Twice the signed area contributed by the parts of `self`'s boundary that
// lie inside `other`. Shared boundary running in the same direction is
// counted only when `keep_shared` is set, so it enters the total once.
double BoundaryContribution(const std::vector<Point2>& self,
                            const std::vector<Point2>& other, double eps,
                            bool keep_shared) {
  const std::size_t n = self.size();
  const std::size_t m = other.size();
  double sum = 0.0;
  std::vector<double> ts;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = self[i];
    const Point2 q = self[(i + 1) % n];
    ts.assign({0.0, 1.0});
    for (std::size_t j = 0; j < m; ++j) {
      AppendHits(p, q, other[j], other[(j + 1) % m], eps, ts);
    }
    std::sort(ts.begin(), ts.end());
    const Point2 d = q - p;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      if (ts[k + 1] - ts[k] <= 0.0) continue;
      const Point2 s0 = p + ts[k] * d;
      const Point2 s1 = p + ts[k + 1] * d;
      if (Norm(s1 - s0) <= eps) continue;
      const BoundaryHit hit = Classify(other, 0.5 * (s0 + s1), eps);
      bool keep = hit.side == Side::kInside;
      if (hit.side == Side::kBoundary) {
        keep = keep_shared && Dot(hit.edge_dir, d) > 0.0;
      }
      if (keep) sum += Cross(s0, s1);
    }
  }
  return sum;
}

bool SegmentsTouch(Point2 p, Point2 q, Point2 a, Point2 b, double eps) {
  const double d1 = Cross(q - p, a - p);
  const double d2 = Cross(q - p, b - p);
  const double d3 = Cross(b - a, p - a);
  const double d4 = Cross(b - a, q - a);
  const double s1 = eps * Norm(q - p);
  const double s2 = eps * Norm(b - a);
  if (((d1 > s1 && d2 < -s1) || (d1 < -s1 && d2 > s1)) &&
      ((d3 > s2 && d4 < -s2) || (d3 < -s2 && d4 > s2))) {
    return true;
  }
  return OnSegment(a, p, q, eps) || OnSegment(b, p, q, eps) ||
         OnSegment(p, a, b, eps) || OnSegment(q, a, b, eps);
}

std::vector<Point2> Translated(const std::vector<Point2>& v, Point2 origin) {
  std::vector<Point2> out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(p - origin);
  return out;
}

double WrapHalfPi(double a) {
  constexpr double kPi = std::numbers::pi;
  while (a >= kPi / 2) a -= kPi;
  while (a < -kPi / 2) a += kPi;
  return a;
}

// Angle of the major axis of a point cloud, plus its extents along the major
// and minor axes.
struct Axis {
  double angle = 0.0;
  double major_extent = 0.0;
  double minor_extent = 0.0;
};

Axis PrincipalAxis(std::span<const Point2> pts) {
  Point2 mean;
  for (const auto& p : pts) mean = mean + p;
  mean = (1.0 / static_cast<double>(pts.size())) * mean;
  double sxx = 0, syy = 0, sxy = 0;
  for (const auto& p : pts) {
    const Point2 d = p - mean;
    sxx += d.x * d.x;
    syy += d.y * d.y;
    sxy += d.x * d.y;
  }
  // Major eigenvector of [[sxx, sxy], [sxy, syy]].
  const double theta = 0.5 * std::atan2(2 * sxy, sxx - syy);
  const Point2 u{std::cos(theta), std::sin(theta)};
  const Point2 v{-u.y, u.x};
  double lo_u = 1e300, hi_u = -1e300, lo_v = 1e300, hi_v = -1e300;
  for (const auto& p : pts) {
    const double a = Dot(p - mean, u);
    const double b = Dot(p - mean, v);
    lo_u = std::min(lo_u, a);
    hi_u = std::max(hi_u, a);
    lo_v = std::min(lo_v, b);
    hi_v = std::max(hi_v, b);
  }
  return {WrapHalfPi(theta), hi_u - lo_u, hi_v - lo_v};
}

double PolylineLength(std::span<const Point2> line) {
  double len = 0.0;
  for (std::size_t i = 1; i < line.size(); ++i) len += Norm(line[i] - line[i - 1]);
  return len;
}

}  // namespace

Polygon::Polygon(std::vector<Point2> vertices) {
  for (const auto& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ValidationError("polygon vertex is not finite");
    }
  }
  std::vector<Point2> dedup;
  dedup.reserve(vertices.size());
  for (const auto& p : vertices) {
    if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
  }
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  if (dedup.size() < 3) {
    throw ValidationError("polygon needs at least 3 distinct vertices, got " +
                          std::to_string(dedup.size()));
  }
  if (SignedArea(dedup) < 0.0) std::reverse(dedup.begin(), dedup.end());
  vertices_ = std::move(dedup);
}

bool Polygon::IsSimple() const {
  const std::size_t n = vertices_.size();
  const double eps = 1e-12 * Extent(vertices_, vertices_);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = vertices_[i];
    const Point2 q = vertices_[(i + 1) % n];
    // Adjacent edge folding back over this one.
    const Point2 r = vertices_[(i + 2) % n];
    if (std::abs(Cross(q - p, r - q)) <= eps * Norm(q - p) &&
        Dot(q - p, r - q) < 0) {
      return false;
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (SegmentsTouch(p, q, vertices_[j], vertices_[(j + 1) % n], eps)) {
        return false;
      }
    }
  }
  return true;
}

double SignedArea(std::span<const Point2> v) {
  if (v.size() < 3) return 0.0;
  // Relative to the first vertex to limit cancellation.
  const Point2 o = v[0];
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    twice += Cross(v[i] - o, v[i + 1] - o);
  }
  return 0.5 * twice;
}

double PolygonArea(const Polygon& p) { return std::abs(SignedArea(p.vertices())); }

namespace {

struct Overlap {
  double inter = 0.0;
  double area_a = 0.0;
  double area_b = 0.0;
};

Overlap ComputeOverlap(const Polygon& a, const Polygon& b) {
  const Point2 origin = a[0];
  const auto va = Translated(a.vertices(), origin);
  const auto vb = Translated(b.vertices(), origin);
  Overlap o;
  o.area_a = std::abs(SignedArea(va));
  o.area_b = std::abs(SignedArea(vb));
  if (a == b) {
    o.inter = o.area_a;
    return o;
  }
  const double eps = 1e-10 * Extent(va, vb);
  const double twice = BoundaryContribution(va, vb, eps, true) +
                       BoundaryContribution(vb, va, eps, false);
  o.inter = std::clamp(0.5 * twice, 0.0, std::min(o.area_a, o.area_b));
  return o;
}

}  // namespace

double PolygonIntersectionArea(const Polygon& a, const Polygon& b) {
  if (!a.IsSimple() || !b.IsSimple()) {
    throw ValidationError("polygon intersection needs simple polygons");
  }
  return ComputeOverlap(a, b).inter;
}

double IouUnchecked(const Polygon& a, const Polygon& b) {
  const Overlap o = ComputeOverlap(a, b);
  const double uni = o.area_a + o.area_b - o.inter;
  if (uni <= 0.0) return 0.0;
  if (a == b) return 1.0;
  return std::clamp(o.inter / uni, 0.0, 1.0);
}

double Iou(const Polygon& a, const Polygon& b) {
  if (!a.IsSimple() || !b.IsSimple()) {
    throw ValidationError("IoU needs simple polygons");
  }
  return IouUnchecked(a, b);
}

bool Contains(const Polygon& p, Point2 q) {
  const double eps = 1e-12 * Extent(p.vertices(), p.vertices());
  return Classify(p.vertices(), q, eps).side != Side::kOutside;
}

Point2 BezierPoint(const std::array<Point2, 4>& ctrl, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw ArgumentError("bezier parameter t must lie in [0, 1]");
  }
  const double s = 1.0 - t;
  const double b0 = s * s * s;
  const double b1 = 3 * s * s * t;
  const double b2 = 3 * s * t * t;
  const double b3 = t * t * t;
  return {b0 * ctrl[0].x + b1 * ctrl[1].x + b2 * ctrl[2].x + b3 * ctrl[3].x,
          b0 * ctrl[0].y + b1 * ctrl[1].y + b2 * ctrl[2].y + b3 * ctrl[3].y};
}

Polygon BezierPairToPolygon(const BezierPair& bp, int samples_per_curve) {
  if (samples_per_curve < 2) {
    throw ArgumentError("samples_per_curve must be >= 2");
  }
  std::vector<Point2> v;
  v.reserve(2 * samples_per_curve);
  const double step = 1.0 / (samples_per_curve - 1);
  for (int i = 0; i < samples_per_curve; ++i) {
    v.push_back(BezierPoint(bp.top, i == samples_per_curve - 1 ? 1.0 : i * step));
  }
  for (int i = 0; i < samples_per_curve; ++i) {
    v.push_back(BezierPoint(bp.bottom, i == samples_per_curve - 1 ? 1.0 : i * step));
  }
  return Polygon(std::move(v));
}

double ResizeScale(int width, int height, int target_short, int max_long) {
  if (width <= 0 || height <= 0 || target_short <= 0 || max_long <= 0) {
    throw ArgumentError("resize arguments must be positive");
  }
  const double short_side = std::min(width, height);
  const double long_side = std::max(width, height);
  double scale = target_short / short_side;
  if (scale * long_side > max_long) scale = max_long / long_side;
  return scale;
}

std::vector<Point2> ResampleByArcLength(std::span<const Point2> line, int n) {
  if (line.empty() || n < 2) throw ArgumentError("resample needs points and n >= 2");
  std::vector<double> cum(line.size(), 0.0);
  for (std::size_t i = 1; i < line.size(); ++i) {
    cum[i] = cum[i - 1] + Norm(line[i] - line[i - 1]);
  }
  const double total = cum.back();
  std::vector<Point2> out;
  out.reserve(n);
  std::size_t seg = 0;
  for (int j = 0; j < n; ++j) {
    const double s = total * j / (n - 1);
    while (seg + 2 < line.size() && cum[seg + 1] < s) ++seg;
    if (line.size() == 1 || total == 0.0) {
      out.push_back(line[0]);
      continue;
    }
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0 ? std::clamp((s - cum[seg]) / len, 0.0, 1.0) : 0.0;
    out.push_back(line[seg] + t * (line[seg + 1] - line[seg]));
  }
  out.back() = line.back();
  return out;
}

CircleFit FitCircle(std::span<const Point2> pts) {
  if (pts.size() < 3) throw ArgumentError("circle fit needs >= 3 points");
  Point2 mean;
  for (const auto& p : pts) mean = mean + p;
  mean = (1.0 / static_cast<double>(pts.size())) * mean;
  // Minimize sum (x^2 + y^2 + D x + E y + F)^2 in centered coordinates.
  double a[3][4] = {};
  for (const auto& p : pts) {
    const double x = p.x - mean.x;
    const double y = p.y - mean.y;
    const double row[3] = {x, y, 1.0};
    const double rhs = -(x * x + y * y);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a[r][c] += row[r] * row[c];
      a[r][3] += row[r] * rhs;
    }
  }
  const double scale = std::max({a[0][0], a[1][1], 1e-300});
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) <= 1e-12 * scale) {
      return {mean, 0.0, 0.0};  // collinear: no finite circle
    }
    std::swap(a[col], a[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
    }
  }
  const double d = a[0][3] / a[0][0];
  const double e = a[1][3] / a[1][1];
  const double f = a[2][3] / a[2][2];
  const Point2 c{-d / 2, -e / 2};
  const double r2 = c.x * c.x + c.y * c.y - f;
  if (!(r2 > 0.0)) return {mean, 0.0, 0.0};
  const double radius = std::sqrt(r2);
  double sq = 0.0;
  for (const auto& p : pts) {
    const double dr = Norm(Point2{p.x - mean.x, p.y - mean.y} - c) - radius;
    sq += dr * dr;
  }
  return {c + mean, radius, std::sqrt(sq / static_cast<double>(pts.size()))};
}

ShapeDescriptor DescribeShape(const Polygon& p, const ShapeOptions& opts) {
  if (opts.resample_n < 8) throw ArgumentError("resample_n must be >= 8");
  if (PolygonArea(p) <= 0.0) throw ValidationError("degenerate polygon has zero area");
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  ShapeDescriptor out;

  if (n < 6 || n % 2 != 0) {
    // No top/bottom pairing: straight centerline along the principal axis.
    const Axis axis = PrincipalAxis(v);
    out.principal_angle = axis.angle;
    out.total_turning = 0.0;
    out.curvature_sign_changes = 0;
    out.circle_fit_relative_residual = 1.0;
    out.aspect_ratio =
        axis.minor_extent > 0 ? axis.major_extent / axis.minor_extent : 1.0;
    return out;
  }

  const std::size_t k = n / 2;
  std::vector<Point2> top(v.begin(), v.begin() + k);
  std::vector<Point2> bottom(v.rbegin(), v.rbegin() + k);
  const auto top_r = ResampleByArcLength(top, opts.resample_n);
  const auto bottom_r = ResampleByArcLength(bottom, opts.resample_n);
  std::vector<Point2> mid;
  mid.reserve(opts.resample_n);
  double thickness = 0.0;
  for (int i = 0; i < opts.resample_n; ++i) {
    mid.push_back(0.5 * (top_r[i] + bottom_r[i]));
    thickness += Norm(top_r[i] - bottom_r[i]);
  }
  thickness /= opts.resample_n;
  const auto center = ResampleByArcLength(mid, opts.resample_n);
  const double length = PolylineLength(center);
  if (length <= 0.0) throw ValidationError("degenerate polygon has no centerline");

  double net = 0.0;
  int last_sign = 0;
  for (int i = 1; i + 1 < opts.resample_n; ++i) {
    const Point2 d0 = center[i] - center[i - 1];
    const Point2 d1 = center[i + 1] - center[i];
    if (Norm(d0) == 0.0 || Norm(d1) == 0.0) continue;
    const double theta = std::atan2(Cross(d0, d1), Dot(d0, d1));
    net += theta;
    if (std::abs(theta) < opts.dead_band) continue;
    const int sign = theta > 0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++out.curvature_sign_changes;
    last_sign = sign;
  }
  out.total_turning = std::abs(net);
  out.principal_angle = PrincipalAxis(center).angle;
  const CircleFit fit = FitCircle(center);
  out.circle_fit_relative_residual =
      fit.radius > 0 ? fit.rms_radial_error / fit.radius : 1.0;
  out.aspect_ratio = thickness > 0 ? length / thickness : length;
  return out;
}

}  // namespace spotbench::geom
