#pragma once

// Planar primitives used throughout: value-type points, anchored lines with a
// canonical direction angle in [0, pi), double cones, and the width-fit
// operation the defect machinery is built on. Everything is exact-arithmetic
// free: doubles with explicitly stated tolerances.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "reiflab/errors.hpp"

namespace reiflab {

inline constexpr double kPi = 3.14159265358979323846;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
};

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

inline Point2 rotated(Point2 p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

// Reduces a direction angle to the canonical representative in [0, pi).
// Directions of lines are classes mod pi; pi itself maps to 0.
inline double canonical_angle(double phi) {
  double a = std::fmod(phi, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a = 0.0;  // fmod rounding can land exactly on pi
  return a;
}

// Distance between two direction classes on the circle of circumference pi.
inline double direction_distance(double phi_a, double phi_b) {
  double d = std::fabs(canonical_angle(phi_a) - canonical_angle(phi_b));
  return std::min(d, kPi - d);
}

// A line through `anchor` with canonical direction angle in [0, pi).
class Line {
 public:
  Line() = default;
  Line(Point2 anchor, double phi) : anchor_(anchor), phi_(canonical_angle(phi)) {
    if (!is_finite(anchor) || !std::isfinite(phi)) {
      throw validation_error("Line: non-finite anchor or angle");
    }
  }

  static Line from_points(Point2 a, Point2 b) {
    if (a == b) throw validation_error("Line::from_points: coincident points");
    return Line(a, std::atan2(b.y - a.y, b.x - a.x));
  }

  Point2 anchor() const { return anchor_; }
  double angle() const { return phi_; }
  Point2 direction() const { return {std::cos(phi_), std::sin(phi_)}; }
  Point2 normal() const { return {-std::sin(phi_), std::cos(phi_)}; }

 private:
  Point2 anchor_{};
  double phi_ = 0.0;
};

inline double point_line_distance(Point2 p, const Line& l) {
  return std::fabs(dot(p - l.anchor(), l.normal()));
}

// Symmetric sup-inf distance between two finite point sets, brute force.
inline double hausdorff_distance(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  if (a.empty() || b.empty()) throw validation_error("hausdorff_distance: empty set");
  auto one_sided = [](const std::vector<Point2>& from, const std::vector<Point2>& to) {
    double worst = 0.0;
    for (Point2 p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (Point2 q : to) best = std::min(best, dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

struct WidthFit {
  Line line;     // passes through the requested center
  double width;  // max point-line distance over the input set
};

namespace detail {

// Max |<p - y, normal(phi)>| over the cached offsets.
inline double width_at_angle(const std::vector<Point2>& offsets, double phi) {
  const double ns = -std::sin(phi), nc = std::cos(phi);
  double w = 0.0;
  for (const Point2& d : offsets) w = std::max(w, std::fabs(d.x * ns + d.y * nc));
  return w;
}

// Golden-section minimization on [lo, hi]; the objective is continuous and
// the bracket comes from a scan local minimum, so unimodality holds locally.
template <typename F>
double golden_min(F f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - kInvPhi * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + kInvPhi * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

// Line through `y` minimizing the maximum distance to `pts`. Coarse scan of
// `scan_angles` equispaced directions in [0, pi), then golden-section
// refinement of every scan-local minimum; ties within 1e-10 (relative to the
// point spread) break toward the smallest canonical angle.
inline WidthFit min_width_line_through(Point2 y, const std::vector<Point2>& pts,
                                       int scan_angles = 512) {
  if (pts.empty()) throw validation_error("min_width_line_through: empty point set");
  if (scan_angles < 4) throw validation_error("min_width_line_through: scan too coarse");

  std::vector<Point2> offsets;
  offsets.reserve(pts.size());
  double spread = 0.0;
  for (Point2 p : pts) {
    Point2 d = p - y;
    offsets.push_back(d);
    spread = std::max(spread, std::max(std::fabs(d.x), std::fabs(d.y)));
  }
  if (spread == 0.0) return {Line(y, 0.0), 0.0};  // all points coincide with y

  const int n = scan_angles;
  const double step = kPi / n;
  std::vector<double> w(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) w[static_cast<size_t>(k)] = detail::width_at_angle(offsets, k * step);

  auto f = [&offsets](double phi) { return detail::width_at_angle(offsets, phi); };

  // Refine around every cyclic local minimum of the scan. The envelope of
  // |sinusoids| has at most ~2*|pts| pieces per period, so with a dense scan
  // each basin holds a sample and no global minimum is missed.
  double best_w = std::numeric_limits<double>::infinity();
  double best_phi = 0.0;
  const double tie = 1e-10 * std::max(1.0, spread);
  auto consider = [&](double phi, double width) {
    phi = canonical_angle(phi);
    if (width < best_w - tie || (width < best_w + tie && phi < best_phi)) {
      best_w = std::min(width, best_w);
      best_phi = phi;
    }
  };
  for (int k = 0; k < n; ++k) {
    const double wk = w[static_cast<size_t>(k)];
    const double wl = w[static_cast<size_t>((k + n - 1) % n)];
    const double wr = w[static_cast<size_t>((k + 1) % n)];
    if (wk <= wl && wk <= wr) {
      const double lo = (k - 1) * step, hi = (k + 1) * step;
      const double phi = detail::golden_min(f, lo, hi, 1e-13);
      consider(phi, f(phi));
    }
  }
  return {Line(y, best_phi), best_w};
}

// Double cone with apex `apex`, axis direction `axis_phi` (a line class), and
// aperture s in (0,1): the set { p : d(p - apex, axis) < s * |p - apex| }.
struct Cone {
  Point2 apex{};
  double axis_phi = 0.0;
  double aperture = 0.5;
};

// The apex itself is a member by convention.
inline bool cone_membership(Point2 p, const Cone& c) {
  if (!(c.aperture > 0.0 && c.aperture < 1.0)) {
    throw validation_error("cone_membership: aperture must lie in (0,1)");
  }
  Point2 d = p - c.apex;
  if (d.x == 0.0 && d.y == 0.0) return true;
  const double along = point_line_distance(p, Line(c.apex, c.axis_phi));
  return along < c.aperture * norm(d);
}

// Smallest half-aperture (in radians, within [0, pi/2]) of a double cone at
// `z` containing every point of `pts`: half the width of the smallest arc on
// the direction circle (circumference pi) covering the directions p - z.
// This is the direction-spread upper bound used by the separation audits.
inline double enclosing_cone_angle(Point2 z, const std::vector<Point2>& pts) {
  if (pts.empty()) throw validation_error("enclosing_cone_angle: empty point set");
  std::vector<double> dirs;
  dirs.reserve(pts.size());
  for (Point2 p : pts) {
    Point2 d = p - z;
    if (d.x == 0.0 && d.y == 0.0) {
      throw validation_error("enclosing_cone_angle: a point coincides with the apex");
    }
    dirs.push_back(canonical_angle(std::atan2(d.y, d.x)));
  }
  std::sort(dirs.begin(), dirs.end());
  double max_gap = kPi - dirs.back() + dirs.front();  // wrap-around gap
  for (size_t i = 1; i < dirs.size(); ++i) max_gap = std::max(max_gap, dirs[i] - dirs[i - 1]);
  return 0.5 * (kPi - max_gap);
}

// --- small geometric helpers shared by the construction/audit modules ---

struct Segment {
  Point2 a{};
  Point2 b{};
};

inline double length(const Segment& s) { return dist(s.a, s.b); }

inline double point_segment_distance(Point2 p, const Segment& s) {
  Point2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return dist(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return dist(p, s.a + t * d);
}

// Length of the part of segment s inside the open disk B_r(c).
inline double segment_length_in_disk(const Segment& s, Point2 c, double r) {
  Point2 d = s.b - s.a;
  const double len = norm(d);
  if (len == 0.0) return 0.0;
  Point2 u = (1.0 / len) * d;
  const double t0 = dot(c - s.a, u);             // foot of c along the segment line
  const double h2 = dot(c - s.a, c - s.a) - t0 * t0;
  const double disc = r * r - h2;
  if (disc <= 0.0) return 0.0;
  const double half = std::sqrt(disc);
  const double lo = std::max(0.0, t0 - half);
  const double hi = std::min(len, t0 + half);
  return std::max(0.0, hi - lo);
}

// Closed point-in-triangle test with a slack for boundary points.
inline bool point_in_triangle(Point2 p, Point2 a, Point2 b, Point2 c, double eps = 0.0) {
  const double d1 = cross(b - a, p - a);
  const double d2 = cross(c - b, p - b);
  const double d3 = cross(a - c, p - c);
  const double scale = std::max({dist(a, b), dist(b, c), dist(c, a)});
  const double slack = eps * scale;
  const bool has_neg = (d1 < -slack) || (d2 < -slack) || (d3 < -slack);
  const bool has_pos = (d1 > slack) || (d2 > slack) || (d3 > slack);
  return !(has_neg && has_pos);
}

}  // namespace reiflab
