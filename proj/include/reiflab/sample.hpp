#pragma once

// Finite samplings of the sets under study. A cloud carries the sampled
// points, the underlying polylines (for distance-to-set queries), and a
// resolution floor below which the sample no longer represents the set.
// Truncating an infinite family (finitely many lines or parabola branches)
// can only *remove* points, so one-sided flatness defects are never
// overestimated; consumers that must not overlook missing structure keep
// their ball radii below the distance to the truncated region.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "reiflab/construct.hpp"
#include "reiflab/errors.hpp"
#include "reiflab/geom.hpp"
#include "reiflab/theta.hpp"

namespace reiflab {

struct SampleCloud {
  std::vector<Point2> points;
  std::vector<std::vector<Point2>> polylines;
  double resolution_floor = 0.0;
  std::string provenance;
};

// Distance from a point to the sampled set, using the exact polylines.
inline double distance_to_set(const SampleCloud& cloud, const Point2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& chain : cloud.polylines) {
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      best = std::min(best, point_segment_distance(p, {chain[k], chain[k + 1]}));
    }
  }
  for (const auto& q : cloud.points) best = std::min(best, dist(p, q));
  return best;
}

// Level-N vertices plus edge midpoints; the floor is eight edge lengths.
inline SampleCloud cloud_from_construction(const Construction& c) {
  const std::uint32_t n = c.depth();
  const auto& verts = c.vertices(n);
  SampleCloud cloud;
  cloud.points.reserve(2 * verts.size());
  for (std::size_t k = 0; k < verts.size(); ++k) {
    cloud.points.push_back(verts[k]);
    if (k + 1 < verts.size()) {
      cloud.points.push_back(0.5 * (verts[k] + verts[k + 1]));
    }
  }
  cloud.polylines.push_back(verts);
  cloud.resolution_floor = 8.0 * edge_length(c.theta(), n);
  cloud.provenance = "koch(depth=" + std::to_string(n) + ")";
  return cloud;
}

struct Window {
  double x0 = -2.0;
  double x1 = 2.0;
  double y0 = -2.0;
  double y1 = 2.0;

  bool contains(Point2 p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  void validate() const {
    if (!(x0 < x1 && y0 < y1)) throw validation_error("Window: empty window");
  }
};

enum class ExampleKind { kLines, kParabolas };

// kLines: the union of horizontal lines y = 1/n, n = 1..n_max. kParabolas:
// the branches y = +-x^2/n, n = 1..n_max. Neither set contains the x-axis
// (it is only in the closure); the parabola branches all share the origin,
// which enters the point list exactly once.
inline SampleCloud example_set(ExampleKind kind, std::uint32_t n_max, const Window& window,
                               double spacing) {
  if (n_max < 1) throw validation_error("example_set: n_max must be >= 1");
  if (!(spacing > 0.0)) throw validation_error("example_set: spacing must be positive");
  window.validate();

  SampleCloud cloud;
  const auto steps = static_cast<std::size_t>(std::ceil((window.x1 - window.x0) / spacing));
  bool have_origin = false;
  auto add_graph = [&](auto f) {
    std::vector<Point2> chain;
    chain.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
      const double x = window.x0 + (window.x1 - window.x0) * static_cast<double>(k) / steps;
      const Point2 p{x, f(x)};
      if (!window.contains(p)) continue;
      chain.push_back(p);
      if (p.x == 0.0 && p.y == 0.0) {
        if (have_origin) continue;  // shared point of all branches, keep once
        have_origin = true;
      }
      cloud.points.push_back(p);
    }
    if (chain.size() >= 2) cloud.polylines.push_back(std::move(chain));
  };

  if (kind == ExampleKind::kLines) {
    for (std::uint32_t n = 1; n <= n_max; ++n) {
      const double y = 1.0 / n;
      add_graph([y](double) { return y; });
    }
    cloud.provenance = "lines(n_max=" + std::to_string(n_max) + ")";
  } else {
    for (std::uint32_t n = 1; n <= n_max; ++n) {
      add_graph([n](double x) { return x * x / n; });
      add_graph([n](double x) { return -x * x / n; });
    }
    cloud.provenance = "parabolas(n_max=" + std::to_string(n_max) + ")";
  }
  if (cloud.points.empty()) throw validation_error("example_set: window excludes the set");
  cloud.resolution_floor = 8.0 * spacing;
  return cloud;
}

}  // namespace reiflab
