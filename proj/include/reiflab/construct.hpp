#pragma once

// Builder for the triangular-cap curves. Level n of a construction is a
// polyline with 2^n edges; every edge carries an isosceles cap with base
// angle theta_{n+1}, and the two equal sides of that cap are the edges of
// level n+1. Caps are erected on the side of their base edge that overlaps
// the parent cap's interior, which alternates with level parity (the level-0
// cap points up). Only the per-level vertex lists are stored; caps and edges
// are reconstructed from them on demand.

#include <cmath>
#include <cstdint>
#include <vector>

#include "reiflab/errors.hpp"
#include "reiflab/geom.hpp"
#include "reiflab/theta.hpp"

namespace reiflab {

inline constexpr std::uint32_t kDepthGuard = 26;  // 2^26 edges; memory rationale

struct TriangularCap {
  Point2 base_start{};  // curve-order start of the base edge
  Point2 base_end{};
  Point2 apex{};
  double angle = 0.0;        // base angle of the cap
  std::uint32_t level = 0;   // n: the cap sits on a level-n edge
  std::uint64_t index = 1;   // i in [1, 2^n], curve order
};

// Exact edge length at level m: 2^-m * prod_{i<=m} sec(theta_i).
inline double edge_length(const ThetaSequence& theta, std::uint64_t m) {
  double len = 1.0;
  for (std::uint64_t i = 1; i <= m; ++i) len /= 2.0 * std::cos(theta.at(i));
  return len;
}

// Apexes sit left of the directed base edge on even levels, right on odd
// levels; that is exactly "overlap the parent's interior" unrolled.
inline double apex_side(std::uint32_t level) { return (level % 2 == 0) ? 1.0 : -1.0; }

inline Point2 cap_apex(Point2 base_start, Point2 base_end, double angle, std::uint32_t level) {
  const Point2 d = base_end - base_start;
  const Point2 mid = base_start + 0.5 * d;
  const Point2 left_normal{-d.y, d.x};  // same length as the base
  return mid + (0.5 * std::tan(angle) * apex_side(level)) * left_normal;
}

// Per-level extrema of geometrically measured edge lengths. Children are
// measured as vectors in their parent edge's frame (half the base plus or
// minus the apex offset), so rounding stays proportional to the edge being
// measured. Subtracting stored unit-box vertex coordinates instead would
// cost ~1e-16 absolute per endpoint, which at level 20 is ~1e-10 of an
// edge — too coarse to resolve the length formula there.
struct EdgeLengthExtrema {
  double min_len = 0.0;
  double max_len = 0.0;
};

inline std::vector<EdgeLengthExtrema> measure_edge_lengths(const ThetaSequence& theta,
                                                           std::uint32_t depth) {
  if (depth > kDepthGuard) throw guard_error("measure_edge_lengths: depth guard");
  std::vector<EdgeLengthExtrema> out(static_cast<size_t>(depth) + 1);
  std::vector<Point2> cur = {Point2{1.0, 0.0}};  // edge vectors of the current level
  for (std::uint32_t n = 0; n <= depth; ++n) {
    EdgeLengthExtrema e{norm(cur[0]), norm(cur[0])};
    for (const Point2& d : cur) {
      const double len = norm(d);
      e.min_len = std::min(e.min_len, len);
      e.max_len = std::max(e.max_len, len);
    }
    out[n] = e;
    if (n == depth) break;
    const double h = 0.5 * std::tan(theta.at(n + 1)) * apex_side(n);
    std::vector<Point2> next(2 * cur.size());
    for (size_t j = 0; j < cur.size(); ++j) {
      const Point2 d = cur[j];
      const Point2 offset{-h * d.y, h * d.x};
      next[2 * j] = 0.5 * d + offset;
      next[2 * j + 1] = 0.5 * d - offset;
    }
    cur = std::move(next);
  }
  return out;
}

class Construction {
 public:
  Construction(ThetaSequence theta, std::uint32_t depth, bool allow_deep = false)
      : theta_(std::move(theta)), depth_(depth) {
    if (depth > kDepthGuard && !allow_deep) {
      throw guard_error("build: depth guard (" + std::to_string(depth) + " > " +
                        std::to_string(kDepthGuard) + "); pass allow_deep to override");
    }
    verts_.resize(static_cast<size_t>(depth) + 2);
    verts_[0] = {Point2{0.0, 0.0}, Point2{1.0, 0.0}};
    for (std::uint32_t n = 0; n <= depth; ++n) {
      const std::vector<Point2>& cur = verts_[n];
      std::vector<Point2>& next = verts_[n + 1];
      next.resize(2 * cur.size() - 1);
      const double angle = theta_.at(n + 1);
      for (size_t j = 0; j + 1 < cur.size(); ++j) {
        next[2 * j] = cur[j];
        next[2 * j + 1] = cap_apex(cur[j], cur[j + 1], angle, n);
      }
      next.back() = cur.back();
    }
  }

  const ThetaSequence& theta() const { return theta_; }
  std::uint32_t depth() const { return depth_; }

  // Vertex list of the level-n polyline, curve order, size 2^n + 1.
  // Available for n in [0, depth + 1].
  const std::vector<Point2>& vertices(std::uint32_t n) const {
    if (n >= verts_.size()) throw validation_error("Construction::vertices: level out of range");
    return verts_[n];
  }

  std::uint64_t edge_count(std::uint32_t n) const {
    return static_cast<std::uint64_t>(vertices(n).size()) - 1;
  }

  // Level-n edge i (1-based, curve order), n in [0, depth + 1].
  Segment edge(std::uint32_t n, std::uint64_t i) const {
    const auto& v = vertices(n);
    if (i < 1 || i > v.size() - 1) throw validation_error("Construction::edge: index out of range");
    return {v[static_cast<size_t>(i - 1)], v[static_cast<size_t>(i)]};
  }

  // Cap on the level-n edge i; n in [0, depth].
  TriangularCap cap(std::uint32_t n, std::uint64_t i) const {
    if (n > depth_) throw validation_error("Construction::cap: level out of range");
    const Segment base = edge(n, i);
    const Point2 apex = vertices(n + 1)[static_cast<size_t>(2 * i - 1)];
    return {base.a, base.b, apex, theta_.at(n + 1), n, i};
  }

 private:
  ThetaSequence theta_;
  std::uint32_t depth_;
  std::vector<std::vector<Point2>> verts_;
};

inline Construction build_construction(const ThetaSequence& theta, std::uint32_t depth,
                                       bool allow_deep = false) {
  return Construction(theta, depth, allow_deep);
}

// --- constant-angle similitude pair ---

// Orientation-preserving similarity x -> scale * R(rot) x + shift.
struct Similitude {
  double rot = 0.0;
  double scale = 1.0;
  Point2 shift{};

  Point2 operator()(Point2 p) const { return scale * rotated(p, rot) + shift; }
};

// (a then b) as function composition b(a(x)).
inline Similitude compose(const Similitude& outer, const Similitude& inner) {
  return {outer.rot + inner.rot, outer.scale * inner.scale,
          outer.scale * rotated(inner.shift, outer.rot) + outer.shift};
}

// The two maps taking the level-0 cap onto the two level-1 caps of the
// constant-angle construction. s1 sends (1,0) to (0,0) and (0,0) to the
// apex; s2 sends (0,0) to (1,0) and (1,0) to the apex. Both are rotations
// (no reflections) and both reverse curve orientation.
inline Similitude cap_similitude(double theta1, int which) {
  const double lambda = 1.0 / (2.0 * std::cos(theta1));
  const double h = 0.5 * std::tan(theta1);
  if (which == 1) return {theta1 - kPi, lambda, {0.5, h}};
  if (which == 2) return {kPi - theta1, lambda, {1.0, 0.0}};
  throw validation_error("cap_similitude: which must be 1 or 2");
}

struct SimilitudeImage {
  TriangularCap cap;      // image of the level-0 cap under the composed map
  Similitude map;         // s_{w_k} o ... o s_{w_1}
  std::uint64_t index;    // predicted index of the image cap at level k
};

// Image of the level-0 cap under the word w (applied left to right), with
// the predicted cap index from the reversal identities
// s1: (n, j) -> (n+1, 2^n - j + 1) and s2: (n, j) -> (n+1, 2^(n+1) - j + 1).
inline SimilitudeImage similitude_images(double theta1, const std::vector<int>& word) {
  if (word.size() > 62) throw validation_error("similitude_images: word too long");
  Similitude m{};  // identity
  std::uint64_t j = 1;
  std::uint32_t level = 0;
  for (int w : word) {
    if (w != 1 && w != 2) throw validation_error("similitude_images: word letters must be 1 or 2");
    m = compose(cap_similitude(theta1, w), m);
    const std::uint64_t caps_here = std::uint64_t{1} << level;
    j = (w == 1) ? caps_here - j + 1 : 2 * caps_here - j + 1;
    ++level;
  }
  const double h = 0.5 * std::tan(theta1);
  TriangularCap img;
  img.base_start = m(Point2{0.0, 0.0});
  img.base_end = m(Point2{1.0, 0.0});
  img.apex = m(Point2{0.5, h});
  img.angle = theta1;
  img.level = level;
  img.index = j;
  return {img, m, j};
}

}  // namespace reiflab
