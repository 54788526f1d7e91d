#pragma once

// Address-local descent through the construction. Global coordinates lose
// all precision once edge lengths drop below machine epsilon (level ~50 for
// admissible angles), so the view renormalizes after every step: the current
// edge is always ((0,0),(1,0)) in local coordinates, and a window of up to
// five consecutive same-level edges around it is carried along. The global
// frame rotation is accumulated as an exact sum of signed level angles and
// the global scale as a running log, so directions and scales stay accurate
// at any depth.

#include <cmath>
#include <cstdint>
#include <vector>

#include "reiflab/address.hpp"
#include "reiflab/construct.hpp"
#include "reiflab/errors.hpp"
#include "reiflab/geom.hpp"
#include "reiflab/theta.hpp"

namespace reiflab {

class LocalView {
 public:
  // The factories of ThetaSequence guarantee validity; nothing to re-check.
  explicit LocalView(ThetaSequence theta) : theta_(std::move(theta)) {
    verts_ = {{0.0, 0.0}, {1.0, 0.0}};
  }

  std::uint32_t level() const { return level_; }
  std::uint64_t index() const { return index_; }
  double frame_rotation() const { return frame_; }
  double log_scale() const { return log_scale_; }
  // Global length of one local unit; underflows to 0 past level ~700.
  double global_scale() const { return std::exp(log_scale_); }

  // Number of window edges on each side of the current edge (0..2).
  std::uint32_t margin() const {
    const std::uint64_t lo_gap = index_ - window_lo_;
    const std::uint64_t hi_gap = window_hi_ - index_;
    return static_cast<std::uint32_t>(std::min(lo_gap, hi_gap));
  }

  // Radius (local units) within which the window provably covers the set:
  // every set point in the ball descends from a window edge.
  double trusted_radius() const { return 0.375 * margin(); }

  // Step to the child selected by the address bit (0 = first child).
  void descend(std::uint8_t bit) {
    if (level_ >= 62) throw guard_error("LocalView: descent past level 62");
    const double theta = theta_.at(level_ + 1);
    const double side = apex_side(level_);

    // Children of the window edges, still in the old local frame.
    std::vector<Point2> next(2 * verts_.size() - 1);
    for (std::size_t j = 0; j + 1 < verts_.size(); ++j) {
      next[2 * j] = verts_[j];
      next[2 * j + 1] = cap_apex(verts_[j], verts_[j + 1], theta, level_);
    }
    next.back() = verts_.back();

    const std::uint64_t child = 2 * index_ - 1 + bit;
    const std::uint64_t child_lo = 2 * window_lo_ - 1;
    const std::uint64_t edges = std::uint64_t{1} << (level_ + 1);
    const std::uint64_t new_lo = child > 2 ? child - 2 : 1;
    const std::uint64_t new_hi = std::min(edges, child + 2);

    // Renormalize: child edge start -> origin, child direction -> +x, child
    // length -> 1. The child's angle in the old frame is exactly +-theta.
    const double child_angle = (bit == 0 ? side : -side) * theta;
    const double scale = 2.0 * std::cos(theta);  // 1 / child length
    const Point2 origin = next[child - child_lo];
    std::vector<Point2> verts(new_hi - new_lo + 2);
    for (std::uint64_t e = new_lo; e <= new_hi + 1; ++e) {
      verts[e - new_lo] = scale * rotated(next[e - child_lo] - origin, -child_angle);
    }

    verts_.swap(verts);
    window_lo_ = new_lo;
    window_hi_ = new_hi;
    index_ = child;
    ++level_;
    frame_ += child_angle;
    log_scale_ -= std::log(scale);
  }

  // Window polyline refined `extra` levels, local coordinates. Spacing is
  // roughly 2^-extra, so samples resolve balls well above that scale.
  std::vector<Point2> window_polyline(std::uint32_t extra) const {
    std::vector<Point2> cur = verts_;
    std::uint64_t first_edge = window_lo_;  // global index of cur's first edge
    for (std::uint32_t j = 0; j < extra; ++j) {
      const std::uint32_t lvl = level_ + j;
      const double theta = theta_.at(lvl + 1);
      std::vector<Point2> next(2 * cur.size() - 1);
      for (std::size_t e = 0; e + 1 < cur.size(); ++e) {
        next[2 * e] = cur[e];
        // Apex side depends on the edge's own level only.
        next[2 * e + 1] = cap_apex(cur[e], cur[e + 1], theta, lvl);
      }
      next.back() = cur.back();
      cur.swap(next);
      first_edge = 2 * first_edge - 1;
    }
    return cur;
  }

  // Local position of the set point reached by following `bits` further down
  // (no renormalization); accurate to about 2^-|bits| local units.
  Point2 track_point(const std::vector<std::uint8_t>& bits) const {
    Point2 a{0.0, 0.0}, b{1.0, 0.0};
    for (std::size_t j = 0; j < bits.size(); ++j) {
      const std::uint32_t lvl = level_ + static_cast<std::uint32_t>(j);
      const Point2 apex = cap_apex(a, b, theta_.at(lvl + 1), lvl);
      if (bits[j] == 0) {
        b = apex;
      } else {
        a = apex;
      }
    }
    return a;
  }

 private:
  ThetaSequence theta_;
  std::vector<Point2> verts_;   // window vertices, local coordinates
  std::uint64_t window_lo_ = 1; // global edge indices covered: [lo, hi]
  std::uint64_t window_hi_ = 1;
  std::uint64_t index_ = 1;     // current edge, 1-based at current level
  std::uint32_t level_ = 0;
  double frame_ = 0.0;          // exact signed-angle sum
  double log_scale_ = 0.0;
};

struct ProfileOptions {
  std::uint32_t refine = 7;        // extra local levels for sampling
  double radius = 0.5;             // ball radius, local units
  std::uint32_t scan_angles = 128; // direction scan for the width fit
  std::size_t max_points = 600;    // subsample cap inside the ball
  std::uint32_t skip_levels = 4;   // ignore shallow levels (margin warm-up)
};

struct ProfilePoint {
  std::uint32_t level = 0;
  double scale = 0.0;      // global ball radius
  double defect = 0.0;     // flatness defect at this scale
  double direction = 0.0;  // global best-fit direction in [0, pi)
};

// Flatness defect and best-fit direction at the set point addressed by
// `a`, one sample per level, at a fixed radius in local units (hence
// geometrically shrinking global scales). Levels whose window margin cannot
// cover the ball are skipped.
inline std::vector<ProfilePoint> descent_profile(const ThetaSequence& theta,
                                                 const DyadicAddress& a,
                                                 const ProfileOptions& opt = {}) {
  if (!(opt.radius > 0.0)) throw validation_error("descent_profile: radius must be positive");
  LocalView view(theta);
  std::vector<ProfilePoint> out;
  for (std::uint32_t n = 0; n < a.size(); ++n) {
    view.descend(a.bits[n]);
    const std::uint32_t lvl = view.level();
    if (lvl < opt.skip_levels) continue;
    if (view.trusted_radius() < opt.radius) continue;

    std::vector<std::uint8_t> rest(a.bits.begin() + lvl,
                                   a.bits.begin() + std::min<std::size_t>(a.size(), lvl + 10));
    const Point2 center = view.track_point(rest);

    const std::vector<Point2> chain = view.window_polyline(opt.refine);
    std::vector<Point2> ball;
    for (std::size_t k = 0; k < chain.size(); ++k) {
      if (dist(chain[k], center) <= opt.radius) ball.push_back(chain[k]);
      if (k + 1 < chain.size()) {
        const Point2 mid = 0.5 * (chain[k] + chain[k + 1]);
        if (dist(mid, center) <= opt.radius) ball.push_back(mid);
      }
    }
    if (ball.size() > opt.max_points) {
      std::vector<Point2> thin;
      const std::size_t stride = ball.size() / opt.max_points + 1;
      for (std::size_t k = 0; k < ball.size(); k += stride) thin.push_back(ball[k]);
      ball.swap(thin);
    }
    if (ball.size() < 3) continue;

    const WidthFit fit = min_width_line_through(center, ball, opt.scan_angles);
    ProfilePoint p;
    p.level = lvl;
    p.scale = opt.radius * view.global_scale();
    p.defect = fit.width / opt.radius;
    p.direction = canonical_angle(fit.line.angle() + view.frame_rotation());
    out.push_back(p);
  }
  return out;
}

// Total variation of the best-fit direction along the descent, measured on
// the circle of directions (period pi).
inline double direction_total_variation(const std::vector<ProfilePoint>& profile) {
  double tv = 0.0;
  for (std::size_t k = 1; k < profile.size(); ++k) {
    tv += direction_distance(profile[k - 1].direction, profile[k].direction);
  }
  return tv;
}

}  // namespace reiflab
