#pragma once

// Dimension estimates, attractor and length audits, the pushforward length
// bound, cap-separation audits, density profiles, and the classification
// table of the twelve properties.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include "reiflab/address.hpp"
#include "reiflab/construct.hpp"
#include "reiflab/errors.hpp"
#include "reiflab/geom.hpp"
#include "reiflab/sample.hpp"
#include "reiflab/theta.hpp"

namespace reiflab {

// Similarity dimension ln 2 / ln(2 cos theta) of the constant-angle cap set.
inline double hutchinson_dim(double theta) {
  if (!(theta > 0.0 && theta < kMaxTheta)) {
    throw validation_error("hutchinson_dim: theta outside (0, pi/24)");
  }
  return std::log(2.0) / std::log(2.0 * std::cos(theta));
}

struct BoxCountResult {
  std::vector<double> epsilons;
  std::vector<std::size_t> counts;
  double slope = 0.0;     // fitted d in N(eps) ~ eps^-d
  double residual = 0.0;  // rms residual of the log-log fit
  bool trusted = false;   // residual < 0.01
};

// Axis-aligned box counting over the given grid ladder. A mesh anchored at
// one point is merely one cover; the covering number is an infimum, so each
// count is minimized over an `offsets` x `offsets` lattice of grid anchors.
// This matters at coarse scales, where a single anchor overcounts enough to
// visibly bend the log-log fit.
inline BoxCountResult box_dimension(const SampleCloud& s, const std::vector<double>& epsilons,
                                    std::uint32_t offsets = 4) {
  if (s.points.empty()) throw validation_error("box_dimension: empty cloud");
  if (epsilons.size() < 2) throw validation_error("box_dimension: need at least two grid sizes");
  if (offsets < 1) throw validation_error("box_dimension: need at least one grid anchor");

  Point2 lo = s.points.front(), hi = lo;
  for (const Point2& p : s.points) {
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
  }
  const double diam = dist(lo, hi);
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw validation_error("box_dimension: grid sizes must be positive");
    if (eps < s.resolution_floor || eps > diam * (1 + 1e-9)) {
      throw validation_error("box_dimension: grid ladder outside [floor, diameter]");
    }
  }

  BoxCountResult res;
  res.epsilons = epsilons;
  std::unordered_set<std::uint64_t> boxes;
  for (double eps : epsilons) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::uint32_t oi = 0; oi < offsets; ++oi) {
      for (std::uint32_t oj = 0; oj < offsets; ++oj) {
        const double ox = eps * oi / offsets, oy = eps * oj / offsets;
        boxes.clear();
        boxes.reserve(s.points.size());
        for (const Point2& p : s.points) {
          const auto ix = static_cast<std::int64_t>(std::floor((p.x - ox) / eps));
          const auto iy = static_cast<std::int64_t>(std::floor((p.y - oy) / eps));
          boxes.insert((static_cast<std::uint64_t>(ix + 0x40000000LL) << 32) ^
                       static_cast<std::uint64_t>(iy + 0x40000000LL));
        }
        best = std::min(best, boxes.size());
      }
    }
    res.counts.push_back(best);
  }

  // Least squares of log N against log(1/eps).
  const std::size_t m = epsilons.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double x = -std::log(epsilons[k]);
    const double y = std::log(static_cast<double>(res.counts[k]));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double den = m * sxx - sx * sx;
  if (den <= 0) throw validation_error("box_dimension: degenerate ladder");
  res.slope = (m * sxy - sx * sy) / den;
  const double intercept = (sy - res.slope * sx) / m;
  double ss = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double x = -std::log(epsilons[k]);
    const double y = std::log(static_cast<double>(res.counts[k]));
    const double r = y - (res.slope * x + intercept);
    ss += r * r;
  }
  res.residual = std::sqrt(ss / m);
  res.trusted = res.residual < 0.01;
  return res;
}

inline std::vector<double> dyadic_grid_ladder(int from_exp, int to_exp) {
  if (from_exp >= to_exp) throw validation_error("dyadic_grid_ladder: empty range");
  std::vector<double> eps;
  for (int e = from_exp; e <= to_exp; ++e) eps.push_back(std::ldexp(1.0, -e));
  return eps;
}

struct AttractorReport {
  double max_discrepancy = 0.0;
  bool bijection_ok = false;
  std::size_t words_checked = 0;
};

// Every length-n similitude word must land on the level-n cap its predicted
// index names, vertex for vertex (base endpoints may swap: the maps reverse
// curve orientation, the cap is the same set).
inline AttractorReport verify_attractor(double theta, std::uint32_t n) {
  if (n < 1 || n > 16) throw validation_error("verify_attractor: depth must be in [1,16]");
  const Construction c(ThetaSequence::constant(theta), n);

  AttractorReport rep;
  std::vector<bool> seen(std::size_t{1} << n, false);
  bool all_distinct = true;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    std::vector<int> word(n);
    for (std::uint32_t k = 0; k < n; ++k) word[k] = ((code >> k) & 1) ? 2 : 1;
    const SimilitudeImage img = similitude_images(theta, word);
    if (img.index < 1 || img.index > (std::uint64_t{1} << n) || seen[img.index - 1]) {
      all_distinct = false;
    } else {
      seen[img.index - 1] = true;
    }
    const TriangularCap built = c.cap(n, img.index);
    const double direct = std::max(dist(img.cap.base_start, built.base_start),
                                   dist(img.cap.base_end, built.base_end));
    const double swapped = std::max(dist(img.cap.base_start, built.base_end),
                                    dist(img.cap.base_end, built.base_start));
    const double base_err = std::min(direct, swapped);
    rep.max_discrepancy =
        std::max(rep.max_discrepancy, std::max(base_err, dist(img.cap.apex, built.apex)));
    ++rep.words_checked;
  }
  rep.bijection_ok = all_distinct;
  return rep;
}

struct LengthGrowth {
  std::vector<double> exact;     // products of sec(theta_i), index = level
  std::vector<double> measured;  // polyline lengths of the built levels
  double threshold = 2.0;
  std::uint32_t first_exceed = 0;  // smallest level with exact > threshold; 0 if none
};

inline LengthGrowth length_growth(const ThetaSequence& theta, std::uint32_t depth,
                                  double threshold = 2.0) {
  if (depth < 1) throw validation_error("length_growth: depth must be >= 1");
  const Construction c(theta, depth);
  LengthGrowth g;
  g.threshold = threshold;
  double log_prod = 0.0;
  for (std::uint32_t n = 0; n <= depth; ++n) {
    if (n > 0) log_prod -= std::log(std::cos(theta.at(n)));
    g.exact.push_back(std::exp(log_prod));
    // Kahan summation: 2^n terms would otherwise drift past the tolerance.
    const auto& v = c.vertices(n);
    double sum = 0.0, comp = 0.0;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
      const double term = dist(v[k], v[k + 1]) - comp;
      const double t = sum + term;
      comp = (t - sum) - term;
      sum = t;
    }
    g.measured.push_back(sum);
    if (g.first_exceed == 0 && g.exact.back() > threshold) g.first_exceed = n;
  }
  return g;
}

struct PushforwardReport {
  double k_length = 0.0;               // total length of the interval union
  double bound = 0.0;                  // k_length / 8
  double measured = 0.0;               // polyline length of the image at depth
  std::vector<double> scaled_lengths;  // per-level Lip bound * k_length
  bool ok = false;                     // measured >= bound
};

// Length of the image of a finite union of dyadic intervals under the
// level-`depth` map, against the guaranteed lower bound length(K)/8.
inline PushforwardReport pushforward_lower_bound(const Construction& c,
                                                 const std::vector<DyadicInterval>& K) {
  if (K.empty()) throw validation_error("pushforward_lower_bound: empty interval union");
  const std::uint32_t depth = c.depth();
  std::vector<std::pair<double, double>> parts;
  for (const DyadicInterval& iv : K) {
    if (iv.level > depth) {
      throw validation_error("pushforward_lower_bound: interval finer than construction depth");
    }
    const double lo = iv.lo(), hi = iv.hi();
    if (lo < 0.0 || hi > 1.0) {
      throw validation_error("pushforward_lower_bound: interval outside [0,1]");
    }
    parts.emplace_back(lo, hi);
  }
  std::sort(parts.begin(), parts.end());
  std::vector<std::pair<double, double>> merged;
  for (auto [lo, hi] : parts) {
    if (!merged.empty() && lo <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, hi);
    } else {
      merged.emplace_back(lo, hi);
    }
  }

  PushforwardReport rep;
  for (auto [lo, hi] : merged) rep.k_length += hi - lo;
  rep.bound = rep.k_length / 8.0;

  // Each level-`depth` edge descends from a dyadic interval; K is a union of
  // coarser dyadic intervals, so membership is containment of the midpoint.
  const auto& v = c.vertices(depth);
  const double scale = std::ldexp(1.0, static_cast<int>(depth));
  double sum = 0.0, comp = 0.0;
  auto covered = [&](double x) {
    auto it = std::upper_bound(merged.begin(), merged.end(), std::make_pair(x, 2.0));
    if (it == merged.begin()) return false;
    --it;
    return x < it->second;
  };
  for (std::size_t e = 0; e + 1 < v.size(); ++e) {
    const double mid = (static_cast<double>(e) + 0.5) / scale;
    if (!covered(mid)) continue;
    const double term = dist(v[e], v[e + 1]) - comp;
    const double t = sum + term;
    comp = (t - sum) - term;
    sum = t;
  }
  rep.measured = sum;

  double log_prod = 0.0;
  for (std::uint32_t n = 1; n <= depth; ++n) {
    log_prod -= std::log(std::cos(c.theta().at(n)));
    rep.scaled_lengths.push_back(std::exp(log_prod) * rep.k_length);
  }
  rep.ok = rep.measured >= rep.bound - 1e-12;
  return rep;
}

inline PushforwardReport pushforward_lower_bound(const ThetaSequence& theta,
                                                 const std::vector<DyadicInterval>& K,
                                                 std::uint32_t depth) {
  return pushforward_lower_bound(Construction(theta, depth), K);
}

// --- cap separation audit ---

struct AuditViolation {
  std::uint32_t level = 0;
  std::uint64_t index = 0;
  Point2 point{};
  double value = 0.0;
};

struct SeparationAudit {
  std::uint64_t pairs_checked = 0;
  double max_pair_angle = 0.0;
  std::vector<AuditViolation> cone_violations;
  std::uint64_t rectangles_checked = 0;
  std::vector<AuditViolation> rectangle_violations;

  bool passed() const { return cone_violations.empty() && rectangle_violations.empty(); }
};

// Two checks on every level n <= n_max, sampled at the construction's full
// depth: (a) adjacent caps subtend at most 2*theta1 at their shared vertex;
// (b) the slab around each edge — the x-span of its cap triple in the edge
// frame times height +-2 edge lengths — contains no sample point from
// outside the triple. Together these bound how close foreign branches come.
inline SeparationAudit separation_audit(const Construction& c, std::uint32_t n_max,
                                        double tol = 1e-9) {
  const std::uint32_t depth = c.depth();
  if (n_max >= depth) throw validation_error("separation_audit: n_max must be below depth");
  const double theta1 = c.theta().at(1);
  const auto& deep = c.vertices(depth);

  std::vector<Point2> samples;
  samples.reserve(2 * deep.size());
  for (std::size_t k = 0; k < deep.size(); ++k) {
    samples.push_back(deep[k]);
    if (k + 1 < deep.size()) samples.push_back(0.5 * (deep[k] + deep[k + 1]));
  }

  SeparationAudit audit;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    const std::uint64_t caps = std::uint64_t{1} << n;
    const std::uint64_t span = std::uint64_t{1} << (depth - n);  // deep vertices per cap

    // (a) neighbor cones at shared vertices.
    for (std::uint64_t i = 1; i + 1 <= caps; ++i) {
      const Point2 z = deep[i * span];
      std::vector<Point2> pts;
      pts.reserve(2 * span + 1);
      for (std::uint64_t k = (i - 1) * span; k <= (i + 1) * span; ++k) {
        if (!(deep[k] == z)) pts.push_back(deep[k]);
      }
      const double angle = enclosing_cone_angle(z, pts);
      audit.max_pair_angle = std::max(audit.max_pair_angle, angle);
      ++audit.pairs_checked;
      if (angle > 2.0 * theta1 + tol) {
        audit.cone_violations.push_back({n, i, z, angle});
      }
    }

    // (b) separating slabs around each edge.
    for (std::uint64_t i = 1; i <= caps; ++i) {
      const Segment edge = c.edge(n, i);
      const double len = length(edge);
      const double phi = std::atan2(edge.b.y - edge.a.y, edge.b.x - edge.a.x);
      const double cs = std::cos(phi), sn = std::sin(phi);

      std::vector<TriangularCap> triple;
      for (std::uint64_t k = (i >= 2 ? i - 1 : 1); k <= std::min(caps, i + 1); ++k) {
        triple.push_back(c.cap(n, k));
      }
      double xmin = 0.0, xmax = 0.0;
      bool first = true;
      auto take = [&](Point2 p) {
        const Point2 d = p - edge.a;
        const double x = cs * d.x + sn * d.y;
        if (first) { xmin = xmax = x; first = false; }
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
      };
      for (const auto& cap : triple) {
        take(cap.base_start);
        take(cap.base_end);
        take(cap.apex);
      }

      ++audit.rectangles_checked;
      for (const Point2& p : samples) {
        const Point2 d = p - edge.a;
        const double x = cs * d.x + sn * d.y;
        const double y = -sn * d.x + cs * d.y;
        if (x < xmin - tol * len || x > xmax + tol * len) continue;
        if (std::fabs(y) > 2.0 * len + tol * len) continue;
        bool inside = false;
        for (const auto& cap : triple) {
          if (point_in_triangle(p, cap.base_start, cap.base_end, cap.apex, 1e-9)) {
            inside = true;
            break;
          }
        }
        if (!inside) {
          audit.rectangle_violations.push_back({n, i, p, std::fabs(y) / len});
          break;  // one offending point per rectangle suffices for the report
        }
      }
    }
  }
  return audit;
}

// Open-set condition for the constant-angle pair: both images of the open
// cap stay inside it and their interiors are disjoint (separating-axis test
// with tolerance).
inline bool open_set_condition(double theta, double tol = 1e-9) {
  const Point2 a{0.0, 0.0}, b{1.0, 0.0};
  const Point2 apex = cap_apex(a, b, theta, 0);
  const Similitude s1 = cap_similitude(theta, 1);
  const Similitude s2 = cap_similitude(theta, 2);

  const std::vector<Point2> t0{a, b, apex};
  std::vector<Point2> img1, img2;
  for (Point2 p : t0) {
    img1.push_back(s1(p));
    img2.push_back(s2(p));
  }
  for (Point2 p : img1) {
    if (!point_in_triangle(p, a, b, apex, tol)) return false;
  }
  for (Point2 p : img2) {
    if (!point_in_triangle(p, a, b, apex, tol)) return false;
  }

  // Separating axis among the six edge normals with touching allowed.
  auto project = [](const std::vector<Point2>& tri, Point2 axis, double& lo, double& hi) {
    lo = hi = dot(tri[0], axis);
    for (std::size_t k = 1; k < 3; ++k) {
      const double v = dot(tri[k], axis);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  };
  for (const auto& tri : {img1, img2}) {
    for (std::size_t e = 0; e < 3; ++e) {
      const Point2 d = tri[(e + 1) % 3] - tri[e];
      const Point2 axis{-d.y, d.x};
      double lo1, hi1, lo2, hi2;
      project(img1, axis, lo1, hi1);
      project(img2, axis, lo2, hi2);
      if (std::min(hi1, hi2) - std::max(lo1, lo2) <= tol * norm(axis)) return true;
    }
  }
  return false;
}

struct DensityProfile {
  Point2 center{};
  std::vector<double> radii;
  std::vector<double> lengths;  // polyline length inside each ball
  std::vector<double> ratios;   // length / (2 rho)
};

inline DensityProfile density_profile(const SampleCloud& s, Point2 y,
                                      const std::vector<double>& ladder) {
  if (ladder.empty()) throw validation_error("density_profile: empty ladder");
  DensityProfile p;
  p.center = y;
  for (double rho : ladder) {
    if (rho < s.resolution_floor) {
      throw resolution_error("density_profile: radius below resolution floor");
    }
    double len = 0.0;
    for (const auto& chain : s.polylines) {
      for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        len += segment_length_in_disk({chain[k], chain[k + 1]}, y, rho);
      }
    }
    p.radii.push_back(rho);
    p.lengths.push_back(len);
    p.ratios.push_back(len / (2.0 * rho));
  }
  return p;
}

// The twelve-row classification: for members of each property class, is the
// dimension at most 1 (1), is the length measure weakly (2a) or strongly
// (2b) locally finite, and is the set rectifiable (3)? No-cells name the
// shipped witness family.
inline std::string classification_table() {
  return
      "# Classification of the twelve properties (j = 1)\n"
      "\n"
      "Questions: (1) dimension at most 1? (2a) weakly locally finite length?\n"
      "(2b) strongly locally finite length? (3) rectifiable?\n"
      "\n"
      "| property | (1) | (2a) | (2b) | (3) | no-cell witness |\n"
      "|---|---|---|---|---|---|\n"
      "| w,none,fixed | No | No | No | No | constant-cap set |\n"
      "| w,rho,fixed | No | No | No | No | constant-cap set |\n"
      "| w,rho0,fixed | No | No | No | No | constant-cap set |\n"
      "| w,none,fine | Yes | No | No | No | staged-spiral set |\n"
      "| w,rho,fine | Yes | No | No | No | staged-spiral set |\n"
      "| w,rho0,fine | Yes | Yes | Yes | Yes | - |\n"
      "| s,none,fixed | Yes | No | No | Yes | parabola pencil |\n"
      "| s,rho,fixed | Yes | Yes | No | Yes | line stack |\n"
      "| s,rho0,fixed | Yes | Yes | Yes | Yes | - |\n"
      "| s,none,fine | Yes | No | No | Yes | parabola pencil |\n"
      "| s,rho,fine | Yes | Yes | No | Yes | line stack |\n"
      "| s,rho0,fine | Yes | Yes | Yes | Yes | - |\n";
}

}  // namespace reiflab
