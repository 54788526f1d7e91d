#pragma once

// Flatness defects and the twelve-property checker. A property id is a
// triple (alpha, beta, gamma): alpha picks weak (per-scale line) or strong
// (one line across scales) defects, beta picks the uniformity of the
// admissible radius (none / neighborhood / global), gamma is either a fixed
// tube ratio delta or "fine" (delta arbitrarily small, judged by the trend
// across the finest trusted octaves).
//
// All verdicts are at-resolution statements about a finite sample:
//  - ball radii never go below 4x the cloud's resolution floor (defect_at
//    refuses them), and property ladders stop at 8x;
//  - a rung failure within the sampling slack floor/(16*rho) + 0.002 is
//    "soft": it blocks a pass but is not reported as a counterwitness;
//  - an existential radius whose ladder is empty at this resolution makes
//    the center inconclusive rather than failing.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "reiflab/errors.hpp"
#include "reiflab/geom.hpp"
#include "reiflab/parallel.hpp"
#include "reiflab/sample.hpp"

namespace reiflab {

enum class Alpha { kWeak, kStrong };
enum class Beta { kNone, kRhoY, kRho0 };

struct PropertyId {
  Alpha alpha = Alpha::kWeak;
  Beta beta = Beta::kNone;
  bool fine = false;
  double delta = 0.1;  // tube ratio when not fine

  // "alpha,beta,gamma": alpha in {w, s}; beta in {none, rho, rho0};
  // gamma either "fine" or a fixed delta in (0,1), e.g. "w,rho,fine" or
  // "s,none,0.2".
  static PropertyId parse(const std::string& text) {
    const auto c1 = text.find(',');
    const auto c2 = text.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw validation_error("PropertyId: expected \"alpha,beta,gamma\", got \"" + text + "\"");
    }
    const std::string a = text.substr(0, c1);
    const std::string b = text.substr(c1 + 1, c2 - c1 - 1);
    const std::string g = text.substr(c2 + 1);

    PropertyId id;
    if (a == "w") {
      id.alpha = Alpha::kWeak;
    } else if (a == "s") {
      id.alpha = Alpha::kStrong;
    } else {
      throw validation_error("PropertyId: alpha must be w or s, got \"" + a + "\"");
    }
    if (b == "none") {
      id.beta = Beta::kNone;
    } else if (b == "rho") {
      id.beta = Beta::kRhoY;
    } else if (b == "rho0") {
      id.beta = Beta::kRho0;
    } else {
      throw validation_error("PropertyId: beta must be none, rho or rho0, got \"" + b + "\"");
    }
    if (g == "fine") {
      id.fine = true;
    } else {
      try {
        id.delta = std::stod(g);
      } catch (const std::exception&) {
        throw validation_error("PropertyId: gamma must be \"fine\" or a delta, got \"" + g + "\"");
      }
      if (!(id.delta > 0.0 && id.delta < 1.0)) {
        throw validation_error("PropertyId: fixed delta must lie in (0,1)");
      }
    }
    return id;
  }

  std::string to_string() const {
    std::string s = alpha == Alpha::kWeak ? "w" : "s";
    s += beta == Beta::kNone ? ",none" : (beta == Beta::kRhoY ? ",rho" : ",rho0");
    if (fine) {
      s += ",fine";
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, ",%g", delta);
      s += buf;
    }
    return s;
  }
};

struct DefectOptions {
  int scan_angles = 512;
  std::size_t max_ball_points = std::numeric_limits<std::size_t>::max();
};

struct DefectResult {
  double defect = 0.0;
  Line line;
  bool degenerate = false;  // empty ball intersection
  std::size_t ball_points = 0;
};

namespace detail {

// Cloud points sorted by distance to a fixed center: each ball query is a
// prefix, and nested ladders reuse one sort.
struct RadialIndex {
  Point2 center{};
  std::vector<Point2> pts;
  std::vector<double> d;

  static RadialIndex build(const SampleCloud& s, Point2 y) {
    RadialIndex idx;
    idx.center = y;
    const std::size_t n = s.points.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> dist_all(n);
    for (std::size_t k = 0; k < n; ++k) dist_all[k] = dist(s.points[k], y);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return dist_all[a] < dist_all[b]; });
    idx.pts.reserve(n);
    idx.d.reserve(n);
    for (std::size_t k : order) {
      idx.pts.push_back(s.points[k]);
      idx.d.push_back(dist_all[k]);
    }
    return idx;
  }

  std::size_t count_within(double rho) const {
    return static_cast<std::size_t>(std::lower_bound(d.begin(), d.end(), rho) - d.begin());
  }

  // Open-ball points, strided down to the cap when oversized.
  std::vector<Point2> ball(double rho, std::size_t cap) const {
    const std::size_t n = count_within(rho);
    std::vector<Point2> out;
    if (n <= cap) {
      out.assign(pts.begin(), pts.begin() + n);
    } else {
      const std::size_t stride = (n + cap - 1) / cap;
      out.reserve(n / stride + 1);
      for (std::size_t k = 0; k < n; k += stride) out.push_back(pts[k]);
    }
    return out;
  }
};

inline DefectResult defect_from_index(const RadialIndex& idx, double rho,
                                      const DefectOptions& opt) {
  DefectResult r;
  std::vector<Point2> ball = idx.ball(rho, opt.max_ball_points);
  r.ball_points = ball.size();
  if (ball.empty()) {
    r.degenerate = true;
    r.line = Line(idx.center, 0.0);
    return r;
  }
  const WidthFit fit = min_width_line_through(idx.center, ball, opt.scan_angles);
  r.defect = fit.width / rho;
  r.line = fit.line;
  return r;
}

}  // namespace detail

inline void require_resolved(double rho, const SampleCloud& s) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw validation_error("defect: radius must be positive and finite");
  }
  if (rho < 4.0 * s.resolution_floor - 1e-12) {
    throw resolution_error("defect: radius " + std::to_string(rho) +
                           " below 4x resolution floor " + std::to_string(s.resolution_floor));
  }
}

// One-sided flatness defect at (y, rho): the best line through y is fitted
// to the sample inside the open ball, and the defect is its width over rho.
// With two_sided, the gap from that line back to the set is added (an upper
// bound for the two-sided minimum, since the line is the one-sided fit).
inline DefectResult defect_at(const SampleCloud& s, Point2 y, double rho,
                              const DefectOptions& opt = {}, bool two_sided = false) {
  require_resolved(rho, s);
  const auto idx = detail::RadialIndex::build(s, y);
  DefectResult r = detail::defect_from_index(idx, rho, opt);
  if (two_sided && !r.degenerate) {
    const Point2 dir = r.line.direction();
    double worst = 0.0;
    for (int k = -16; k <= 16; ++k) {
      const Point2 z = y + (rho * k / 16.0) * dir;
      worst = std::max(worst, distance_to_set(s, z));
    }
    r.defect = std::max(r.defect, worst / rho);
  }
  return r;
}

namespace detail {

// Max over ladder rungs of width(prefix)/rho for a fixed direction; points
// are visited once in distance order.
inline double strong_width_at(const RadialIndex& idx, const std::vector<double>& ladder_asc,
                              const std::vector<std::size_t>& prefix, double phi,
                              std::size_t stride) {
  const double ns = -std::sin(phi), nc = std::cos(phi);
  double running = 0.0, worst = 0.0;
  std::size_t k = 0;
  for (std::size_t r = 0; r < ladder_asc.size(); ++r) {
    for (; k < prefix[r]; k += stride) {
      const Point2 d = idx.pts[k] - idx.center;
      running = std::max(running, std::fabs(d.x * ns + d.y * nc));
    }
    worst = std::max(worst, running / ladder_asc[r]);
  }
  return worst;
}

inline DefectResult strong_from_index(const RadialIndex& idx, std::vector<double> ladder,
                                      const DefectOptions& opt) {
  std::sort(ladder.begin(), ladder.end());
  std::vector<std::size_t> prefix(ladder.size());
  for (std::size_t r = 0; r < ladder.size(); ++r) prefix[r] = idx.count_within(ladder[r]);
  DefectResult res;
  res.ball_points = prefix.back();
  if (prefix.back() == 0) {
    res.degenerate = true;
    res.line = Line(idx.center, 0.0);
    return res;
  }
  std::size_t stride = 1;
  if (prefix.back() > opt.max_ball_points) {
    stride = (prefix.back() + opt.max_ball_points - 1) / opt.max_ball_points;
  }
  auto f = [&](double phi) { return strong_width_at(idx, ladder, prefix, phi, stride); };

  const int n = opt.scan_angles;
  const double step = kPi / n;
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) w[static_cast<std::size_t>(k)] = f(k * step);
  double best = std::numeric_limits<double>::infinity(), best_phi = 0.0;
  for (int k = 0; k < n; ++k) {
    const double wk = w[static_cast<std::size_t>(k)];
    if (wk <= w[static_cast<std::size_t>((k + n - 1) % n)] &&
        wk <= w[static_cast<std::size_t>((k + 1) % n)]) {
      const double phi = detail::golden_min(f, (k - 1) * step, (k + 1) * step, 1e-12);
      const double v = f(phi);
      if (v < best) {
        best = v;
        best_phi = canonical_angle(phi);
      }
    }
  }
  res.defect = best;
  res.line = Line(idx.center, best_phi);
  return res;
}

}  // namespace detail

// Strong defect: one line through y must fit at every rung of the ladder;
// the value is min over lines of max over rungs of width/rho.
inline DefectResult strong_defect(const SampleCloud& s, Point2 y,
                                  const std::vector<double>& ladder,
                                  const DefectOptions& opt = {}) {
  if (ladder.empty()) throw validation_error("strong_defect: empty ladder");
  for (double rho : ladder) require_resolved(rho, s);
  const auto idx = detail::RadialIndex::build(s, y);
  return detail::strong_from_index(idx, ladder, opt);
}

struct DefectProfile {
  Point2 center{};
  std::vector<double> radii;        // as given, typically descending
  std::vector<double> weak;         // per-rung weak defect
  std::vector<double> direction;    // per-rung best-fit direction in [0, pi)
  std::vector<bool> degenerate;     // empty-ball rungs
  double strong = 0.0;              // one-line defect across the ladder
  double max_defect = 0.0;
  double trend_slope = 0.0;         // least-squares slope of log defect vs log rho
  double direction_tv = 0.0;        // total variation of direction on the pi-circle
};

inline DefectProfile defect_profile(const SampleCloud& s, Point2 y,
                                    const std::vector<double>& ladder,
                                    const DefectOptions& opt = {}) {
  if (ladder.empty()) throw validation_error("defect_profile: empty ladder");
  for (double rho : ladder) require_resolved(rho, s);
  const auto idx = detail::RadialIndex::build(s, y);

  DefectProfile p;
  p.center = y;
  p.radii = ladder;
  for (double rho : ladder) {
    const DefectResult r = detail::defect_from_index(idx, rho, opt);
    p.weak.push_back(r.defect);
    p.direction.push_back(r.line.angle());
    p.degenerate.push_back(r.degenerate);
    p.max_defect = std::max(p.max_defect, r.defect);
  }
  p.strong = detail::strong_from_index(idx, ladder, opt).defect;

  // Slope of log defect vs log rho over non-degenerate positive rungs.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    if (p.degenerate[k] || p.weak[k] <= 0.0) continue;
    const double lx = std::log(ladder[k]), ly = std::log(p.weak[k]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++m;
  }
  if (m >= 2) {
    const double den = m * sxx - sx * sx;
    if (den > 0) p.trend_slope = (m * sxy - sx * sy) / den;
  }

  bool have_prev = false;
  double prev = 0.0;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    if (p.degenerate[k]) continue;
    if (have_prev) p.direction_tv += direction_distance(prev, p.direction[k]);
    prev = p.direction[k];
    have_prev = true;
  }
  return p;
}

// --- property checking ---

enum class Verdict { kHoldsAtResolution, kFails, kInconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kHoldsAtResolution: return "holds-at-resolution";
    case Verdict::kFails: return "fails";
    default: return "inconclusive";
  }
}

struct Witness {
  Point2 y{};
  double rho = 0.0;
  double defect = 0.0;
  double line_angle = 0.0;
};

struct CheckParams {
  double rho0 = 0.0;             // required iff beta == rho0
  double end_floor = 0.05;       // fine: ceiling for the finest-rung defect
  std::size_t budget = 48;       // sampled centers
  std::size_t neighbor_budget = 4;
  std::uint64_t seed = 2026;
  double pass_fraction = 0.5;    // conclusive passes needed for a holds verdict
  std::size_t max_candidates = 16;
  std::size_t max_rungs = 12;
  DefectOptions defect{256, 3000};
};

struct PropertyReport {
  PropertyId id;
  Verdict verdict = Verdict::kInconclusive;
  double delta = 0.0;            // fixed delta, or the fine end floor
  std::vector<double> ladder;    // rungs of the first conclusive pass
  std::vector<Witness> witnesses;
  std::uint64_t seed = 0;
  double resolution_floor = 0.0;
  std::size_t centers_pass = 0;
  std::size_t centers_fail = 0;
  std::size_t centers_inconclusive = 0;
  std::string caveats;
};

namespace detail {

// Sampling slack for a rung: point spacing is floor/8, a missed extreme
// point costs up to half a spacing of width, doubled for safety, plus a
// small absolute term for structure below the floor.
inline double rung_slack(double floor, double rho) { return floor / (16.0 * rho) + 0.002; }

enum class RungGrade { kPass, kSoft, kHard };

inline RungGrade grade(double defect, double threshold, double slack) {
  if (defect <= threshold + 1e-9) return RungGrade::kPass;
  if (defect <= threshold + slack + 1e-9) return RungGrade::kSoft;
  return RungGrade::kHard;
}

enum class CandidateOutcome { kPass, kSoft, kHard, kEmpty };

struct CandidateResult {
  CandidateOutcome outcome = CandidateOutcome::kEmpty;
  Witness worst;                 // meaningful for kHard
  std::vector<double> rungs;
  double worst_defect = 0.0;
  double line_angle = 0.0;
};

struct CenterContext {
  const SampleCloud* cloud;
  const PropertyId* id;
  const CheckParams* params;
  double floor;
  double rung_min;               // ladders stop at 8x floor
};

inline std::vector<double> make_ladder(double rho_y, const CenterContext& cx) {
  std::vector<double> ladder;
  double rho = rho_y;
  while (rho >= cx.rung_min && ladder.size() < cx.params->max_rungs) {
    ladder.push_back(rho);
    rho *= 0.5;
  }
  return ladder;
}

// Tail statistic for fine grading: the worse of the two finest rungs. Rung
// defects oscillate as corners enter and leave the ball, so requiring
// monotone decrease is brittle; what "for every delta there is a scale"
// renders to at finite depth is that the finest probed octaves sit below the
// ceiling.
inline double fine_tail(const std::vector<double>& defects) {
  const std::size_t k = defects.size();
  return std::max(defects[k - 2], defects[k - 1]);
}

// Evaluates one center (or neighbor) against one candidate radius using a
// prebuilt radial index centered there.
inline CandidateResult evaluate_ladder(const RadialIndex& idx, double rho_y,
                                       const CenterContext& cx) {
  CandidateResult res;
  res.rungs = make_ladder(rho_y, cx);
  if (res.rungs.empty()) return res;  // kEmpty: unresolvable at this floor

  const PropertyId& id = *cx.id;
  const CheckParams& par = *cx.params;

  std::vector<double> values;  // per-rung defect, descending rho
  double line_angle = 0.0;
  if (id.alpha == Alpha::kWeak && !id.fine) {
    // Early-abort path: a hard rung kills the candidate immediately.
    res.outcome = CandidateOutcome::kPass;
    for (double rho : res.rungs) {
      const DefectResult r = defect_from_index(idx, rho, par.defect);
      res.worst_defect = std::max(res.worst_defect, r.defect);
      line_angle = r.line.angle();
      switch (grade(r.defect, id.delta, rung_slack(cx.floor, rho))) {
        case RungGrade::kPass:
          break;
        case RungGrade::kSoft:
          if (res.outcome == CandidateOutcome::kPass) res.outcome = CandidateOutcome::kSoft;
          break;
        case RungGrade::kHard:
          res.outcome = CandidateOutcome::kHard;
          res.worst = {idx.center, rho, r.defect, r.line.angle()};
          return res;
      }
    }
    res.line_angle = line_angle;
    return res;
  }

  if (id.alpha == Alpha::kWeak) {
    for (double rho : res.rungs) {
      const DefectResult r = defect_from_index(idx, rho, par.defect);
      values.push_back(r.defect);
      line_angle = r.line.angle();
    }
  } else {
    // Strong: one line across the rungs. The per-rung values for the fine
    // trend are widths against that fixed line.
    const DefectResult sr = strong_from_index(idx, res.rungs, par.defect);
    line_angle = sr.line.angle();
    if (!id.fine) {
      res.worst_defect = sr.defect;
      res.line_angle = line_angle;
      const double slack = rung_slack(cx.floor, res.rungs.back());
      switch (grade(sr.defect, id.delta, slack)) {
        case RungGrade::kPass: res.outcome = CandidateOutcome::kPass; break;
        case RungGrade::kSoft: res.outcome = CandidateOutcome::kSoft; break;
        case RungGrade::kHard:
          res.outcome = CandidateOutcome::kHard;
          res.worst = {idx.center, res.rungs.back(), sr.defect, line_angle};
          break;
      }
      return res;
    }
    for (double rho : res.rungs) {
      double lo = 0.0, hi = 0.0;
      const double ns = -std::sin(line_angle), nc = std::cos(line_angle);
      const std::size_t cnt = idx.count_within(rho);
      for (std::size_t k = 0; k < cnt; ++k) {
        const Point2 d = idx.pts[k] - idx.center;
        const double v = d.x * ns + d.y * nc;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      values.push_back((hi - lo) / rho);
    }
  }

  // Fine verdicts come from the tail of the ladder.
  for (double v : values) res.worst_defect = std::max(res.worst_defect, v);
  res.line_angle = line_angle;
  if (values.size() < 3) {
    res.outcome = CandidateOutcome::kSoft;  // too short to call either way
    return res;
  }
  const double tail = fine_tail(values);
  const double slack = rung_slack(cx.floor, res.rungs.back());
  if (tail <= par.end_floor + 1e-9) {
    res.outcome = CandidateOutcome::kPass;
  } else if (tail > par.end_floor + slack + 1e-9) {
    res.outcome = CandidateOutcome::kHard;
    res.worst = {idx.center, res.rungs.back(), tail, line_angle};
  } else {
    res.outcome = CandidateOutcome::kSoft;  // stalled inside the slack band
  }
  return res;
}

enum class CenterKind { kPass, kFail, kInconclusive };

struct CenterVerdict {
  CenterKind kind = CenterKind::kInconclusive;
  Witness witness;             // passing witness or counterwitness
  std::vector<double> ladder;  // rungs of the passing candidate
};

// One center: candidate descent, own ladder, neighbor sweep. Pure given the
// cloud, hence safe to run concurrently across centers.
inline CenterVerdict evaluate_center(const SampleCloud& s, Point2 y, const CenterContext& cx,
                                     double diam) {
  const PropertyId& id = *cx.id;
  const CheckParams& params = *cx.params;
  const auto idx = RadialIndex::build(s, y);

  // Candidate radii, descending. The bool marks informed candidates (the
  // nearest-foreign-chain radius, or the user's rho0): when such a radius is
  // too small to probe, structure exists below the resolution and a fail
  // verdict would overreach. Dyadic candidates carry no such information —
  // their ladders are suffixes of larger dyadic ladders.
  std::vector<std::pair<double, bool>> candidates;
  if (id.beta == Beta::kRho0) {
    candidates.emplace_back(params.rho0, true);
  } else {
    for (double r = diam / 2; r >= cx.rung_min && candidates.size() < params.max_candidates;
         r *= 0.5) {
      candidates.emplace_back(r, false);
    }
    // Informed candidate: a third of the distance to the nearest chain not
    // passing through y.
    double d_other = std::numeric_limits<double>::infinity();
    for (const auto& chain : s.polylines) {
      double dc = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        dc = std::min(dc, point_segment_distance(y, {chain[k], chain[k + 1]}));
      }
      if (dc > cx.floor / 8.0) d_other = std::min(d_other, dc);
    }
    if (std::isfinite(d_other)) candidates.emplace_back(d_other / 3.0, true);
    std::sort(candidates.rbegin(), candidates.rend());
  }

  bool passed = false, saw_soft = false, saw_empty = false;
  Witness worst{};
  double worst_defect = -1.0;
  CenterVerdict out;

  for (auto [rho_y, informed] : candidates) {
    // A fine trend needs three rungs; shorter candidates are either
    // redundant (dyadic) or evidence of unresolved structure (informed).
    if (id.fine && make_ladder(rho_y, cx).size() < 3) {
      if (informed) saw_empty = true;
      continue;
    }
    CandidateResult own = evaluate_ladder(idx, rho_y, cx);
    if (own.outcome == CandidateOutcome::kEmpty) {
      saw_empty = true;
      continue;
    }
    if (own.outcome == CandidateOutcome::kHard) {
      if (own.worst.defect > worst_defect) {
        worst_defect = own.worst.defect;
        worst = own.worst;
      }
      continue;
    }
    if (own.outcome == CandidateOutcome::kSoft) {
      saw_soft = true;
      continue;
    }

    // Own rungs pass; for beta = rho the same radius must work for
    // neighbors inside B_rho_y(y) as well.
    bool neighbors_ok = true;
    if (id.beta == Beta::kRhoY && params.neighbor_budget > 0) {
      const std::size_t within = idx.count_within(rho_y);
      const std::size_t stride = std::max<std::size_t>(1, within / (params.neighbor_budget + 1));
      std::size_t taken = 0;
      for (std::size_t k = stride; k < within && neighbors_ok && taken < params.neighbor_budget;
           k += stride, ++taken) {
        const Point2 x = idx.pts[k];
        if (dist(x, y) <= cx.floor / 8.0) continue;
        const auto nidx = RadialIndex::build(s, x);
        const CandidateResult nr = evaluate_ladder(nidx, rho_y, cx);
        if (nr.outcome == CandidateOutcome::kHard) {
          neighbors_ok = false;
          if (nr.worst.defect > worst_defect) {
            worst_defect = nr.worst.defect;
            worst = nr.worst;
          }
        } else if (nr.outcome != CandidateOutcome::kPass) {
          neighbors_ok = false;
          saw_soft = true;
        }
      }
    }
    if (!neighbors_ok) continue;

    passed = true;
    out.ladder = own.rungs;
    out.witness = {y, rho_y, own.worst_defect, own.line_angle};
    break;  // largest passing candidate recorded
  }

  if (passed) {
    out.kind = CenterKind::kPass;
  } else if (worst_defect >= 0.0 && !saw_soft && !saw_empty) {
    out.kind = CenterKind::kFail;
    out.witness = worst;
  } else {
    out.kind = CenterKind::kInconclusive;
  }
  return out;
}

}  // namespace detail

// Evaluates the property over a seeded sample of centers. Per center:
// candidate radii descend from the cloud diameter, plus an informed
// candidate at a third of the distance to the nearest other polyline (the
// scale below which no foreign branch can enter the ball). beta = none
// searches candidates existentially, beta = rho sweeps neighbors inside the
// passing radius, beta = rho0 pins every center to the given global radius.
// Centers are drawn up front from the seeded generator and evaluated
// independently (possibly concurrently); the reduce runs in draw order, so
// reports do not depend on the worker count.
inline PropertyReport check_property(const SampleCloud& s, const PropertyId& id,
                                     const CheckParams& params = {}) {
  if (s.points.empty()) throw validation_error("check_property: empty cloud");
  if (id.beta == Beta::kRho0) {
    if (!(params.rho0 > 0.0)) throw validation_error("check_property: rho0 required");
  } else if (params.rho0 != 0.0) {
    throw validation_error("check_property: rho0 given but beta is not rho0");
  }
  if (!id.fine && !(id.delta > 0.0 && id.delta < 1.0)) {
    throw validation_error("check_property: fixed delta outside (0,1)");
  }

  detail::CenterContext cx;
  cx.cloud = &s;
  cx.id = &id;
  cx.params = &params;
  cx.floor = s.resolution_floor;
  cx.rung_min = 8.0 * s.resolution_floor;

  PropertyReport report;
  report.id = id;
  report.delta = id.fine ? params.end_floor : id.delta;
  report.seed = params.seed;
  report.resolution_floor = s.resolution_floor;

  // Cloud diameter from the bounding box (adequate for candidate tops).
  Point2 lo = s.points.front(), hi = lo;
  for (const Point2& p : s.points) {
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
  }
  const double diam = std::max(dist(lo, hi), 16.0 * s.resolution_floor);

  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<std::size_t> pick(0, s.points.size() - 1);
  const std::size_t budget = std::min(params.budget, s.points.size());

  std::vector<Point2> centers;
  centers.reserve(budget);
  for (std::size_t c = 0; c < budget; ++c) centers.push_back(s.points[pick(rng)]);

  std::vector<detail::CenterVerdict> verdicts(budget);
  parallel_for(budget,
               [&](std::size_t c) { verdicts[c] = detail::evaluate_center(s, centers[c], cx, diam); });

  for (std::size_t c = 0; c < budget; ++c) {
    const detail::CenterVerdict& v = verdicts[c];
    switch (v.kind) {
      case detail::CenterKind::kPass:
        ++report.centers_pass;
        if (report.ladder.empty()) report.ladder = v.ladder;
        if (report.witnesses.size() < 8 && report.centers_fail == 0) {
          report.witnesses.push_back(v.witness);
        }
        break;
      case detail::CenterKind::kFail:
        if (report.centers_fail == 0) report.witnesses.clear();  // keep counterwitnesses only
        ++report.centers_fail;
        if (report.witnesses.size() < 8) report.witnesses.push_back(v.witness);
        break;
      case detail::CenterKind::kInconclusive:
        ++report.centers_inconclusive;
        break;
    }
  }

  const std::size_t evaluated =
      report.centers_pass + report.centers_fail + report.centers_inconclusive;
  if (report.centers_fail > 0) {
    report.verdict = Verdict::kFails;
  } else if (evaluated > 0 &&
             static_cast<double>(report.centers_pass) >=
                 params.pass_fraction * static_cast<double>(evaluated) &&
             report.centers_pass > 0) {
    report.verdict = Verdict::kHoldsAtResolution;
  } else {
    report.verdict = Verdict::kInconclusive;
  }

  report.caveats = "finite-resolution verdict; ladders span [" +
                   std::to_string(cx.rung_min) + ", cloud diameter]; floor " +
                   std::to_string(s.resolution_floor);
  if (id.alpha == Alpha::kStrong && id.beta == Beta::kRhoY) {
    report.caveats += "; neighbor sweep restricted to sample points";
  }
  return report;
}

}  // namespace reiflab
