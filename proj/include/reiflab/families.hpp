#pragma once

// Builders for angle-sequence families with prescribed rotation behaviour.
// A "triple" sequence is block-constant: stage k holds angle a_k over a block
// of levels long enough that a random address contains, with probability at
// least the stage confidence, an alternating bit window of even length M_k
// with M_k * a_k past the spiral threshold. Alternating bits make every
// level of the window contribute the same rotation sign, so the window is a
// spiral witness regardless of its offset parity.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "reiflab/errors.hpp"
#include "reiflab/rotation.hpp"
#include "reiflab/theta.hpp"

namespace reiflab {

struct TripleSchedule {
  double theta1 = kPi / 25;        // first-stage angle, must lie in (0, pi/24)
  double angle_decay = 2.0;        // a_{k+1} = a_k / angle_decay
  double spiral_threshold = 2 * kPi;
  std::uint32_t stages = 3;
  std::vector<double> confidences;  // per stage; empty -> 1 - 2^-k
  std::uint64_t horizon_guard = 1000000;
};

struct TripleStage {
  double angle = 0.0;
  std::uint32_t window = 0;     // even M with window * angle > threshold
  std::string word;             // alternating pattern of length `window`
  std::uint32_t offset = 0;     // block covers levels (offset, horizon]
  std::uint32_t horizon = 0;
  double confidence = 0.0;
  ExactFraction measure;        // exact pattern measure at `horizon`
};

struct ThetaTriple {
  ThetaSequence theta;
  std::vector<TripleStage> stages;

  // Lower bound on the measure of addresses witnessing every stage; the
  // stage events read disjoint bit ranges, hence are independent.
  double witness_measure() const {
    double m = 1.0;
    for (const auto& s : stages) m *= s.measure.to_double();
    return m;
  }
};

namespace detail {

inline std::uint32_t even_window_for(double angle, double threshold) {
  const double need = threshold / angle;
  auto window = static_cast<std::uint32_t>(std::floor(need)) + 1;
  if (window % 2 == 1) ++window;
  return window;
}

inline std::string alternating_word(std::uint32_t length) {
  std::string w;
  w.reserve(length);
  for (std::uint32_t k = 0; k < length; ++k) w.push_back(k % 2 == 0 ? '1' : '0');
  return w;
}

}  // namespace detail

// Builds the staged sequence, or throws guard_error when a stage's horizon
// provably exceeds the guard (the per-window success chance is 2^-M, so a
// confidence c needs roughly c * 2^M positions; thresholds near a full turn
// force M >= 50 for admissible angles and no practical horizon suffices).
inline ThetaTriple make_theta_triple(const TripleSchedule& schedule = {}) {
  if (!(schedule.theta1 > 0.0 && schedule.theta1 < kMaxTheta)) {
    throw validation_error("make_theta_triple: theta1 outside (0, pi/24)");
  }
  if (!(schedule.angle_decay >= 1.0)) {
    throw validation_error("make_theta_triple: angle_decay must be >= 1");
  }
  if (schedule.stages == 0) throw validation_error("make_theta_triple: no stages");

  std::vector<TripleStage> stages;
  std::vector<double> angles;
  std::uint32_t offset = 0;
  double angle = schedule.theta1;
  for (std::uint32_t k = 0; k < schedule.stages; ++k) {
    TripleStage stage;
    stage.angle = angle;
    stage.window = detail::even_window_for(angle, schedule.spiral_threshold);
    stage.word = detail::alternating_word(stage.window);
    stage.offset = offset;
    stage.confidence = k < schedule.confidences.size()
                           ? schedule.confidences[k]
                           : 1.0 - std::ldexp(1.0, -static_cast<int>(k) - 1);
    if (!(stage.confidence > 0.0 && stage.confidence < 1.0)) {
      throw validation_error("make_theta_triple: confidences must lie in (0,1)");
    }
    stage.horizon =
        find_min_horizon(stage.offset, stage.word, stage.confidence, schedule.horizon_guard);

    PatternSpec spec;
    spec.offset_min = stage.offset;
    spec.word = DyadicAddress::from_string(stage.word).bits;
    spec.horizon = stage.horizon;
    stage.measure = pattern_measure(spec);

    for (std::uint32_t n = offset; n < stage.horizon; ++n) angles.push_back(angle);
    offset = stage.horizon;
    stages.push_back(std::move(stage));
    angle /= schedule.angle_decay;
  }
  return ThetaTriple{ThetaSequence::list(std::move(angles)), std::move(stages)};
}

// Desk-scale block-constant preset: harmonically decaying angles over short
// blocks. Deep alternating runs in an address still accumulate rotation
// across consecutive blocks, while the angles decay fast enough to keep
// shallow construction depths usable.
inline ThetaSequence triple_preset() {
  std::vector<ThetaBlock> blocks;
  for (std::uint32_t k = 1; k <= 8; ++k) {
    blocks.push_back({kPi / 25 / k, (k % 2 == 1) ? 4u : 3u});
  }
  return ThetaSequence::blocks(blocks);
}

}  // namespace reiflab
