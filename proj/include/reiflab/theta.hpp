#pragma once

// Angle sequences driving the cap constructions. A valid sequence satisfies
// 0 < theta_n <= theta_1 < pi/24 and is non-increasing; the three kinds are
// constant, explicit list, and block-constant runs. Finite kinds extend past
// their data with the last value, so theta(n) is total.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "reiflab/errors.hpp"
#include "reiflab/geom.hpp"

namespace reiflab {

inline constexpr double kMaxTheta = kPi / 24.0;

enum class ThetaKind { kConstant, kList, kBlocks };

struct ThetaBlock {
  double angle = 0.0;
  std::uint64_t length = 0;  // number of levels the angle persists, >= 1
};

class ThetaSequence {
 public:
  static ThetaSequence constant(double theta1) {
    ThetaSequence t;
    t.kind_ = ThetaKind::kConstant;
    t.theta1_ = theta1;
    t.validate();
    return t;
  }

  static ThetaSequence list(std::vector<double> values) {
    if (values.empty()) throw validation_error("ThetaSequence: empty value list");
    ThetaSequence t;
    t.kind_ = ThetaKind::kList;
    t.theta1_ = values.front();
    t.values_ = std::move(values);
    t.validate();
    return t;
  }

  static ThetaSequence blocks(std::vector<ThetaBlock> blocks) {
    if (blocks.empty()) throw validation_error("ThetaSequence: empty block list");
    ThetaSequence t;
    t.kind_ = ThetaKind::kBlocks;
    t.theta1_ = blocks.front().angle;
    t.blocks_ = std::move(blocks);
    t.validate();
    return t;
  }

  ThetaKind kind() const { return kind_; }
  double theta1() const { return theta1_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<ThetaBlock>& block_list() const { return blocks_; }

  // theta_n, 1-based. Past the explicit data the last value extends forever,
  // which keeps the sequence total and the family invariant intact.
  double at(std::uint64_t n) const {
    if (n == 0) throw validation_error("ThetaSequence::at: levels are 1-based");
    switch (kind_) {
      case ThetaKind::kConstant:
        return theta1_;
      case ThetaKind::kList:
        return n <= values_.size() ? values_[n - 1] : values_.back();
      case ThetaKind::kBlocks: {
        std::uint64_t consumed = 0;
        for (const ThetaBlock& b : blocks_) {
          consumed += b.length;
          if (n <= consumed) return b.angle;
        }
        return blocks_.back().angle;
      }
    }
    throw validation_error("ThetaSequence::at: bad kind");
  }

 private:
  ThetaSequence() = default;

  void validate() const {
    auto check_angle = [](double a) {
      if (!(a > 0.0) || !(a < kMaxTheta) || !std::isfinite(a)) {
        throw validation_error(
            "ThetaSequence: angles must lie in (0, pi/24); got " + std::to_string(a));
      }
    };
    switch (kind_) {
      case ThetaKind::kConstant:
        check_angle(theta1_);
        break;
      case ThetaKind::kList: {
        double prev = values_.front();
        check_angle(prev);
        for (double v : values_) {
          check_angle(v);
          if (v > prev) throw validation_error("ThetaSequence: values must be non-increasing");
          prev = v;
        }
        break;
      }
      case ThetaKind::kBlocks: {
        double prev = blocks_.front().angle;
        for (const ThetaBlock& b : blocks_) {
          check_angle(b.angle);
          if (b.length == 0) throw validation_error("ThetaSequence: zero-length block");
          if (b.angle > prev) throw validation_error("ThetaSequence: blocks must be non-increasing");
          prev = b.angle;
        }
        break;
      }
    }
  }

  ThetaKind kind_ = ThetaKind::kConstant;
  double theta1_ = 0.0;
  std::vector<double> values_;
  std::vector<ThetaBlock> blocks_;
};

// Finite-depth family evidence. Every field describes the probed prefix only;
// nothing here claims anything about the infinite tail.
struct ThetaClassification {
  bool constant_prefix = false;      // every probed angle equals theta_1 exactly
  double theta_at_probe = 0.0;       // vanishing-angle evidence
  double partial_product = 1.0;      // prod_{i<=probe} sec(theta_i)
  bool product_exceeds = false;      // partial_product > divergence_threshold
  std::uint64_t first_doubling = 0;  // smallest n <= probe with product > 2, else 0
};

inline ThetaClassification classify_theta(const ThetaSequence& theta, std::uint64_t probe_depth,
                                          double divergence_threshold) {
  if (probe_depth == 0) throw validation_error("classify_theta: probe_depth must be >= 1");
  ThetaClassification out;
  out.constant_prefix = true;
  double log_product = 0.0;
  for (std::uint64_t n = 1; n <= probe_depth; ++n) {
    const double t = theta.at(n);
    if (t != theta.theta1()) out.constant_prefix = false;
    log_product -= std::log(std::cos(t));
    if (out.first_doubling == 0 && log_product > std::log(2.0)) out.first_doubling = n;
  }
  out.theta_at_probe = theta.at(probe_depth);
  out.partial_product = std::exp(log_product);
  out.product_exceeds = out.partial_product > divergence_threshold;
  return out;
}

}  // namespace reiflab
