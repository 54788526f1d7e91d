#pragma once

// Rotation calculus along dyadic addresses. Each level contributes a signed
// angle +-theta_n; the sign follows the index parity law (+ when n + i is
// odd), which the geometric mode re-derives from measured edge directions.
// Pattern sets of addresses are measured exactly by a KMP automaton DP with
// big-integer counts, and spiral witnesses are windows whose accumulated
// rotation exceeds a threshold in absolute value.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reiflab/address.hpp"
#include "reiflab/construct.hpp"
#include "reiflab/errors.hpp"
#include "reiflab/theta.hpp"

namespace reiflab {

using BigInt = boost::multiprecision::cpp_int;

// Index-parity sign law: +1 when n + i is odd, -1 when even.
inline int theta_sign(std::uint64_t n, std::uint64_t i) {
  return ((n + i) % 2 == 1) ? 1 : -1;
}

// Sign along an address at level n under the cylinder reading (i = prefix+1):
// n + i is odd iff n + x_n is even.
inline int theta_sign_at(const DyadicAddress& a, std::uint32_t n) {
  return ((n + a.bits[n - 1]) % 2 == 0) ? 1 : -1;
}

// Sign recovered from the construction: the rotation carrying the direction
// of edge (n, i) onto its parent edge (n-1, ceil(i/2)) has magnitude theta_n;
// report the sign of its canonical representative in (-pi/2, pi/2).
inline int theta_sign_geometric(const Construction& c, std::uint32_t n, std::uint64_t i) {
  if (n < 1) throw validation_error("theta_sign_geometric: levels start at 1");
  const Segment child = c.edge(n, i);
  const Segment parent = c.edge(n - 1, parent_index(i));
  const double child_phi = std::atan2(child.b.y - child.a.y, child.b.x - child.a.x);
  const double parent_phi = std::atan2(parent.b.y - parent.a.y, parent.b.x - parent.a.x);
  double delta = canonical_angle(parent_phi) - canonical_angle(child_phi);
  if (delta > kPi / 2) delta -= kPi;
  if (delta < -kPi / 2) delta += kPi;
  return delta > 0.0 ? 1 : -1;
}

// Signed per-level contributions s_n * theta_n for n = 1..|bits|.
inline std::vector<double> rotation_signs(const ThetaSequence& theta, const DyadicAddress& a) {
  std::vector<double> out(a.size());
  for (std::uint32_t n = 1; n <= a.size(); ++n) {
    out[n - 1] = theta_sign_at(a, n) * theta.at(n);
  }
  return out;
}

inline double rotation_sum(const ThetaSequence& theta, const DyadicAddress& a, std::uint32_t m1,
                           std::uint32_t m2) {
  if (m1 < 1 || m1 > m2 || m2 > a.size()) {
    throw validation_error("rotation_sum: window out of range");
  }
  double s = 0.0;
  for (std::uint32_t n = m1; n <= m2; ++n) s += theta_sign_at(a, n) * theta.at(n);
  return s;
}

// --- exact pattern measures ---

// Addresses whose first `horizon` bits contain `word` starting at a 0-based
// offset in [offset_min, horizon - |word|].
struct PatternSpec {
  std::uint32_t offset_min = 0;
  std::vector<std::uint8_t> word;
  std::uint32_t horizon = 0;

  static PatternSpec make(std::uint32_t offset_min, const std::string& word_bits,
                          std::uint32_t horizon) {
    PatternSpec s;
    s.offset_min = offset_min;
    s.word = DyadicAddress::from_string(word_bits).bits;
    s.horizon = horizon;
    s.validate();
    return s;
  }

  void validate() const {
    if (word.empty()) throw validation_error("PatternSpec: empty word");
    if (horizon < offset_min + word.size()) {
      throw validation_error("PatternSpec: horizon shorter than offset + word");
    }
  }
};

// count / 2^horizon with an exact big-integer numerator.
struct ExactFraction {
  BigInt count;
  std::uint32_t horizon = 0;

  double to_double() const {
    if (count == 0) return 0.0;
    const std::size_t bits = msb(count) + 1;
    if (bits <= 62) {
      return std::ldexp(static_cast<double>(count.convert_to<std::uint64_t>()),
                        -static_cast<int>(horizon));
    }
    const std::size_t shift = bits - 62;
    const std::uint64_t hi = BigInt(count >> shift).convert_to<std::uint64_t>();
    return std::ldexp(static_cast<double>(hi),
                      static_cast<int>(shift) - static_cast<int>(horizon));
  }

  // Exact comparison count / 2^horizon >= c; c is a dyadic rational already.
  bool at_least(double c) const {
    if (c <= 0.0) return true;
    if (c > 1.0) return false;
    int e = 0;
    const double mant = std::frexp(c, &e);                       // c = mant * 2^e
    const BigInt m53(static_cast<std::int64_t>(std::ldexp(mant, 53)));  // exact
    const std::int64_t sh = static_cast<std::int64_t>(e) - 53 + horizon;
    if (sh >= 0) return count >= (m53 << sh);
    return (count << (-sh)) >= m53;
  }
};

namespace detail {

inline std::vector<std::uint32_t> kmp_failure(const std::vector<std::uint8_t>& w) {
  std::vector<std::uint32_t> fail(w.size() + 1, 0);
  for (std::size_t k = 1; k < w.size(); ++k) {
    std::uint32_t s = fail[k];
    while (s > 0 && w[s] != w[k]) s = fail[s];
    fail[k + 1] = (w[s] == w[k]) ? s + 1 : 0;
  }
  return fail;
}

inline std::uint32_t kmp_advance(const std::vector<std::uint8_t>& w,
                                 const std::vector<std::uint32_t>& fail, std::uint32_t s,
                                 std::uint8_t b) {
  while (s > 0 && w[s] != b) s = fail[s];
  return (w[s] == b) ? s + 1 : 0;
}

// One DP step over bit position t (1-based). States 0..M-1 are KMP partial
// matches, `absorbed` strings already contain a counted occurrence. A full
// match ending at t counts iff its start t - M + 1 is past offset_min;
// uncounted matches collapse to their longest proper border and scanning
// continues (overlaps allowed).
struct PatternDp {
  explicit PatternDp(const PatternSpec& spec)
      : spec_(spec), fail_(kmp_failure(spec.word)), dp_(spec.word.size(), BigInt(0)) {
    dp_[0] = 1;
  }

  void step(std::uint32_t t) {
    const std::size_t m = spec_.word.size();
    std::vector<BigInt> next(m, BigInt(0));
    absorbed_ <<= 1;
    for (std::uint32_t s = 0; s < m; ++s) {
      if (dp_[s] == 0) continue;
      for (std::uint8_t b = 0; b < 2; ++b) {
        const std::uint32_t ns = kmp_advance(spec_.word, fail_, s, b);
        if (ns == m) {
          if (t >= spec_.offset_min + m) {
            absorbed_ += dp_[s];
          } else {
            next[fail_[m]] += dp_[s];
          }
        } else {
          next[ns] += dp_[s];
        }
      }
    }
    dp_.swap(next);
  }

  const BigInt& absorbed() const { return absorbed_; }

 private:
  PatternSpec spec_;
  std::vector<std::uint32_t> fail_;
  std::vector<BigInt> dp_;
  BigInt absorbed_ = 0;
};

}  // namespace detail

// Exact Lebesgue measure of the pattern set: (matching strings) / 2^horizon.
inline ExactFraction pattern_measure(const PatternSpec& spec) {
  spec.validate();
  detail::PatternDp dp(spec);
  for (std::uint32_t t = 1; t <= spec.horizon; ++t) dp.step(t);
  return {dp.absorbed(), spec.horizon};
}

// Smallest horizon N with pattern measure >= target. The union bound
// measure(N) <= (N - offset_min - M + 1) 2^-M gives an exact lower bound on
// any feasible N; when that bound already exceeds the guard the search fails
// fast instead of scanning.
inline std::uint32_t find_min_horizon(std::uint32_t offset_min, const std::string& word_bits,
                                      double target, std::uint64_t guard = 1000000) {
  if (!(target > 0.0 && target < 1.0)) {
    throw validation_error("find_min_horizon: target must lie in (0,1)");
  }
  const auto word = DyadicAddress::from_string(word_bits).bits;
  if (word.empty()) throw validation_error("find_min_horizon: empty word");
  const std::size_t m = word.size();

  if (m < 63) {
    const double per_position = std::ldexp(1.0, -static_cast<int>(m));
    const double need = target / per_position;  // union bound: need this many offsets
    if (static_cast<double>(offset_min) + static_cast<double>(m) - 1.0 + need >
        static_cast<double>(guard)) {
      throw guard_error("find_min_horizon: union bound puts N0 past the guard (" +
                        std::to_string(guard) + "); target " + std::to_string(target) +
                        " needs roughly 2^" + std::to_string(m) + " positions");
    }
  } else if (target >= 1e-9) {
    throw guard_error("find_min_horizon: word of length " + std::to_string(m) +
                      " cannot reach measurable targets within any exact-count horizon");
  }

  PatternSpec spec;
  spec.offset_min = offset_min;
  spec.word = word;
  spec.horizon = offset_min + static_cast<std::uint32_t>(m);
  detail::PatternDp dp(spec);
  for (std::uint32_t t = 1; t < spec.horizon; ++t) dp.step(t);
  for (std::uint32_t n = spec.horizon; n <= guard; ++n) {
    dp.step(n);
    ExactFraction f{dp.absorbed(), n};
    if (f.at_least(target)) return n;
  }
  throw guard_error("find_min_horizon: guard " + std::to_string(guard) + " exhausted");
}

// --- spiral witnesses ---

struct SpiralWitness {
  std::uint32_t m1 = 0;  // window [m1, m2], 1-based levels
  std::uint32_t m2 = 0;
  double sum = 0.0;      // signed rotation over the window
  double threshold = 0.0;
};

inline constexpr std::uint32_t kSpiralGuard = 10000;

// First window (smallest m2, then smallest m1) whose |rotation sum| exceeds
// the threshold; nullopt when none exists within the bit length.
inline std::optional<SpiralWitness> spiral_witness(const ThetaSequence& theta,
                                                   const DyadicAddress& a,
                                                   double threshold = 2 * kPi) {
  if (a.size() > kSpiralGuard) throw guard_error("spiral_witness: address guard exceeded");
  if (!(threshold > 0.0)) throw validation_error("spiral_witness: threshold must be positive");
  const std::vector<double> contrib = rotation_signs(theta, a);
  std::vector<double> prefix(contrib.size() + 1, 0.0);
  for (std::size_t k = 0; k < contrib.size(); ++k) prefix[k + 1] = prefix[k] + contrib[k];

  double lo = 0.0, hi = 0.0;  // min/max of prefix[0..m2-1]
  for (std::uint32_t m2 = 1; m2 <= contrib.size(); ++m2) {
    const double p = prefix[m2];
    if (std::max(p - lo, hi - p) > threshold) {
      for (std::uint32_t j = 0; j < m2; ++j) {
        const double s = p - prefix[j];
        if (std::fabs(s) > threshold) return SpiralWitness{j + 1, m2, s, threshold};
      }
    }
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  return std::nullopt;
}

// Every qualifying m2 with its smallest m1; supports finite-depth reporting
// of the deepest witnessed window without extrapolation.
inline std::vector<SpiralWitness> spiral_windows(const ThetaSequence& theta,
                                                 const DyadicAddress& a,
                                                 double threshold = 2 * kPi) {
  if (a.size() > kSpiralGuard) throw guard_error("spiral_windows: address guard exceeded");
  const std::vector<double> contrib = rotation_signs(theta, a);
  std::vector<double> prefix(contrib.size() + 1, 0.0);
  for (std::size_t k = 0; k < contrib.size(); ++k) prefix[k + 1] = prefix[k] + contrib[k];

  std::vector<SpiralWitness> out;
  double lo = 0.0, hi = 0.0;
  for (std::uint32_t m2 = 1; m2 <= contrib.size(); ++m2) {
    const double p = prefix[m2];
    if (std::max(p - lo, hi - p) > threshold) {
      for (std::uint32_t j = 0; j < m2; ++j) {
        const double s = p - prefix[j];
        if (std::fabs(s) > threshold) {
          out.push_back(SpiralWitness{j + 1, m2, s, threshold});
          break;
        }
      }
    }
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  return out;
}

}  // namespace reiflab
