#pragma once

// Dyadic parameter calculus: which cap a parameter lives in at each level,
// and the piecewise-linear curve maps F_n whose limit parametrizes the cap
// curve. Two index conventions coexist deliberately:
//   - index_of(n, x) for a real x uses the min rule at exact dyadics (both
//     neighboring caps contain the point; the smaller index wins);
//   - a DyadicAddress is a finite bit prefix read as a cylinder (the
//     expansion continues generically), so its index at level n is always
//     prefix + 1. The rotation calculus needs the cylinder reading: a
//     standalone alternating word keeps a constant rotation sign through its
//     last letter only under right-continuation.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "reiflab/construct.hpp"
#include "reiflab/errors.hpp"
#include "reiflab/geom.hpp"

namespace reiflab {

struct DyadicAddress {
  std::vector<std::uint8_t> bits;  // x_1 .. x_N, each 0 or 1; integer part 0

  static DyadicAddress from_string(const std::string& s) {
    DyadicAddress a;
    a.bits.reserve(s.size());
    for (char c : s) {
      if (c != '0' && c != '1') throw validation_error("DyadicAddress: bits must be 0/1");
      a.bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return a;
  }

  std::size_t size() const { return bits.size(); }

  // sum x_j 2^-j; exact for N <= 53, truncation is harmless beyond.
  double value() const {
    double v = 0.0;
    for (std::size_t j = bits.size(); j > 0; --j) v = 0.5 * (v + bits[j - 1]);
    return v;
  }

  // Integer with binary digits x_1..x_n. Needs n <= 62 to fit.
  std::uint64_t prefix_int(std::uint32_t n) const {
    if (n > bits.size()) throw validation_error("DyadicAddress: prefix past bit length");
    if (n > 62) throw validation_error("DyadicAddress: prefix too wide for an integer index");
    std::uint64_t p = 0;
    for (std::uint32_t j = 0; j < n; ++j) p = 2 * p + bits[j];
    return p;
  }

  // Cylinder index at level n: prefix + 1.
  std::uint64_t index_at(std::uint32_t n) const { return prefix_int(n) + 1; }

  // Parity of the cylinder index at level n; works at any depth. The index
  // p + 1 is even iff the n-th bit is 1.
  bool index_even_at(std::uint32_t n) const {
    if (n == 0 || n > bits.size()) throw validation_error("DyadicAddress: level out of range");
    return bits[n - 1] == 1;
  }
};

// Smallest i with (i-1) 2^-n <= x <= i 2^-n, for x in [0, 1].
inline std::uint64_t index_of(std::uint32_t n, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw validation_error("index_of: x must lie in [0,1]");
  if (n > 62) throw validation_error("index_of: level too deep for an integer index");
  const double scaled = std::ldexp(x, static_cast<int>(n));
  const double p = std::floor(scaled);
  if (scaled == p) {  // exact dyadic: both caps p and p+1 contain x; min rule
    return p < 1.0 ? 1 : static_cast<std::uint64_t>(p);
  }
  return static_cast<std::uint64_t>(p) + 1;
}

inline std::uint64_t parent_index(std::uint64_t i) {
  if (i < 1) throw validation_error("parent_index: indices are 1-based");
  return (i + 1) / 2;  // ceil(i/2)
}

// A root-to-leaf cap path, stored as the defining bit prefix. Level-n index
// follows the cylinder convention of DyadicAddress.
struct IndexPath {
  DyadicAddress address;

  std::uint32_t depth() const { return static_cast<std::uint32_t>(address.size()); }
  std::uint64_t index_at(std::uint32_t n) const { return address.index_at(n); }

  // Builds a path from explicit per-level indices (level 1..N), checking the
  // parent rule i_{n-1} = ceil(i_n / 2) at every step.
  static IndexPath from_indices(const std::vector<std::uint64_t>& idx) {
    if (idx.size() > 62) throw validation_error("IndexPath: too deep for integer indices");
    IndexPath p;
    std::uint64_t prev = 1;  // level-0 cap
    for (std::size_t n = 0; n < idx.size(); ++n) {
      const std::uint64_t i = idx[n];
      const std::uint64_t hi = std::uint64_t{1} << (n + 1);
      if (i < 1 || i > hi) throw validation_error("IndexPath: index out of range");
      if (parent_index(i) != prev) {
        throw validation_error("IndexPath: inconsistent parent at level " + std::to_string(n + 1));
      }
      p.address.bits.push_back(i % 2 == 0 ? 1 : 0);
      prev = i;
    }
    return p;
  }
};

// Exact dyadic interval [num 2^-level, (num+1) 2^-level].
struct DyadicInterval {
  std::uint64_t num = 0;
  std::uint32_t level = 0;

  double lo() const { return std::ldexp(static_cast<double>(num), -static_cast<int>(level)); }
  double hi() const { return std::ldexp(static_cast<double>(num) + 1.0, -static_cast<int>(level)); }
};

// Parameter interval mapped into the deepest cap of the path.
inline DyadicInterval preimage_interval(const IndexPath& path) {
  const std::uint32_t n = path.depth();
  if (n == 0) return {0, 0};
  return {path.address.prefix_int(n), n};
}

// Piecewise-linear level map: interpolates the level-n vertices in curve
// order; F_n(j 2^-n) is the j-th vertex exactly.
inline Point2 polyline_eval(const Construction& c, std::uint32_t n, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw validation_error("polyline_eval: x must lie in [0,1]");
  const std::vector<Point2>& v = c.vertices(n);
  const double scaled = std::ldexp(x, static_cast<int>(n));
  const double fl = std::floor(scaled);
  if (fl >= std::ldexp(1.0, static_cast<int>(n))) return v.back();
  const std::size_t j = static_cast<std::size_t>(fl);
  const double t = scaled - fl;
  if (t == 0.0) return v[j];
  return v[j] + t * (v[j + 1] - v[j]);
}

struct CurvePoint {
  Point2 point{};
  double error_bound = 0.0;  // diameter bound of the level-depth cap around the limit
};

// Limit-curve evaluation at the stored depth. The point F(x) lies in the
// level-depth cap containing x, whose diameter is the level edge length, so
// twice that length is a safe bound for |F(x) - F_depth(x)|.
inline CurvePoint curve_eval(const Construction& c, double x) {
  return {polyline_eval(c, c.depth(), x), 2.0 * edge_length(c.theta(), c.depth())};
}

}  // namespace reiflab
