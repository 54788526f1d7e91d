#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>

#include "reiflab/rotation.hpp"

using namespace reiflab;

namespace {

// Exhaustive pattern-set counting for small horizons: the frozen oracle for
// the automaton DP.
std::uint64_t brute_count(const PatternSpec& spec) {
  const std::uint32_t n = spec.horizon;
  const std::size_t m = spec.word.size();
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    bool hit = false;
    for (std::uint32_t off = spec.offset_min; off + m <= n && !hit; ++off) {
      bool match = true;
      for (std::size_t k = 0; k < m && match; ++k) {
        match = (((code >> (n - 1 - (off + k))) & 1) == spec.word[k]);
      }
      hit = match;
    }
    if (hit) ++count;
  }
  return count;
}

std::string random_word(std::mt19937_64& rng, std::uint32_t len) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::string w;
  for (std::uint32_t k = 0; k < len; ++k) w.push_back(bit(rng) ? '1' : '0');
  return w;
}

}  // namespace

TEST_CASE("index-parity sign law", "[rotation]") {
  CHECK(theta_sign(1, 1) == -1);  // n + i even
  CHECK(theta_sign(1, 2) == 1);
  CHECK(theta_sign(2, 1) == 1);
  CHECK(theta_sign(2, 2) == -1);
  CHECK(theta_sign(7, 12) == 1);
}

TEST_CASE("cylinder signs match the index law along addresses", "[rotation]") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int it = 0; it < 60; ++it) {
    DyadicAddress a;
    for (int k = 0; k < 20; ++k) a.bits.push_back(static_cast<std::uint8_t>(bit(rng)));
    for (std::uint32_t n = 1; n <= a.size(); ++n) {
      CHECK(theta_sign_at(a, n) == theta_sign(n, a.index_at(n)));
    }
  }
}

TEST_CASE("geometric rotation sign equals the parity formula", "[rotation]") {
  for (double th : {0.05, 0.12}) {
    Construction c(ThetaSequence::constant(th), 9);
    for (std::uint32_t n = 1; n <= 9; ++n) {
      for (std::uint64_t i = 1; i <= c.edge_count(n); ++i) {
        REQUIRE(theta_sign_geometric(c, n, i) == theta_sign(n, i));
      }
    }
  }
  Construction c(ThetaSequence::constant(0.1), 3);
  CHECK_THROWS_AS(theta_sign_geometric(c, 0, 1), validation_error);
}

TEST_CASE("rotation sums over alternating windows accumulate M theta", "[rotation]") {
  const auto theta = ThetaSequence::constant(0.12);
  DyadicAddress a;
  for (int k = 0; k < 20; ++k) a.bits.push_back(k % 2 == 0 ? 1 : 0);  // "1010..."
  // Bit 1 at odd levels, 0 at even: n + x_n is even throughout, all signs +1.
  const auto contrib = rotation_signs(theta, a);
  REQUIRE(contrib.size() == 20);
  for (double v : contrib) CHECK(v == Catch::Approx(0.12).margin(1e-15));
  CHECK(rotation_sum(theta, a, 1, 20) == Catch::Approx(20 * 0.12).epsilon(1e-14));
  CHECK(rotation_sum(theta, a, 5, 8) == Catch::Approx(4 * 0.12).epsilon(1e-14));
  CHECK_THROWS_AS(rotation_sum(theta, a, 0, 5), validation_error);
  CHECK_THROWS_AS(rotation_sum(theta, a, 3, 2), validation_error);
  CHECK_THROWS_AS(rotation_sum(theta, a, 1, 21), validation_error);
}

TEST_CASE("pattern_measure agrees with exhaustive enumeration", "[rotation]") {
  std::mt19937_64 rng(20260814);
  std::uniform_int_distribution<std::uint32_t> wlen(1, 4), off(0, 2), hor(8, 14);
  for (int it = 0; it < 120; ++it) {
    const std::string word = random_word(rng, wlen(rng));
    const std::uint32_t horizon = hor(rng);
    const std::uint32_t offset = std::min(off(rng), horizon - static_cast<std::uint32_t>(word.size()));
    const PatternSpec spec = PatternSpec::make(offset, word, horizon);
    const ExactFraction f = pattern_measure(spec);
    REQUIRE(f.count == BigInt(brute_count(spec)));
    CHECK(f.horizon == horizon);
  }
}

TEST_CASE("pattern measures are monotone in the horizon", "[rotation]") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 20; ++it) {
    const std::string word = random_word(rng, 3);
    double prev = 0.0;
    for (std::uint32_t n = 4; n <= 16; ++n) {
      const double m = pattern_measure(PatternSpec::make(0, word, n)).to_double();
      CHECK(m >= prev - 1e-15);
      prev = m;
    }
  }
}

TEST_CASE("pinned single-bit pattern values", "[rotation]") {
  const ExactFraction half = pattern_measure(PatternSpec::make(0, "1", 1));
  CHECK(half.count == 1);
  CHECK(half.horizon == 1);
  CHECK(half.to_double() == 0.5);
  CHECK(half.at_least(0.5));
  CHECK(half.at_least(0.25));
  CHECK_FALSE(half.at_least(0.75));
  CHECK(find_min_horizon(0, "1", 0.5) == 1);
}

TEST_CASE("pinned horizon for the alternating word 1010", "[rotation]") {
  // Exhaustive oracle: 16972/32768 >= 1/2 at N = 15, 7996/16384 < 1/2 at 14.
  CHECK(find_min_horizon(0, "1010", 0.5) == 15);
  const ExactFraction f15 = pattern_measure(PatternSpec::make(0, "1010", 15));
  CHECK(f15.count == 16972);
  const ExactFraction f14 = pattern_measure(PatternSpec::make(0, "1010", 14));
  CHECK(f14.count == 7996);
  CHECK_FALSE(f14.at_least(0.5));
}

TEST_CASE("exact fractions handle counts past 64 bits", "[rotation]") {
  ExactFraction f{BigInt(1) << 99, 100};
  CHECK(f.to_double() == 0.5);
  CHECK(f.at_least(0.5));
  CHECK_FALSE(f.at_least(0.5000001));
  ExactFraction zero{0, 30};
  CHECK(zero.to_double() == 0.0);
  CHECK(zero.at_least(0.0));
}

TEST_CASE("find_min_horizon guards infeasible targets", "[rotation]") {
  // 25-bit word at confidence 1/2: the union bound needs ~2^24 positions.
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(find_min_horizon(0, random_word(rng, 25), 0.5, 1000000), guard_error);
  CHECK_THROWS_AS(find_min_horizon(0, "1", 0.0), validation_error);
  CHECK_THROWS_AS(find_min_horizon(0, "1", 1.0), validation_error);
  CHECK_THROWS_AS(find_min_horizon(0, "", 0.5), validation_error);
}

TEST_CASE("spiral witness on a long aligned window", "[rotation]") {
  const auto theta = ThetaSequence::constant(0.12);
  DyadicAddress a;
  for (int k = 0; k < 60; ++k) a.bits.push_back(k % 2 == 0 ? 1 : 0);
  const auto w = spiral_witness(theta, a);
  REQUIRE(w.has_value());
  // 2 pi / 0.12 = 52.36: the first qualifying window is [1, 53].
  CHECK(w->m1 == 1);
  CHECK(w->m2 == 53);
  CHECK(w->sum == Catch::Approx(53 * 0.12).epsilon(1e-12));
  CHECK(w->threshold == Catch::Approx(2 * kPi).margin(0.0));

  const auto all = spiral_windows(theta, a);
  REQUIRE_FALSE(all.empty());
  CHECK(all.front().m2 == 53);
  CHECK(all.back().m2 == 60);
  for (const auto& win : all) {
    CHECK(std::fabs(rotation_sum(theta, a, win.m1, win.m2)) > 2 * kPi);
  }
}

TEST_CASE("no spiral witness without aligned runs", "[rotation]") {
  const auto theta = ThetaSequence::constant(0.12);
  DyadicAddress a;
  for (int k = 0; k < 60; ++k) a.bits.push_back(0);  // signs alternate, sums stay tiny
  CHECK_FALSE(spiral_witness(theta, a).has_value());
  CHECK(spiral_windows(theta, a).empty());
  CHECK_THROWS_AS(spiral_witness(theta, a, -1.0), validation_error);
}
