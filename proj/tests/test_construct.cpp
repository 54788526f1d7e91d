#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "reiflab/construct.hpp"

using namespace reiflab;

TEST_CASE("apex alternation by level parity", "[construct]") {
  CHECK(apex_side(0) == 1.0);
  CHECK(apex_side(1) == -1.0);
  CHECK(apex_side(2) == 1.0);
  CHECK(apex_side(15) == -1.0);
}

TEST_CASE("cap_apex places the isosceles apex", "[construct]") {
  // Base (0,0)-(1,0) at level 0: apex above the midpoint at height tan(a)/2.
  const double a = 0.1;
  Point2 apex = cap_apex({0, 0}, {1, 0}, a, 0);
  CHECK(apex.x == Catch::Approx(0.5).margin(1e-15));
  CHECK(apex.y == Catch::Approx(0.5 * std::tan(a)).epsilon(1e-14));
  // Odd level: same base, apex below.
  Point2 below = cap_apex({0, 0}, {1, 0}, a, 1);
  CHECK(below.y == Catch::Approx(-0.5 * std::tan(a)).epsilon(1e-14));
  // The apex sees both base corners under the base angle.
  const double lam = norm(apex - Point2{0, 0});
  CHECK(lam == Catch::Approx(1.0 / (2.0 * std::cos(a))).epsilon(1e-13));
  CHECK(norm(apex - Point2{1, 0}) == Catch::Approx(lam).epsilon(1e-13));
}

TEST_CASE("level shapes: counts and fixed endpoints", "[construct]") {
  Construction c(ThetaSequence::constant(0.12), 6);
  CHECK(c.depth() == 6);
  for (std::uint32_t n = 0; n <= 7; ++n) {
    CHECK(c.edge_count(n) == (std::uint64_t{1} << n));
    CHECK(c.vertices(n).size() == (std::size_t{1} << n) + 1);
    CHECK(c.vertices(n).front() == Point2{0.0, 0.0});
    CHECK(dist(c.vertices(n).back(), {1.0, 0.0}) < 1e-12);
  }
  CHECK_THROWS_AS(c.vertices(8), validation_error);
  CHECK_THROWS_AS(c.edge(3, 0), validation_error);   // 1-based
  CHECK_THROWS_AS(c.edge(3, 9), validation_error);
  CHECK_THROWS_AS(c.cap(7, 1), validation_error);    // caps need level n+1 vertices
}

TEST_CASE("pinned level-1 apex for theta 0.12", "[construct]") {
  // The first cap of level 1 has its apex on the base axis at x = lambda^2,
  // lambda = 1/(2 cos theta): frozen oracle 0.2536348441405794.
  Construction c(ThetaSequence::constant(0.12), 2);
  const TriangularCap t = c.cap(1, 1);
  CHECK(t.apex.x == Catch::Approx(0.2536348441405794).epsilon(1e-14));
  CHECK(std::fabs(t.apex.y) < 1e-15);
}

TEST_CASE("edge lengths match the closed form", "[construct]") {
  for (const auto& theta :
       {ThetaSequence::constant(0.1), ThetaSequence::blocks({{0.12, 3}, {0.05, 2}})}) {
    Construction c(theta, 9);
    for (std::uint32_t n = 0; n <= 9; ++n) {
      const double expect = edge_length(theta, n);
      double worst = 0.0;
      for (std::uint64_t i = 1; i <= c.edge_count(n); ++i) {
        const Segment e = c.edge(n, i);
        worst = std::max(worst, std::fabs(length(e) - expect) / expect);
      }
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("caps sit on their edges with the parity side", "[construct]") {
  Construction c(ThetaSequence::constant(0.09), 7);
  std::mt19937_64 rng(5);
  for (std::uint32_t n = 0; n <= 6; ++n) {
    std::uniform_int_distribution<std::uint64_t> pick(1, c.edge_count(n));
    for (int it = 0; it < 20; ++it) {
      const std::uint64_t i = pick(rng);
      const Segment e = c.edge(n, i);
      const TriangularCap cap = c.cap(n, i);
      CHECK(dist(cap.base_start, e.a) == 0.0);
      CHECK(dist(cap.base_end, e.b) == 0.0);
      CHECK(dist(cap.apex, cap_apex(e.a, e.b, c.theta().at(n + 1), n)) < 1e-15);
      // Side of the base line follows apex_side(n), every index alike.
      const double s = cross(e.b - e.a, cap.apex - e.a);
      CHECK(s * apex_side(n) > 0.0);
      CHECK(cap.level == n);
      CHECK(cap.index == i);
    }
  }
}

TEST_CASE("each level refines the previous one", "[construct]") {
  Construction c(ThetaSequence::blocks({{0.11, 2}, {0.06, 10}}), 8);
  for (std::uint32_t n = 0; n < 8; ++n) {
    const auto& coarse = c.vertices(n);
    const auto& fine = c.vertices(n + 1);
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      CHECK(dist(coarse[k], fine[2 * k]) == 0.0);  // old vertices persist
    }
  }
}

TEST_CASE("depth guard", "[construct]") {
  CHECK_THROWS_AS(Construction(ThetaSequence::constant(0.1), kDepthGuard + 1), guard_error);
  CHECK_NOTHROW(build_construction(ThetaSequence::constant(0.1), 4));
}

TEST_CASE("similitude pair pinned vertex images", "[construct]") {
  const double th = 0.12, h = 0.5 * std::tan(th);
  const Similitude s1 = cap_similitude(th, 1);
  const Similitude s2 = cap_similitude(th, 2);
  CHECK(dist(s1({1, 0}), {0, 0}) < 1e-15);
  CHECK(dist(s1({0, 0}), {0.5, h}) < 1e-15);
  CHECK(dist(s2({0, 0}), {1, 0}) < 1e-15);
  CHECK(dist(s2({1, 0}), {0.5, h}) < 1e-15);
  CHECK(s1.scale == Catch::Approx(1.0 / (2.0 * std::cos(th))).epsilon(1e-15));
  CHECK_THROWS_AS(cap_similitude(th, 3), validation_error);
}

TEST_CASE("compose is function composition", "[construct]") {
  const Similitude s1 = cap_similitude(0.1, 1);
  const Similitude s2 = cap_similitude(0.1, 2);
  const Similitude c12 = compose(s1, s2);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int it = 0; it < 100; ++it) {
    Point2 p{u(rng), u(rng)};
    CHECK(dist(c12(p), s1(s2(p))) < 1e-14);
  }
}

TEST_CASE("similitude words land on the predicted caps", "[construct]") {
  const double th = 0.12;
  Construction c(ThetaSequence::constant(th), 4);
  std::vector<std::vector<int>> words{{1}, {2}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 2, 2, 1}};
  for (const auto& w : words) {
    const SimilitudeImage img = similitude_images(th, w);
    const auto n = static_cast<std::uint32_t>(w.size());
    REQUIRE(img.index >= 1);
    REQUIRE(img.index <= c.edge_count(n));
    const TriangularCap built = c.cap(n, img.index);
    // The maps reverse orientation, so the base may arrive swapped.
    const double direct = std::max(dist(img.cap.base_start, built.base_start),
                                   dist(img.cap.base_end, built.base_end));
    const double swapped = std::max(dist(img.cap.base_start, built.base_end),
                                    dist(img.cap.base_end, built.base_start));
    CHECK(std::min(direct, swapped) < 1e-13);
    CHECK(dist(img.cap.apex, built.apex) < 1e-13);
  }
  CHECK(similitude_images(th, {1}).index == 1);
  CHECK(similitude_images(th, {2}).index == 2);
  CHECK_THROWS_AS(similitude_images(th, {1, 3}), validation_error);
}
