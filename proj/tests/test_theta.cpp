#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "reiflab/theta.hpp"

using namespace reiflab;

TEST_CASE("constant sequence accessors", "[theta]") {
  auto t = ThetaSequence::constant(0.1);
  CHECK(t.kind() == ThetaKind::kConstant);
  CHECK(t.theta1() == 0.1);
  CHECK(t.at(1) == 0.1);
  CHECK(t.at(1000000) == 0.1);
  CHECK_THROWS_AS(t.at(0), validation_error);  // levels are 1-based
}

TEST_CASE("angle validation", "[theta]") {
  CHECK_THROWS_AS(ThetaSequence::constant(0.0), validation_error);
  CHECK_THROWS_AS(ThetaSequence::constant(-0.1), validation_error);
  CHECK_THROWS_AS(ThetaSequence::constant(kMaxTheta), validation_error);  // open interval
  CHECK_THROWS_AS(ThetaSequence::constant(0.5), validation_error);
  CHECK_THROWS_AS(ThetaSequence::constant(std::nan("")), validation_error);
  CHECK_NOTHROW(ThetaSequence::constant(std::nextafter(kMaxTheta, 0.0)));
}

TEST_CASE("list sequences extend with the last value", "[theta]") {
  auto t = ThetaSequence::list({0.1, 0.08, 0.05});
  CHECK(t.kind() == ThetaKind::kList);
  CHECK(t.theta1() == 0.1);
  CHECK(t.at(2) == 0.08);
  CHECK(t.at(3) == 0.05);
  CHECK(t.at(4) == 0.05);
  CHECK(t.at(1u << 20) == 0.05);
  CHECK(t.values().size() == 3);

  CHECK_THROWS_AS(ThetaSequence::list({}), validation_error);
  CHECK_THROWS_AS(ThetaSequence::list({0.1, 0.11}), validation_error);  // increasing
  CHECK_THROWS_AS(ThetaSequence::list({0.1, 0.0}), validation_error);
}

TEST_CASE("block sequences respect cumulative boundaries", "[theta]") {
  auto t = ThetaSequence::blocks({{0.1, 3}, {0.06, 2}, {0.02, 1}});
  CHECK(t.kind() == ThetaKind::kBlocks);
  CHECK(t.at(1) == 0.1);
  CHECK(t.at(3) == 0.1);
  CHECK(t.at(4) == 0.06);
  CHECK(t.at(5) == 0.06);
  CHECK(t.at(6) == 0.02);
  CHECK(t.at(7) == 0.02);  // last block extends
  CHECK(t.block_list().size() == 3);

  CHECK_THROWS_AS(ThetaSequence::blocks({}), validation_error);
  CHECK_THROWS_AS(ThetaSequence::blocks({{0.1, 0}}), validation_error);   // zero length
  CHECK_THROWS_AS(ThetaSequence::blocks({{0.05, 2}, {0.06, 1}}), validation_error);
}

TEST_CASE("non-increasing family invariant across kinds", "[theta]") {
  auto list = ThetaSequence::list({0.1, 0.1, 0.07});
  auto blk = ThetaSequence::blocks({{0.1, 2}, {0.07, 4}});
  for (std::uint64_t n = 1; n < 40; ++n) {
    CHECK(list.at(n + 1) <= list.at(n));
    CHECK(blk.at(n + 1) <= blk.at(n));
    CHECK(list.at(n) <= list.theta1());
    CHECK(blk.at(n) <= blk.theta1());
  }
}

TEST_CASE("classify_theta pins the first length doubling at theta 0.12", "[theta]") {
  // Oracle: sec(0.12)^n first exceeds 2 at n = 97 (sec^96 = 1.99944 < 2).
  auto t = ThetaSequence::constant(0.12);
  auto c = classify_theta(t, 120, 2.0);
  CHECK(c.first_doubling == 97);
  CHECK(c.constant_prefix);
  CHECK(c.product_exceeds);

  auto c96 = classify_theta(t, 96, 2.0);
  CHECK(c96.first_doubling == 0);
  CHECK(c96.partial_product == Catch::Approx(1.9994362744941787).epsilon(1e-12));
  CHECK_FALSE(c96.product_exceeds);

  auto c97 = classify_theta(t, 97, 2.0);
  CHECK(c97.first_doubling == 97);
  CHECK(c97.partial_product == Catch::Approx(2.0139191001038825).epsilon(1e-12));
}

TEST_CASE("classify_theta partial product matches a direct product", "[theta]") {
  auto t = ThetaSequence::blocks({{0.1, 4}, {0.05, 4}});
  double prod = 1.0;
  for (std::uint64_t n = 1; n <= 12; ++n) {
    prod /= std::cos(t.at(n));
    auto c = classify_theta(t, n, 1e9);
    CHECK(c.partial_product == Catch::Approx(prod).epsilon(1e-12));
    CHECK(c.theta_at_probe == t.at(n));
    CHECK_FALSE(c.product_exceeds);
  }
  CHECK_FALSE(classify_theta(t, 5, 0.0).constant_prefix);
  CHECK(classify_theta(t, 4, 0.0).constant_prefix);
  CHECK_THROWS_AS(classify_theta(t, 0, 2.0), validation_error);
}
