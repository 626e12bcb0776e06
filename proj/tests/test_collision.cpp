#include <cmath>
#include <cstring>

#include "doctest.h"
#include "helpers.hpp"
#include "riskinfo/collision.hpp"
#include "riskinfo/errors.hpp"
#include "riskinfo/measures.hpp"

using namespace riskinfo;
using testutil::alpha;
using testutil::binary_entropy;

TEST_CASE("collision margin fixtures") {
  // Symmetric speeds and decelerations: kinetic terms cancel, the margin is
  // v2*(h2 - r2).
  const CollisionScenario comfortable{20, 20, 6, 6, 1.5, 1.0};
  const double y1 = collision_margin(comfortable);
  CHECK(y1 == doctest::Approx(10.0).epsilon(1e-12));
  CHECK_FALSE(collides(y1));

  // Same but h2 == r2: exactly on the boundary, classified as collision.
  const CollisionScenario boundary{20, 20, 6, 6, 1.0, 1.0};
  const double y2 = collision_margin(boundary);
  CHECK(y2 == 0.0);
  CHECK(collides(y2));

  // Stationary lead vehicle: 20*1 + 0 - 20*1 - 400/12.
  const CollisionScenario stopped_lead{0, 20, 6, 6, 1.0, 1.0};
  const double y3 = collision_margin(stopped_lead);
  CHECK(std::abs(y3 - (20.0 * 1.0 + 0.0 - 20.0 * 1.0 - 400.0 / 12.0)) <= 1e-9);
  CHECK(y3 == doctest::Approx(-33.3333333333).epsilon(1e-9));
  CHECK(collides(y3));
}

TEST_CASE("collision margin is a pure function") {
  const CollisionScenario s{31.7, 24.9, 5.3, 7.1, 2.2, 0.8};
  const double a = collision_margin(s);
  const double b = collision_margin(s);
  CHECK(std::memcmp(&a, &b, sizeof(double)) == 0);
}

TEST_CASE("scenario invariants") {
  CHECK_THROWS_AS(collision_margin({20, 20, 0.0, 6, 1, 1}), Error);
  CHECK_THROWS_AS(collision_margin({20, 20, 6, -1.0, 1, 1}), Error);
  CHECK_THROWS_AS(collision_margin({-5, 20, 6, 6, 1, 1}), Error);
  try {
    collision_margin({20, 20, 0.0, 6, 1, 1});
  } catch (const Error& e) {
    CHECK(e.code() == errc::invalid_scenario);
  }
}

TEST_CASE("collision channel worked examples") {
  // Single-cell grid at the comfortable scenario: constant no-collision map.
  CollisionGrid one;
  one.v1 = 20.0;
  one.v2 = 20.0;
  one.a1 = 6.0;
  one.a2 = 6.0;
  one.h2 = 1.5;
  one.r2 = 1.0;
  auto single = collision_channel(one);
  CHECK(single.cells.size() == 1);
  CHECK(single.mapper.map[0] == 1);  // no_collision
  auto r1 = deterministic_capacity(single.mapper,
                                   FiniteDistribution::uniform(single.mapper.input_alphabet));
  CHECK(r1.h_y_bits == 0.0);

  // Two cells, one colliding and one safe: a balanced binary map carries
  // exactly one bit under the uniform input.
  CollisionGrid two = one;
  two.h2 = GridAxis{1.0, 1.5, 2};  // h2=1.0 collides (boundary), h2=1.5 is safe
  auto pair = collision_channel(two);
  CHECK(pair.cells.size() == 2);
  CHECK(pair.mapper.map[0] != pair.mapper.map[1]);
  auto r2 = deterministic_capacity(pair.mapper,
                                   FiniteDistribution::uniform(pair.mapper.input_alphabet));
  CHECK(r2.i_xy_bits == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r2.h_y_bits == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("grid H(Y) equals the brute-force colliding fraction entropy") {
  CollisionGrid grid;
  grid.v1 = 20.0;
  grid.v2 = 20.0;
  grid.a1 = 6.0;
  grid.a2 = 6.0;
  grid.h2 = GridAxis{0.0, 3.0, 10};
  grid.r2 = GridAxis{0.0, 3.0, 10};
  auto result = collision_channel(grid);
  CHECK(result.cells.size() == 100);

  // Brute force each cell straight from the formula.
  std::size_t colliding = 0;
  for (const CollisionScenario& s : result.cells) {
    const double y =
        s.v2 * s.h2 + s.v1 * s.v1 / (2 * s.a1) - s.v2 * s.r2 - s.v2 * s.v2 / (2 * s.a2);
    if (y <= 0.0) ++colliding;
  }
  CHECK(colliding > 0);
  CHECK(colliding < 100);

  const double fraction = static_cast<double>(colliding) / 100.0;
  auto cap = deterministic_capacity(result.mapper,
                                    FiniteDistribution::uniform(result.mapper.input_alphabet));
  CHECK(std::abs(cap.h_y_bits - binary_entropy(fraction)) <= 1e-12);
  CHECK(std::abs(cap.i_xy_bits - cap.h_y_bits) <= 1e-12);
}

TEST_CASE("rate identity survives a 1e5-cell grid") {
  // Long reductions are where accumulation error would show; the internal
  // 1e-12 cross-check in deterministic_capacity throws if it drifts.
  CollisionGrid grid;
  grid.v1 = GridAxis{0.0, 40.0, 100};
  grid.v2 = GridAxis{1.0, 40.0, 100};
  grid.a1 = 6.0;
  grid.a2 = 6.0;
  grid.h2 = GridAxis{0.0, 3.0, 10};
  grid.r2 = 1.0;
  auto result = collision_channel(grid);
  REQUIRE(result.cells.size() == 100000);

  auto cap = deterministic_capacity(
      result.mapper, FiniteDistribution::uniform(result.mapper.input_alphabet));
  CHECK(std::abs(cap.i_xy_bits - cap.h_y_bits) <= 1e-12);

  std::size_t colliding = 0;
  for (double y : result.margins) colliding += (y <= 0.0);
  const double fraction =
      static_cast<double>(colliding) / static_cast<double>(result.margins.size());
  CHECK(std::abs(cap.h_y_bits - binary_entropy(fraction)) <= 1e-12);
}

TEST_CASE("grid validation") {
  CollisionGrid bad;
  bad.v1 = 20.0;
  bad.v2 = 20.0;
  bad.a1 = 6.0;
  bad.a2 = 6.0;
  bad.h2 = GridAxis{3.0, 1.0, 4};  // min > max
  bad.r2 = 1.0;
  CHECK_THROWS_AS(collision_channel(bad), Error);
  try {
    collision_channel(bad);
  } catch (const Error& e) {
    CHECK(e.code() == errc::empty_range);
  }

  CollisionGrid huge;
  huge.v1 = GridAxis{0.0, 40.0, 101};
  huge.v2 = GridAxis{0.0, 40.0, 101};
  huge.a1 = GridAxis{1.0, 9.0, 101};
  huge.a2 = 6.0;
  huge.h2 = 1.0;
  huge.r2 = 1.0;
  try {
    collision_channel(huge);
    FAIL("expected grid_too_large");
  } catch (const Error& e) {
    CHECK(e.code() == errc::grid_too_large);
  }

  // Sweeping a braking field through zero violates the scenario invariants.
  CollisionGrid zero_a = bad;
  zero_a.h2 = 1.5;
  zero_a.a1 = GridAxis{0.0, 6.0, 3};
  CHECK_THROWS_AS(collision_channel(zero_a), Error);
}

TEST_CASE("grid labels encode coordinates uniquely") {
  CollisionGrid grid;
  grid.v1 = 20.0;
  grid.v2 = GridAxis{10.0, 30.0, 3};
  grid.a1 = 6.0;
  grid.a2 = 6.0;
  grid.h2 = GridAxis{0.5, 1.5, 2};
  grid.r2 = 1.0;
  auto result = collision_channel(grid);
  CHECK(result.cells.size() == 6);
  CHECK(result.mapper.input_alphabet.size() == 6);
  CHECK(result.mapper.input_alphabet.label(0) ==
        "v1=20;v2=10;a1=6;a2=6;h2=0.5;r2=1");
}
