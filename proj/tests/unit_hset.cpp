#include <doctest.h>

#include "pspin/hset.hpp"

using namespace pspin;

TEST_SUITE("hset") {

static Mixture mix(double l1, double l2) {
  return Mixture::make({4, 28, 84}, {l1, l2}, true);
}

TEST_CASE("condition kappa holds on the published 3-RSB chain") {
  const Mixture m = mix(0.88, 0.1118);
  const KappaReport rep = condition_kappa(m, Chain{0.0, 0.9345, 0.975, 1.0});
  REQUIRE(rep.satisfied);
  CHECK(rep.strict);
  REQUIRE(rep.margin_z.size() == 3);
  for (int l = 0; l < 3; ++l) {
    CHECK(rep.margin_z[l] > 1e-10);
    CHECK(rep.margin_y[l] > 1e-10);
  }
  // Frozen margins (sign-adjusted, nonnegative means satisfied).
  CHECK(rep.margin_z[0] == doctest::Approx(2.38046e-4).epsilon(1e-3));
  CHECK(rep.margin_y[0] == doctest::Approx(1.17591e-4).epsilon(1e-3));
  CHECK(rep.margin_z[2] == doctest::Approx(4.24693e-6).epsilon(1e-3));
}

TEST_CASE("condition kappa rejects a misplaced chain") {
  const Mixture m = mix(0.88, 0.1118);
  CHECK_FALSE(condition_kappa(m, Chain{0.0, 0.5, 0.7, 1.0}).satisfied);
  CHECK_FALSE(condition_kappa(m, Chain{0.0, 0.975, 0.9345, 1.0}).satisfied);  // not increasing
}

TEST_CASE("pinned witnesses") {
  const Mixture p3 = Mixture::make({3}, {1.0});
  auto w = pinned_witness(p3, 1);
  REQUIRE(w.has_value());
  CHECK((*w)[0] == doctest::Approx(0.0));
  CHECK((*w)[1] == doctest::Approx(1.0));

  const Mixture m2 = mix(0.88, 0.1118);
  CHECK(pinned_witness(m2, 3).has_value());
  CHECK_FALSE(pinned_witness(m2, 4).has_value());
}

TEST_CASE("extremal points reproduce the published brackets") {
  // lambda2 = 0.1253 family: max-last of the first pinned set and min-first of
  // the last pinned set.
  const Mixture m3 = mix(0.86, 0.1253);
  auto e1 = extremal_point(m3, 1, PinMode::First, Objective::MaxLast);
  REQUIRE(e1.has_value());
  CHECK((*e1)[1] == doctest::Approx(0.9291355937).epsilon(1e-7));
  auto f1 = extremal_point(m3, 2, PinMode::Last, Objective::MinFirst);
  REQUIRE(f1.has_value());
  CHECK((*f1)[0] == doctest::Approx(0.9355144019).epsilon(1e-7));
  CHECK((*f1)[1] == doctest::Approx(0.949725749).epsilon(1e-7));

  // lambda2 = 0.1113 family.
  const Mixture m4 = mix(0.88, 0.1113);
  auto e4 = extremal_point(m4, 2, PinMode::First, Objective::MaxLast);
  REQUIRE(e4.has_value());
  CHECK((*e4)[1] == doctest::Approx(0.9346762694).epsilon(1e-7));
  CHECK((*e4)[2] == doctest::Approx(0.9713862487).epsilon(1e-7));
  auto f4 = extremal_point(m4, 1, PinMode::Last, Objective::MinFirst);
  REQUIRE(f4.has_value());
  CHECK((*f4)[0] == doctest::Approx(0.971434534).epsilon(1e-7));

  // lambda2 = 0.1108 family: the middle unpinned corner.
  const Mixture m5 = mix(0.88, 0.1108);
  auto c5 = extremal_point(m5, 1, PinMode::None, Objective::MaxLast);
  REQUIRE(c5.has_value());
  CHECK((*c5)[0] == doctest::Approx(0.9395685599).epsilon(1e-7));
  CHECK((*c5)[1] == doctest::Approx(0.9600348741).epsilon(1e-7));
}

TEST_CASE("chained relation on the example corpus") {
  CHECK(tilde_chain(mix(0.88, 0.1118), {3}).holds);
  CHECK(tilde_chain(mix(0.86, 0.1253), {1, 2}).holds);
  CHECK(tilde_chain(mix(0.88, 0.1113), {2, 1}).holds);
  CHECK(tilde_chain(mix(0.88, 0.1108), {1, 1, 1}).holds);
  CHECK_FALSE(tilde_chain(mix(0.88, 0.1118), {4}).holds);
  CHECK_FALSE(tilde_chain(mix(0.88, 0.1118), {1}).holds);
  CHECK_FALSE(tilde_chain(mix(0.88, 0.1118), {1, 1}).holds);
}

}  // TEST_SUITE
