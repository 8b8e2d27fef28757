#include <doctest.h>

#include <cmath>

#include "pspin/mixture.hpp"

using namespace pspin;

TEST_SUITE("mixture") {

TEST_CASE("factory validation") {
  CHECK_THROWS_AS(Mixture::make({4, 4}, {0.5, 0.5}), Error);          // not increasing
  CHECK_THROWS_AS(Mixture::make({4, 3}, {0.5, 0.5}), Error);          // decreasing
  CHECK_THROWS_AS(Mixture::make({2}, {1.0}), Error);                  // p=2 needs diagnostic
  CHECK_THROWS_AS(Mixture::make({3, 4}, {0.5, 0.6}), Error);          // sum > 1
  CHECK_THROWS_AS(Mixture::make({3, 4}, {-0.1, 1.1}), Error);         // out of range
  CHECK_THROWS_AS(Mixture::make({3, 4}, {0.5, 0.6}, true), Error);    // derived weight < 0
  CHECK_NOTHROW(Mixture::make({3, 4}, {0.5, 0.5}));
  CHECK_NOTHROW(Mixture::make_diagnostic({2}, {1.0}));
}

TEST_CASE("derive_last fills the remaining simplex weight") {
  const Mixture m = Mixture::make({4, 28, 84}, {0.88, 0.1118}, true);
  REQUIRE(m.components() == 3);
  CHECK(m.weights()[2] == doctest::Approx(0.0082).epsilon(1e-12));
  CHECK(m.xi1(1.0) == doctest::Approx(7.3392).epsilon(1e-12));
}

TEST_CASE("polynomial derivatives are exact") {
  const Mixture m = Mixture::make({3}, {1.0});
  CHECK(m.xi(0.5) == doctest::Approx(0.125));
  CHECK(m.xi1(1.0) == doctest::Approx(3.0));
  CHECK(m.xi2(1.0) == doctest::Approx(6.0));
  CHECK(m.xi3(0.7) == doctest::Approx(6.0));
  CHECK(m.xi4(0.7) == doctest::Approx(0.0));
}

TEST_CASE("phi_star_curvature matches the closed form for a pure model") {
  // For xi = x^p: xi''^{-1/2} = c x^{-(p-2)/2}, whose second derivative is
  // c (p-2)(p)/4 x^{-(p+2)/2} > 0 for p > 2.
  const Mixture m = Mixture::make({4}, {1.0});
  const double x = 0.6;
  const double c = 1.0 / std::sqrt(12.0);
  const double expect = c * 2.0 * 4.0 / 4.0 * std::pow(x, -3.0);
  CHECK(m.phi_star_curvature(x) == doctest::Approx(expect).epsilon(1e-10));
  CHECK(m.curvature_sign_changes() == 0);
}

TEST_CASE("curvature sign changes are bounded by 2(n-1)") {
  const Mixture m = Mixture::make({4, 28, 84}, {0.88, 0.1118}, true);
  CHECK(m.curvature_sign_changes() <= 4);
}

}  // TEST_SUITE
