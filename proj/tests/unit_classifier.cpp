#include <doctest.h>

#include <cmath>

#include "pspin/classifier.hpp"

using namespace pspin;

TEST_SUITE("classifier") {

TEST_CASE("composition enumeration") {
  using V = std::vector<std::vector<int>>;
  CHECK(frsb_compositions(1) == V{{1, 0}});
  CHECK(frsb_compositions(2) == V{{1, 1}, {1, 1, 0}, {2, 0}});
  const V c3 = frsb_compositions(3);
  CHECK(c3 == V{{1, 1, 1}, {1, 1, 1, 0}, {1, 2}, {1, 2, 0}, {2, 1}, {2, 1, 0}, {3, 0}});
}

TEST_CASE("f_set derivation") {
  CHECK(f_set_of_composition({1, 2}) == std::vector<int>{1});
  CHECK(f_set_of_composition({2, 1}) == std::vector<int>{2});
  CHECK(f_set_of_composition({1, 1, 1}) == std::vector<int>{1, 2});
  CHECK(f_set_of_composition({1, 0}) == std::vector<int>{1});
  CHECK(f_set_of_composition({3}).empty());
}

TEST_CASE("pure models classify directly") {
  ClassifyOptions opts;
  opts.oracle_check = false;

  const ClassifyOutcome p3 = classify(Mixture::make({3}, {1.0}), opts);
  REQUIRE(p3.ok());
  CHECK(p3.result->label.kind == PhaseKind::RSB);
  CHECK(p3.result->label.k == 1);
  CHECK(p3.result->criterion_agrees);
  CHECK(p3.result->energy == doctest::Approx(1.65699836353).epsilon(1e-10));

  const ClassifyOutcome p2 = classify(Mixture::make_diagnostic({2}, {1.0}), opts);
  REQUIRE(p2.ok());
  CHECK(p2.result->label.kind == PhaseKind::RS);
  CHECK(p2.result->energy == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("oracle cross-check on a cheap case") {
  ClassifyOptions opts;
  opts.oracle_check = true;
  const ClassifyOutcome p3 = classify(Mixture::make({3}, {1.0}), opts);
  REQUIRE(p3.ok());
  CHECK(p3.result->oracle_ok);
  CHECK(p3.result->oracle_gap / p3.result->energy <= 1e-4);
}

TEST_CASE("trivial scan reduces to classify") {
  ClassifyOptions opts;
  opts.oracle_check = false;
  const std::vector<ScanRow> rows = phase_scan({3}, {{1.0, 1.0, 0.0}}, opts);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ok);
  CHECK(rows[0].label.kind == PhaseKind::RSB);
  CHECK(rows[0].label.k == 1);
  CHECK(rows[0].energy == doctest::Approx(1.65699836353).epsilon(1e-10));
}

TEST_CASE("scan records invalid grid points per row") {
  ClassifyOptions opts;
  opts.oracle_check = false;
  const std::vector<ScanRow> rows = phase_scan({3, 4}, {{0.6, 0.6, 0.0}, {0.6, 0.6, 0.0}}, opts);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].ok);
  CHECK(rows[0].flags.find("invalid") != std::string::npos);
}

}  // TEST_SUITE
