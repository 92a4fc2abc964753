/* Apache License, Version 2.0 */
#include <doctest.h>

#include <cmath>

#include "ghp/space_zoo.hpp"
#include "test_helpers.hpp"

using namespace ghp;

TEST_CASE("sigma family") {
  FiniteSpace s = generate(SpaceRecipe::sigma(3, ExtReal(1.0))).space;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(s.dist(i, j) == (i == j ? ExtReal(0.0) : ExtReal(1.0)));
  FiniteSpace sinf = generate(SpaceRecipe::sigma(2, ExtReal::inf())).space;
  CHECK(sinf.dist(0, 1).is_inf());
}

TEST_CASE("the smallest spider is a path of length two") {
  GeneratedSpace g = generate(SpaceRecipe::spider(2, 1.0, 1));
  REQUIRE(g.space.size() == 3);
  CHECK(g.base.value() == 0);
  CHECK(g.space.dist(1, 2) == ExtReal(2.0));  // tip to tip
  CHECK(g.space.dist(0, 1) == ExtReal(1.0));
  CHECK(g.space.dist(0, 2) == ExtReal(1.0));
}

TEST_CASE("spider radius and diameter are exact for every density") {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= 3; ++k) {
      GeneratedSpace g = generate(SpaceRecipe::spider(n, 1.5, k));
      PointedSpace p = g.pointed();
      CHECK(p.radius() == ExtReal(1.5));
      CHECK(p.space.diameter() == ExtReal(3.0));
    }
}

TEST_CASE("sphere samples are valid and bounded by pi") {
  FiniteSpace s = generate(SpaceRecipe::sphere(1, 6, 11)).space;
  CHECK(s.size() == 6);
  CHECK(validate(s.matrix()).ok());
  CHECK(s.diameter().value() <= 3.14159265358979 + 1e-9);

  FiniteSpace s2 = generate(SpaceRecipe::sphere(2, 8, 12)).space;
  CHECK(validate(s2.matrix()).ok());
}

TEST_CASE("projective samples stay within half the sphere diameter") {
  FiniteSpace s = generate(SpaceRecipe::proj_space(2, 7, 5)).space;
  CHECK(validate(s.matrix()).ok());
  CHECK(s.diameter().value() <= 3.14159265358979 / 2 + 1e-9);
}

TEST_CASE("sup product realizes the base diameter") {
  SpaceRecipe base = SpaceRecipe::sigma(2, ExtReal(1.0));
  FiniteSpace s =
      generate(SpaceRecipe::lp_product(base, 4,
                                       std::numeric_limits<double>::infinity(),
                                       12, 31))
          .space;
  CHECK(validate(s.matrix()).ok());
  CHECK(s.diameter().value() == doctest::Approx(1.0));
}

TEST_CASE("lp products are valid for finite p") {
  SpaceRecipe base = SpaceRecipe::sigma(3, ExtReal(1.0));
  FiniteSpace s = generate(SpaceRecipe::lp_product(base, 3, 2.0, 10, 17)).space;
  CHECK(validate(s.matrix()).ok());
}

TEST_CASE("paths are pointed at an end") {
  GeneratedSpace g = generate(SpaceRecipe::path(2.0, 4));
  REQUIRE(g.space.size() == 5);
  CHECK(g.base.value() == 0);
  CHECK(g.space.dist(0, 4) == ExtReal(2.0));
  CHECK(g.space.dist(1, 3) == ExtReal(1.0));
}

TEST_CASE("random metrics validate") {
  for (uint64_t s = 0; s < 10; ++s) {
    FiniteSpace x = generate(SpaceRecipe::random_metric(5, s)).space;
    CHECK(validate(x.matrix()).ok());
  }
}

TEST_CASE("corpus is reproducible, valid, and large enough") {
  std::vector<FiniteSpace> a = corpus(7);
  std::vector<FiniteSpace> b = corpus(7);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() >= 40);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].content_hash() == b[i].content_hash());
    CHECK(validate(a[i].matrix()).ok());
  }
  // a different master seed changes only the random members
  std::vector<FiniteSpace> c = corpus(8);
  REQUIRE(c.size() == a.size());
}

TEST_CASE("invalid recipes are rejected") {
  CHECK_THROWS(generate(SpaceRecipe::spider(0, 1.0, 1)));
  CHECK_THROWS(generate(SpaceRecipe::path(-1.0, 2)));
  CHECK_THROWS(generate(SpaceRecipe::sigma(0, ExtReal(1.0))));
}
