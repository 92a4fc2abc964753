/* Apache License, Version 2.0 */
#include <doctest.h>

#include "ghp/gh.hpp"
#include "ghp/oracle.hpp"
#include "ghp/order.hpp"
#include "ghp/space_zoo.hpp"
#include "test_helpers.hpp"

using namespace ghp;
using ghp::testing::from_rows;
using ghp::testing::random_space;
using ghp::testing::relabel;
using ghp::testing::sigma;

TEST_CASE("defect of embedding into a larger simplex is zero") {
  auto r = widening_defect(sigma(2, 1.0), sigma(3, 1.0));
  CHECK(r.defect == ExtReal(0.0));
}

TEST_CASE("defect of a pigeonhole collapse") {
  auto r = widening_defect(sigma(3, 1.0), sigma(2, 1.0));
  CHECK(r.defect.value() == doctest::Approx(1.0));
  CHECK(oracle::oracle_defect(sigma(3, 1.0), sigma(2, 1.0)).value() ==
        doctest::Approx(1.0));
}

TEST_CASE("defect of shrinking a two-point space") {
  auto r = widening_defect(sigma(2, 2.0), sigma(2, 1.0));
  CHECK(r.defect.value() == doctest::Approx(1.0));
}

TEST_CASE("defect witness attains the reported defect") {
  for (uint64_t s = 0; s < 30; ++s) {
    FiniteSpace x = random_space(2 + static_cast<int>(s % 4), 900 + s);
    FiniteSpace y = random_space(2 + static_cast<int>((s * 7) % 4), 1900 + s);
    auto r = widening_defect(x, y);
    ExtReal check(0.0);
    for (int i = 0; i < x.size(); ++i)
      for (int j = 0; j < x.size(); ++j)
        check = ext_max(check,
                        ext_excess(x.dist(i, j),
                                   y.dist(r.witness.assignment[i],
                                          r.witness.assignment[j])));
    CHECK(check == r.defect);
    CHECK(r.defect == oracle::oracle_defect(x, y));
  }
}

TEST_CASE("precsim basics") {
  FiniteSpace x = random_space(4, 42);
  CHECK(precsim(x, x, 0.0));
  CHECK_FALSE(precsim(sigma(3, 1.0), sigma(2, 1.0), 0.0));
  for (uint64_t s = 0; s < 8; ++s) {
    FiniteSpace y = random_space(5, 4000 + s);
    CHECK(precsim(truncate(y, 0.9), y, 0.0));
  }
}

TEST_CASE("pointed relation requires the base to map to the base") {
  PointedSpace two(sigma(2, 1.0), 0);
  GeneratedSpace sp = generate(SpaceRecipe::spider(2, 1.0, 1));
  // pointed at a tip: the other tip is at distance 2, the center at 1
  PointedSpace tip(sp.space, 1);
  CHECK(precsim_pointed(two, tip, 0.0));

  PointedSpace wide(sigma(2, 2.0), 0);
  PointedSpace narrow(sigma(2, 1.0), 0);
  CHECK_FALSE(precsim_pointed(wide, narrow, 0.0));
  CHECK(precsim_pointed(PointedSpace(sigma(3, 1.0), 1),
                        PointedSpace(sigma(3, 1.0), 2), 0.0));
}

TEST_CASE("pointed defect matches its oracle") {
  for (uint64_t s = 0; s < 20; ++s) {
    FiniteSpace x = random_space(2 + static_cast<int>(s % 3), 37 + s);
    FiniteSpace y = random_space(2 + static_cast<int>((s * 5) % 4), 91 + s);
    PointedSpace px(x, static_cast<int>(s) % x.size());
    PointedSpace py(y, static_cast<int>(s / 2) % y.size());
    auto r = widening_defect_pointed(px, py);
    CHECK(r.defect == oracle::oracle_defect_pointed(px, py));
  }
}

TEST_CASE("equivalence under relabeling") {
  for (uint64_t s = 0; s < 10; ++s) {
    FiniteSpace x = random_space(4, 777 + s);
    CHECK(equivalent(x, relabel(x, s + 1), 1e-9));
  }
  CHECK_FALSE(equivalent(sigma(2, 1.0), sigma(3, 1.0), 1e-9));
}

TEST_CASE("equivalent compact spaces have zero GH distance") {
  for (uint64_t s = 0; s < 12; ++s) {
    FiniteSpace x = random_space(2 + static_cast<int>(s % 3), 31 + s);
    FiniteSpace y = relabel(x, s * 13 + 7);
    REQUIRE(equivalent(x, y, 1e-9));
    CHECK(gh_exact(x, y).value.hi == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("defect obeys the composition inequality") {
  for (uint64_t s = 0; s < 15; ++s) {
    FiniteSpace x = random_space(3, 11 + s);
    FiniteSpace w = random_space(4, 21 + s);
    FiniteSpace y = random_space(3, 41 + s);
    const double xy = widening_defect(x, y).defect.value();
    const double xw = widening_defect(x, w).defect.value();
    const double wy = widening_defect(w, y).defect.value();
    CHECK(xy <= xw + wy + 1e-12);
  }
}

TEST_CASE("zero defects compose to a zero defect") {
  // subspace chains: restriction into the host, host into a bigger simplex
  FiniteSpace z = sigma(5, 1.0);
  FiniteSpace y = z.restrict({0, 1, 2, 3});
  FiniteSpace x = y.restrict({0, 1});
  REQUIRE(widening_defect(x, y).defect == ExtReal(0.0));
  REQUIRE(widening_defect(y, z).defect == ExtReal(0.0));
  CHECK(widening_defect(x, z).defect == ExtReal(0.0));
}

TEST_CASE("close spaces embed with twice the GH defect") {
  for (uint64_t s = 0; s < 15; ++s) {
    FiniteSpace x = random_space(3 + static_cast<int>(s % 2), 5 + s);
    FiniteSpace y = random_space(3 + static_cast<int>((s + 1) % 2), 6 + s);
    const double e = gh_exact(x, y).value.hi;
    CHECK(widening_defect(y, x).defect.value() <= 2.0 * e + 1e-9);
    CHECK(widening_defect(x, y).defect.value() <= 2.0 * e + 1e-9);
  }
}

TEST_CASE("defect is invariant under relabeling") {
  for (uint64_t s = 0; s < 10; ++s) {
    FiniteSpace x = random_space(3, 141 + s);
    FiniteSpace y = random_space(4, 151 + s);
    const ExtReal d = widening_defect(x, y).defect;
    CHECK(widening_defect(relabel(x, s + 3), relabel(y, s + 9)).defect == d);
  }
}

TEST_CASE("defect with infinite requirements") {
  FiniteSpace xinf = sigma_space(2, ExtReal::inf());
  CHECK(widening_defect(xinf, sigma(2, 1.0)).defect.is_inf());
  CHECK(widening_defect(xinf, xinf).defect == ExtReal(0.0));
  CHECK(widening_defect(sigma(2, 1.0), xinf).defect == ExtReal(0.0));
}
