/* Apache License, Version 2.0 */
#include <doctest.h>

#include <cmath>

#include "ghp/gh.hpp"
#include "ghp/oracle.hpp"
#include "ghp/space_zoo.hpp"
#include "test_helpers.hpp"

using namespace ghp;
using ghp::testing::from_rows;
using ghp::testing::random_space;
using ghp::testing::relabel;
using ghp::testing::sigma;

namespace {

Correspondence bijection(int n) {
  Correspondence c;
  for (int i = 0; i < n; ++i) c.pairs.push_back({i, i});
  return c;
}

}  // namespace

TEST_CASE("distortion of simple correspondences") {
  CHECK(distortion(sigma(2, 1.0), sigma(2, 1.0), bijection(2)) == ExtReal(0.0));
  CHECK(distortion(sigma(2, 1.0), sigma(2, 2.0), bijection(2)).value() ==
        doctest::Approx(1.0));

  // any surjective correspondence between a 3- and 2-point simplex distorts
  // by at least 1; the exhaustive minimum is exactly 1
  CHECK(2.0 * oracle::oracle_gh(sigma(3, 1.0), sigma(2, 1.0)) ==
        doctest::Approx(1.0));
  Correspondence c;
  c.pairs = {{0, 0}, {1, 1}, {2, 1}};
  CHECK(distortion(sigma(3, 1.0), sigma(2, 1.0), c).value() ==
        doctest::Approx(1.0));
}

TEST_CASE("gh_exact on the named small cases") {
  CHECK(gh_exact(sigma(2, 1.0), sigma(2, 2.0)).value.hi ==
        doctest::Approx(0.5));
  CHECK(gh_exact(sigma(2, 1.0), sigma(3, 1.0)).value.hi ==
        doctest::Approx(0.5));
  for (uint64_t s = 0; s < 8; ++s) {
    FiniteSpace x = random_space(2 + static_cast<int>(s % 4), 600 + s);
    const double expect = 0.5 * x.diameter().value();
    CHECK(gh_exact(x, sigma(1, 0.0)).value.hi == doctest::Approx(expect));
  }
}

TEST_CASE("gh_exact matches the exhaustive oracle on random pairs") {
  for (uint64_t s = 0; s < 60; ++s) {
    FiniteSpace x = random_space(2 + static_cast<int>(s % 3), 1000 + s);
    FiniteSpace y = random_space(2 + static_cast<int>((s * 3) % 3), 2000 + s);
    const double engine = gh_exact(x, y).value.hi;
    const double oracle_v = oracle::oracle_gh(x, y);
    CHECK(engine == doctest::Approx(oracle_v).epsilon(1e-12));
  }
}

TEST_CASE("gh_exact witness distortion equals twice the value") {
  for (uint64_t s = 0; s < 10; ++s) {
    FiniteSpace x = random_space(3, 50 + s);
    FiniteSpace y = random_space(4, 60 + s);
    GhResult r = gh_exact(x, y);
    REQUIRE(r.witness.has_value());
    CHECK(distortion(x, y, *r.witness).value() ==
          doctest::Approx(2.0 * r.value.hi));
  }
}

TEST_CASE("gh_exact is symmetric and vanishes exactly on isometric pairs") {
  for (uint64_t s = 0; s < 12; ++s) {
    FiniteSpace x = random_space(2 + static_cast<int>(s % 3), 700 + s);
    FiniteSpace y = random_space(2 + static_cast<int>((s + 1) % 3), 800 + s);
    CHECK(gh_exact(x, y).value.hi == doctest::Approx(gh_exact(y, x).value.hi));
    CHECK(gh_exact(x, relabel(x, s)).value.hi == doctest::Approx(0.0));
    if (!equivalent(x, y)) CHECK(gh_exact(x, y).value.hi > 0.0);
  }
}

TEST_CASE("gh_exact satisfies the triangle inequality on a corpus") {
  for (uint64_t s = 0; s < 10; ++s) {
    FiniteSpace x = random_space(3, 10 + s);
    FiniteSpace y = random_space(4, 20 + s);
    FiniteSpace z = random_space(3, 30 + s);
    const double xy = gh_exact(x, y).value.hi;
    const double yz = gh_exact(y, z).value.hi;
    const double xz = gh_exact(x, z).value.hi;
    CHECK(xz <= xy + yz + 1e-12);
  }
}

TEST_CASE("diameter bounds sandwich gh_exact") {
  for (uint64_t s = 0; s < 12; ++s) {
    FiniteSpace x = random_space(3, 210 + s);
    FiniteSpace y = random_space(4, 220 + s);
    const double v = gh_exact(x, y).value.hi;
    CHECK(v >= 0.5 * std::abs(x.diameter().value() - y.diameter().value()) -
                   1e-12);
    CHECK(v <= 0.5 * std::max(x.diameter().value(), y.diameter().value()) +
                   1e-12);
  }
}

TEST_CASE("gh_bounds identity and two-point separations") {
  FiniteSpace x = random_space(6, 5);
  GhResult same = gh_bounds(x, x);
  CHECK(same.value.lo == doctest::Approx(0.0));
  CHECK(same.value.hi == doctest::Approx(0.0));

  GhResult sep = gh_bounds(sigma(2, 1.0), sigma(2, 3.0));
  CHECK(sep.value.lo == doctest::Approx(1.0));
  CHECK(sep.value.hi == doctest::Approx(1.0));
}

TEST_CASE("gh_bounds encloses gh_exact") {
  for (uint64_t s = 0; s < 25; ++s) {
    FiniteSpace x = random_space(2 + static_cast<int>(s % 4), 300 + s);
    FiniteSpace y = random_space(2 + static_cast<int>((s * 7) % 4), 400 + s);
    const double exact = gh_exact(x, y).value.hi;
    GhResult b = gh_bounds(x, y);
    CHECK(b.value.lo <= exact + 1e-12);
    CHECK(b.value.hi >= exact - 1e-12);
  }
}

TEST_CASE("spider separation is certified by the packing bound") {
  FiniteSpace sp8 = generate(SpaceRecipe::spider(8, 1.0, 2)).space;
  FiniteSpace sp16 = generate(SpaceRecipe::spider(16, 1.0, 2)).space;
  CHECK(sp8.size() == 17);
  CHECK(sp16.size() == 33);
  GhResult b = gh_bounds(sp8, sp16);
  CHECK(b.value.lo >= 0.4);
  CHECK(b.value.hi >= b.value.lo);
  CHECK(b.value.hi <= 1.0 + 1e-12);  // collapse of legs realizes distance 1
}

TEST_CASE("sorted profile mismatch can overshoot the exact distance") {
  // The bottleneck of sorted distance multisets is NOT a valid lower bound:
  // optimal correspondences need not be bijections even between equal-size
  // spaces. This sweep pins the counterexamples that keep lb_sorted_profile
  // out of the certified floor of gh_bounds.
  int violations = 0;
  for (uint64_t s = 0; s < 200; ++s) {
    const int n = 2 + static_cast<int>(s % 4);
    FiniteSpace x = random_space(n, 3100 + s, 0.2, 2.5);
    FiniteSpace y = random_space(n, 4100 + s, 0.2, 2.5);
    const double exact = gh_exact(x, y).value.hi;
    if (lb_sorted_profile(x, y) > exact + 1e-12) ++violations;
    // the certified floor must never overshoot
    CHECK(gh_bounds(x, y).value.lo <= exact + 1e-12);
  }
  CHECK(violations > 0);
}

TEST_CASE("pointed distance dominates the unpointed one") {
  for (uint64_t s = 0; s < 40; ++s) {
    FiniteSpace x = random_space(2 + static_cast<int>(s % 3), 7000 + s);
    FiniteSpace y = random_space(2 + static_cast<int>((s * 11) % 3), 8000 + s);
    const double plain = gh_exact(x, y).value.hi;
    for (int bx = 0; bx < x.size(); ++bx)
      for (int by = 0; by < y.size(); ++by) {
        const double pointed =
            gh_pointed(PointedSpace(x, bx), PointedSpace(y, by)).value.hi;
        CHECK(pointed >= plain - 1e-12);
      }
  }
}

TEST_CASE("gh_pointed on the named cases and against its oracle") {
  PointedSpace a(sigma(2, 1.0), 0);
  CHECK(gh_pointed(a, a).value.hi == doctest::Approx(0.0));
  CHECK(gh_pointed(a, PointedSpace(sigma(2, 2.0), 0)).value.hi ==
        doctest::Approx(0.5));
  for (uint64_t s = 0; s < 25; ++s) {
    FiniteSpace x = random_space(2 + static_cast<int>(s % 3), 9000 + s);
    FiniteSpace y = random_space(2 + static_cast<int>((s * 13) % 3), 9500 + s);
    PointedSpace px(x, 0), py(y, 0);
    CHECK(gh_pointed(px, py).value.hi ==
          doctest::Approx(oracle::oracle_gh_pointed(px, py)).epsilon(1e-12));
  }
}

TEST_CASE("hausdorff between sets of spaces") {
  auto exact_oracle = [](const FiniteSpace& a, const FiniteSpace& b) {
    return gh_exact(a, b).value;
  };
  std::vector<FiniteSpace> a{sigma(1, 0.0)};
  std::vector<FiniteSpace> b{sigma(1, 0.0), sigma(2, 1.0)};
  Interval h = hausdorff_between_sets(a, b, exact_oracle);
  CHECK(h.lo == doctest::Approx(0.5));
  CHECK(h.hi == doctest::Approx(0.5));

  std::vector<FiniteSpace> c{sigma(2, 1.0)};
  std::vector<FiniteSpace> d{sigma(2, 1.2)};
  Interval h2 = hausdorff_between_sets(c, d, exact_oracle);
  CHECK(h2.lo == doctest::Approx(0.1));
  CHECK(h2.hi == doctest::Approx(0.1));

  Interval h3 = hausdorff_between_sets(b, b, exact_oracle);
  CHECK(h3.lo == doctest::Approx(0.0));
  CHECK(h3.hi == doctest::Approx(0.0));

  CHECK_THROWS_AS(hausdorff_between_sets({}, b, exact_oracle),
                  PreconditionError);
}

TEST_CASE("gh_exact refuses infinite entries") {
  CHECK_THROWS_AS(gh_exact(sigma_space(2, ExtReal::inf()), sigma(2, 1.0)),
                  PreconditionError);
}
