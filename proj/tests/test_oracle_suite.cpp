/* Apache License, Version 2.0 */
#include <doctest.h>

#include <cmath>
#include <map>

#include "ghp/gh.hpp"
#include "ghp/oracle.hpp"
#include "ghp/order.hpp"
#include "ghp/pyramid.hpp"
#include "ghp/space_zoo.hpp"
#include "test_helpers.hpp"

using namespace ghp;
using ghp::testing::random_space;
using ghp::testing::sigma;

TEST_CASE("grid universe cardinalities stay at their golden values") {
  // frozen on the first certified enumeration; any drift is a regression in
  // the enumeration or the canonical form
  const int expected[3][4] = {
      {1, 1, 1, 1},      // n = 1
      {2, 4, 8, 12},     // n = 2
      {4, 17, 86, 239},  // n = 3
  };
  const int expected_pointed[3][4] = {
      {1, 1, 1, 1},
      {2, 4, 8, 12},
      {6, 33, 198, 591},
  };
  const int vmaxes[4] = {2, 4, 8, 12};
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k < 4; ++k) {
      CHECK(oracle::oracle_grid_universe(n, vmaxes[k], 0.25).size() ==
            static_cast<size_t>(expected[n - 1][k]));
      CHECK(oracle::oracle_grid_universe_pointed(n, vmaxes[k], 0.25).size() ==
            static_cast<size_t>(expected_pointed[n - 1][k]));
    }
}

TEST_CASE("named oracle slice values") {
  // two-point host on the half grid: the point, 2@0.5, 2@1
  auto s = oracle::oracle_slice(PyramidHandle::finite(sigma(2, 1.0)), 2, 2.0, 0.5);
  CHECK(s.size() == 3);
  // the sentinel slice is the whole universe
  auto full = oracle::oracle_slice(PyramidHandle::max_sentinel(), 2, 2.0, 1.0);
  CHECK(full.size() == 3);
  // one-point slices collapse
  auto tiny = oracle::oracle_slice(PyramidHandle::finite(random_space(4, 3)), 1,
                                   1.0, 0.25);
  CHECK(tiny.size() == 1);
}

TEST_CASE("oracle rho level on the two-point separation") {
  const double v = oracle::oracle_rho_level(
      PyramidHandle::finite(sigma(1, 0.0)), PyramidHandle::finite(sigma(2, 1.0)),
      2, 0.25);
  CHECK(v == doctest::Approx(0.5));
  const double same = oracle::oracle_rho_level(
      PyramidHandle::finite(sigma(3, 1.0)), PyramidHandle::finite(sigma(3, 1.0)),
      2, 0.25);
  CHECK(same == doctest::Approx(0.0));
}

TEST_CASE("oracle rho level reproduces the truncated diameter gap") {
  for (uint64_t s = 0; s < 6; ++s) {
    FiniteSpace x = random_space(3, 2200 + s);
    FiniteSpace y = random_space(4, 2300 + s);
    const double v = oracle::oracle_rho_level(PyramidHandle::finite(x),
                                              PyramidHandle::finite(y), 2, 0.25);
    // on the grid model the two-point families are truncated-diameter ranges
    auto quantize = [](double d) { return std::floor(d / 0.25 + 1e-9) * 0.25; };
    const double expect =
        0.5 * std::abs(quantize(std::min(x.diameter().value(), 2.0)) -
                       quantize(std::min(y.diameter().value(), 2.0)));
    CHECK(v == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("search budgets trip the size limit error") {
  FiniteSpace x = random_space(5, 901);
  FiniteSpace y = random_space(5, 902);
  CHECK_THROWS_AS(gh_exact(x, y, GhLimits{5}), SizeLimitError);
  CHECK_THROWS_AS(widening_defect(x, y, SearchLimits{3}), SizeLimitError);
}

TEST_CASE("level values are immune to shared-cache warm-up order") {
  // regression: a weak content hash once collided between a diameter-2
  // element of one slice and a diameter-1 element of another, so warming the
  // caches on one pair corrupted a later pair
  clear_pyramid_caches();
  FiniteSpace path = generate(SpaceRecipe::path(2.0, 4)).space;
  FiniteSpace s1 = sigma(1, 0.0);
  FiniteSpace s3 = sigma(3, 1.0);
  for (int n = 1; n <= 3; ++n)
    rho_level(PyramidHandle::finite(path), PyramidHandle::finite(s1), n);
  RhoLevel l = rho_level(PyramidHandle::finite(s1), PyramidHandle::finite(s3), 3);
  CHECK(l.value.lo == doctest::Approx(0.5));
  CHECK(l.value.hi == doctest::Approx(0.5));
  clear_pyramid_caches();
}

TEST_CASE("content hashes separate all small grid matrices") {
  std::map<uint64_t, std::vector<double>> seen;
  int checked = 0;
  for (const FiniteSpace& x : corpus(7)) {
    if (x.has_infinite_entry()) continue;
    SliceNet net = slice_net(PyramidHandle::finite(x), 3, 3.0, 0.25);
    for (const FiniteSpace& e : net.elements) {
      std::vector<double> flat;
      flat.push_back(e.size());
      for (int i = 0; i < e.size(); ++i)
        for (int j = 0; j < e.size(); ++j) flat.push_back(e.dist(i, j).value());
      auto [it, fresh] = seen.emplace(e.content_hash(), flat);
      ++checked;
      if (!fresh) CHECK(it->second == flat);
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("rho is reproducible across cache resets") {
  FiniteSpace x = random_space(5, 41);
  FiniteSpace y = generate(SpaceRecipe::spider(3, 1.0, 2)).space;
  RhoEstimate first = rho(PyramidHandle::finite(x), PyramidHandle::finite(y));
  clear_pyramid_caches();
  RhoEstimate second = rho(PyramidHandle::finite(x), PyramidHandle::finite(y));
  REQUIRE(first.levels.size() == second.levels.size());
  for (size_t i = 0; i < first.levels.size(); ++i) {
    CHECK(first.levels[i].value.lo == second.levels[i].value.lo);
    CHECK(first.levels[i].value.hi == second.levels[i].value.hi);
  }
  CHECK(first.total.lo == second.total.lo);
  CHECK(first.total.hi == second.total.hi);
}
