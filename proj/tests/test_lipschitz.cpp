/* Apache License, Version 2.0 */
#include <doctest.h>

#include <cmath>

#include "ghp/gh.hpp"
#include "ghp/lipschitz.hpp"
#include "ghp/order.hpp"
#include "ghp/rng.hpp"
#include "test_helpers.hpp"

using namespace ghp;
using ghp::testing::from_rows;
using ghp::testing::random_space;
using ghp::testing::sigma;

TEST_CASE("kuratowski embeds isometrically") {
  CoordinateMap f = kuratowski(sigma(2, 1.0));
  CHECK(f.values[0] == std::vector<double>{0.0, 1.0});
  CHECK(f.values[1] == std::vector<double>{1.0, 0.0});
  CHECK(f.sup_dist(0, 1) == doctest::Approx(1.0));

  CoordinateMap single = kuratowski(sigma(1, 0.0));
  CHECK(single.values == std::vector<std::vector<double>>{{0.0}});

  for (uint64_t s = 0; s < 15; ++s) {
    FiniteSpace x = random_space(3 + static_cast<int>(s % 4), 100 + s);
    CoordinateMap e = kuratowski(x);
    for (int i = 0; i < x.size(); ++i)
      for (int j = 0; j < x.size(); ++j)
        CHECK(e.sup_dist(i, j) == doctest::Approx(x.dist(i, j).value()));
  }
  CHECK_THROWS_AS(kuratowski(sigma_space(2, ExtReal::inf())),
                  PreconditionError);
}

TEST_CASE("mcshane fix of a one-dimensional stretch") {
  FiniteSpace x = sigma(2, 1.0);
  CoordinateMap f;
  f.values = {{0.0}, {1.3}};
  CoordinateMap g = mcshane_fix(x, f, 0.3);
  CHECK(g.values[0][0] == doctest::Approx(0.0));
  CHECK(g.values[1][0] == doctest::Approx(1.0));
}

TEST_CASE("mcshane fix leaves 1-Lipschitz maps alone") {
  FiniteSpace x = random_space(5, 9);
  CoordinateMap f = kuratowski(x);
  CoordinateMap g = mcshane_fix(x, f, 0.0);
  for (int i = 0; i < x.size(); ++i)
    for (size_t c = 0; c < f.values[i].size(); ++c)
      CHECK(g.values[i][c] == doctest::Approx(f.values[i][c]));
}

TEST_CASE("mcshane fix contract on perturbed Lipschitz maps") {
  for (uint64_t s = 0; s < 40; ++s) {
    FiniteSpace x = random_space(2 + static_cast<int>(s % 5), 4242 + s);
    const double eps = 0.05 + 0.01 * static_cast<double>(s % 7);
    SplitMix64 rng(s);
    CoordinateMap f = kuratowski(x);  // 1-Lipschitz
    for (auto& row : f.values)
      for (double& v : row) v += rng.uniform(-eps / 2, eps / 2);
    CoordinateMap g = mcshane_fix(x, f, eps);
    for (int i = 0; i < x.size(); ++i) {
      for (int j = 0; j < x.size(); ++j)
        CHECK(g.sup_dist(i, j) <= x.dist(i, j).value() + 1e-12);
      for (size_t c = 0; c < f.values[i].size(); ++c)
        CHECK(std::abs(g.values[i][c] - f.values[i][c]) <= eps + 1e-12);
    }
  }
}

TEST_CASE("mcshane fix rejects violated preconditions") {
  FiniteSpace x = sigma(2, 1.0);
  CoordinateMap f;
  f.values = {{0.0}, {2.0}};
  CHECK_THROWS_AS(mcshane_fix(x, f, 0.3), PreconditionError);
}

TEST_CASE("transfer at zero defect reproduces the source up to isometry") {
  for (uint64_t s = 0; s < 10; ++s) {
    FiniteSpace y = random_space(4, 1300 + s);
    FiniteSpace yp = y.restrict({0, 2});
    FiniteSpace out = transfer_net(yp, y, 0.0, y.diameter().value() + 1.0);
    CHECK(gh_exact(out, yp).value.hi == doctest::Approx(0.0));
  }
}

TEST_CASE("transfer of a two-point space across a small gap") {
  FiniteSpace yp = sigma(2, 1.0);
  FiniteSpace x = sigma(2, 1.5);
  FiniteSpace out = transfer_net(yp, x, 0.25, 1.0);
  CHECK(out.size() <= 2);
  CHECK(gh_exact(out, yp).value.hi <= 0.75 + 1e-12);
  CHECK(widening_defect(out, x).defect.value() <= 1e-9);
}

TEST_CASE("transfer respects the three-epsilon bound on a random corpus") {
  int checked = 0;
  for (uint64_t s = 0; s < 40; ++s) {
    FiniteSpace x = random_space(2 + static_cast<int>(s % 3), 510 + s);
    FiniteSpace y = random_space(2 + static_cast<int>((s * 3) % 3), 520 + s);
    const double e = gh_exact(x, y).value.hi + 1e-12;
    // members of the pyramid below y: subspaces and their truncations
    std::vector<FiniteSpace> members;
    members.push_back(y);
    if (y.size() >= 2) members.push_back(y.restrict({0, 1}));
    members.push_back(truncate(y, 0.8 * std::max(0.1, y.diameter().value())));
    for (const FiniteSpace& yp : members) {
      FiniteSpace out = transfer_net(yp, x, e, yp.diameter().value() + 1e-9);
      CHECK(widening_defect(out, x).defect.value() <= 1e-9);
      CHECK(out.size() <= yp.size());
      CHECK(out.diameter().value() <= yp.diameter().value() + 1e-9);
      CHECK(gh_exact(out, yp).value.hi <= 3.0 * e + 1e-9);
      ++checked;
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("transfer rejects an impossible defect budget") {
  CHECK_THROWS_AS(transfer_net(sigma(3, 2.0), sigma(3, 1.0), 0.1, 2.0),
                  PreconditionError);
}
