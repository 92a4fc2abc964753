/* Apache License, Version 2.0 */
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ghp/oracle.hpp"
#include "ghp/pyramid.hpp"
#include "ghp/space_zoo.hpp"
#include "test_helpers.hpp"

using namespace ghp;
using ghp::testing::random_space;
using ghp::testing::relabel;
using ghp::testing::sigma;

namespace {

std::set<std::vector<double>> key_set(const SliceNet& net) {
  return {net.keys.begin(), net.keys.end()};
}

std::set<std::vector<double>> key_set(const std::vector<FiniteSpace>& v,
                                      int base = -1) {
  std::set<std::vector<double>> out;
  for (const FiniteSpace& s : v) out.insert(canonical_key(s, base));
  return out;
}

}  // namespace

TEST_CASE("membership basics") {
  FiniteSpace spider3 = generate(SpaceRecipe::spider(3, 1.0, 2)).space;
  CHECK(member(sigma(2, 1.0), PyramidHandle::finite(spider3)));
  CHECK_FALSE(member(sigma(3, 1.0), PyramidHandle::finite(sigma(2, 1.0))));
  CHECK(member(random_space(4, 5), PyramidHandle::max_sentinel()));
}

TEST_CASE("pattern membership agrees with the defect search on triples") {
  for (uint64_t s = 0; s < 25; ++s) {
    FiniteSpace x = random_space(4 + static_cast<int>(s % 2), 660 + s);
    PyramidHandle h = PyramidHandle::finite(x);
    for (uint64_t t = 0; t < 8; ++t) {
      FiniteSpace g = random_space(2 + static_cast<int>(t % 2), 99000 + 31 * s + t,
                                   0.2, 2.2);
      const bool fast = member(g, h, 1e-9);
      const bool slow = !oracle::oracle_defect(g, x).is_inf() &&
                        oracle::oracle_defect(g, x).value() <= 1e-9;
      CHECK(fast == slow);
    }
  }
}

TEST_CASE("slice of a two-point space on a half-step grid") {
  SliceNet net = slice_net(PyramidHandle::finite(sigma(2, 1.0)), 2, 2.0, 0.5);
  REQUIRE(net.certified);
  CHECK(net.elements.size() == 3);  // the point, 2@0.5, 2@1
  auto keys = key_set(net);
  CHECK(keys.count(canonical_key(sigma(1, 0.0))));
  CHECK(keys.count(canonical_key(sigma(2, 0.5))));
  CHECK(keys.count(canonical_key(sigma(2, 1.0))));
}

TEST_CASE("sentinel slice is the full grid") {
  SliceNet net = slice_net(PyramidHandle::max_sentinel(), 2, 2.0, 1.0);
  REQUIRE(net.certified);
  CHECK(net.elements.size() == 3);
  auto keys = key_set(net);
  CHECK(keys.count(canonical_key(sigma(2, 1.0))));
  CHECK(keys.count(canonical_key(sigma(2, 2.0))));
}

TEST_CASE("level-one slice is a single class") {
  for (uint64_t s = 0; s < 5; ++s) {
    FiniteSpace x = random_space(3, 30 + s);
    SliceNet net = slice_net(PyramidHandle::finite(x), 1, 1.0, 0.25);
    CHECK(net.elements.size() == 1);
    CHECK(net.elements[0].size() == 1);
  }
}

TEST_CASE("certified slices equal the oracle slices at small levels") {
  std::vector<FiniteSpace> probes{
      sigma(2, 1.0),
      sigma(4, 2.0),
      generate(SpaceRecipe::spider(3, 1.0, 2)).space,
      random_space(5, 123),
      generate(SpaceRecipe::path(1.0, 4)).space,
  };
  for (const FiniteSpace& x : probes) {
    PyramidHandle h = PyramidHandle::finite(x);
    for (int n = 1; n <= 3; ++n) {
      SliceNet net = slice_net(h, n, static_cast<double>(n), 0.25);
      REQUIRE(net.certified);
      auto oracle_elems = oracle::oracle_slice(h, n, n, 0.25);
      CHECK(key_set(net) == key_set(oracle_elems));
    }
  }
  // sentinel side
  for (int n = 1; n <= 3; ++n) {
    SliceNet net = slice_net(PyramidHandle::max_sentinel(), n,
                             static_cast<double>(n), 0.25);
    auto oracle_elems =
        oracle::oracle_slice(PyramidHandle::max_sentinel(), n, n, 0.25);
    CHECK(key_set(net) == key_set(oracle_elems));
  }
}

TEST_CASE("rho level one is zero and levels match the oracle") {
  std::vector<FiniteSpace> probes{
      sigma(2, 1.0), sigma(3, 2.0), random_space(4, 41),
      generate(SpaceRecipe::spider(2, 1.0, 1)).space,
      generate(SpaceRecipe::path(2.0, 2)).space,
  };
  for (size_t a = 0; a < probes.size(); ++a) {
    PyramidHandle ha = PyramidHandle::finite(probes[a]);
    PyramidHandle hb = PyramidHandle::finite(probes[(a + 1) % probes.size()]);
    RhoLevel l1 = rho_level(ha, hb, 1);
    CHECK(l1.value.lo == doctest::Approx(0.0));
    CHECK(l1.value.hi == doctest::Approx(0.0));
    for (int n = 2; n <= 3; ++n) {
      RhoLevel l = rho_level(ha, hb, n);
      REQUIRE(l.certified);
      const double o = oracle::oracle_rho_level(ha, hb, n, 0.25);
      CHECK(l.value.contains(o, 1e-9));
    }
  }
}

TEST_CASE("level-two values follow the truncated diameter gap") {
  for (uint64_t s = 0; s < 10; ++s) {
    FiniteSpace x = random_space(3, 9100 + s);
    FiniteSpace y = random_space(4, 9200 + s);
    RhoLevel l = rho_level(PyramidHandle::finite(x), PyramidHandle::finite(y), 2);
    const double expect = 0.5 * std::abs(std::min(x.diameter().value(), 2.0) -
                                         std::min(y.diameter().value(), 2.0));
    // the grid model sees the closed form through the quantization accounting
    CHECK(expect >= l.value.lo - l.radius_sum - 1e-9);
    CHECK(expect <= l.value.hi + l.radius_sum + 1e-9);
  }
}

TEST_CASE("rho of a space against itself is the bare tail") {
  FiniteSpace x = random_space(4, 77);
  RhoEstimate est = rho(PyramidHandle::finite(x), PyramidHandle::finite(x));
  CHECK(est.total.lo == doctest::Approx(0.0));
  CHECK(est.total.hi == doctest::Approx(est.tail_bound));
}

TEST_CASE("rho separates nested simplex families at the closed-form value") {
  RhoParams params;
  RhoEstimate e12 = rho(PyramidHandle::finite(sigma(1, 0.0)),
                        PyramidHandle::finite(sigma(2, 1.0)), params);
  CHECK(e12.total.contains(0.25, 1e-9));
  CHECK(e12.total.width() <= 0.08);

  RhoEstimate e24 = rho(PyramidHandle::finite(sigma(2, 1.0)),
                        PyramidHandle::finite(sigma(4, 1.0)), params);
  CHECK(e24.total.contains(0.125, 1e-9));
  CHECK(e24.total.width() <= 0.08);
}

TEST_CASE("rho stays within the global bound") {
  std::vector<FiniteSpace> probes{sigma(3, 2.0), random_space(5, 5),
                                  generate(SpaceRecipe::spider(4, 1.0, 2)).space};
  for (size_t a = 0; a < probes.size(); ++a)
    for (size_t b = a; b < probes.size(); ++b) {
      RhoEstimate est = rho(PyramidHandle::finite(probes[a]),
                            PyramidHandle::finite(probes[b]));
      CHECK(est.total.hi <= 2.0 + est.tail_bound + 1e-9);
      for (const RhoLevel& l : est.levels) {
        CHECK(l.value.lo >= -1e-12);
        CHECK(l.value.hi <= l.n + 1e-12);
      }
    }
}

TEST_CASE("rho respects the three-Lipschitz comparison with gh") {
  for (uint64_t s = 0; s < 6; ++s) {
    FiniteSpace x = random_space(3, 8800 + s);
    FiniteSpace y = random_space(3, 8900 + s);
    RhoEstimate est = rho(PyramidHandle::finite(x), PyramidHandle::finite(y));
    const double d = gh_exact(x, y).value.hi;
    CHECK(est.outer().lo <= 3.0 * d + 1e-9);
  }
}

TEST_CASE("equivalent spaces have vanishing rho, and conversely on the grid") {
  FiniteSpace x = random_space(4, 31);
  FiniteSpace y = relabel(x, 5);
  REQUIRE(equivalent(x, y));
  RhoEstimate est = rho(PyramidHandle::finite(x), PyramidHandle::finite(y));
  CHECK(est.total.lo == doctest::Approx(0.0));
  CHECK(est.total.hi <= est.tail_bound + 1e-9);

  RhoEstimate diff = rho(PyramidHandle::finite(sigma(4, 1.0)),
                         PyramidHandle::finite(sigma(5, 1.0)));
  CHECK(diff.total.hi > diff.tail_bound + 1e-9);
}

TEST_CASE("downward closure holds on certified nets") {
  FiniteSpace x = generate(SpaceRecipe::spider(3, 1.0, 1)).space;
  PyramidHandle h = PyramidHandle::finite(x);
  SliceNet net = slice_net(h, 3, 3.0, 0.5);
  REQUIRE(net.certified);
  for (const FiniteSpace& e : net.elements) {
    if (e.size() != 3) continue;
    // every grid minor of a member must be a member
    for (double a = 0.5; a <= e.dist(0, 1).value() + 1e-12; a += 0.5)
      for (double b = 0.5; b <= e.dist(0, 2).value() + 1e-12; b += 0.5)
        for (double c = 0.5; c <= e.dist(1, 2).value() + 1e-12; c += 0.5) {
          RawMatrix m(3, std::vector<ExtReal>(3, ExtReal(0.0)));
          m[0][1] = m[1][0] = ExtReal(a);
          m[0][2] = m[2][0] = ExtReal(b);
          m[1][2] = m[2][1] = ExtReal(c);
          if (!validate(m).ok()) continue;
          CHECK(member(FiniteSpace(m), h, 1e-9));
        }
  }
}

TEST_CASE("directedness: slice pairs are dominated inside the doubled slice") {
  FiniteSpace x = random_space(5, 2024);
  PyramidHandle h = PyramidHandle::finite(x);
  SliceNet net = slice_net(h, 2, 2.0, 0.25);
  REQUIRE(net.certified);
  const double cap = 2.0;
  for (size_t a = 0; a < net.elements.size(); a += 3)
    for (size_t b = a; b < net.elements.size(); b += 3) {
      // witness maps into x, then the union configuration truncated at the cap
      auto wa = widening_defect(net.elements[a], truncate(x, cap));
      auto wb = widening_defect(net.elements[b], truncate(x, cap));
      REQUIRE(wa.defect.value() <= 1e-9);
      REQUIRE(wb.defect.value() <= 1e-9);
      std::set<int> pts;
      for (int v : wa.witness.assignment) pts.insert(v);
      for (int v : wb.witness.assignment) pts.insert(v);
      std::vector<int> idx(pts.begin(), pts.end());
      FiniteSpace z = truncate(x.restrict(idx), cap);
      CHECK(static_cast<int>(z.size()) <= 2 * 2);
      CHECK(member(z, h, 1e-9));
      CHECK(widening_defect(net.elements[a], z).defect.value() <= 1e-9);
      CHECK(widening_defect(net.elements[b], z).defect.value() <= 1e-9);
    }
}

TEST_CASE("slices grow with both caps") {
  FiniteSpace x = random_space(5, 606);
  PyramidHandle h = PyramidHandle::finite(x);
  SliceNet small = slice_net(h, 2, 1.0, 0.25);
  SliceNet large = slice_net(h, 3, 2.0, 0.25);
  auto ks = key_set(small);
  auto kl = key_set(large);
  for (const auto& k : ks) CHECK(kl.count(k));
}

TEST_CASE("slice convergence report on the simplex family") {
  std::vector<PyramidHandle> seq;
  for (int n = 1; n <= 6; ++n)
    seq.push_back(PyramidHandle::finite(sigma(n, 1.0)));
  PyramidHandle target = PyramidHandle::finite(sigma(6, 1.0));
  auto rows = slice_converge_report(seq, target, 4, 4.0, 0.25);
  REQUIRE(rows.size() == 6);
  for (int n = 1; n <= 6; ++n) {
    if (n < 4)
      CHECK(rows[n - 1].value.contains(0.5, 1e-9));
    else
      CHECK(rows[n - 1].value.contains(0.0, 1e-9));
  }
  // constant sequence
  auto same = slice_converge_report({target, target}, target, 3, 3.0, 0.25);
  for (const auto& r : same) CHECK(r.value.hi == doctest::Approx(0.0));
}

TEST_CASE("truncation sequence collapses toward the point") {
  FiniteSpace x = random_space(4, 17);
  std::vector<PyramidHandle> seq;
  for (int k = 1; k <= 4; ++k)
    seq.push_back(PyramidHandle::finite(truncate(x, 1.0 / k)));
  auto rows = slice_converge_report(seq, PyramidHandle::finite(sigma(1, 0.0)),
                                    2, 2.0, 0.125);
  for (size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].value.hi <= rows[i - 1].value.hi + 1e-9);
}
