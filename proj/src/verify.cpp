/* Apache License, Version 2.0 */
#include "ghp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

#include "ghp/gh.hpp"
#include "ghp/lipschitz.hpp"
#include "ghp/oracle.hpp"
#include "ghp/order.hpp"
#include "ghp/pointed_rho.hpp"
#include "ghp/pyramid.hpp"
#include "ghp/rng.hpp"
#include "ghp/space_zoo.hpp"

namespace ghp {

namespace {

constexpr uint64_t kCorpusSeed = 7;

FiniteSpace random_metric(int n, uint64_t seed) {
  return generate(SpaceRecipe::random_metric(n, seed)).space;
}

PyramidHandle handle(const FiniteSpace& s) { return PyramidHandle::finite(s); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------

std::pair<bool, std::string> run_oracle_equivalence() {
  int bad_gh = 0;
  for (uint64_t s = 0; s < 500; ++s) {
    const int nx = 1 + static_cast<int>(s % 4);
    const int ny = 1 + static_cast<int>((s * 7 + 3) % 4);
    FiniteSpace x = random_metric(nx, 910'000 + s);
    FiniteSpace y = random_metric(ny, 920'000 + s);
    const double engine = gh_exact(x, y).value.hi;
    const double reference = oracle::oracle_gh(x, y);
    if (std::abs(engine - reference) > 1e-12) ++bad_gh;
  }

  // the full corpus: every space appears in the ring, plus self and cross
  // pairs
  std::vector<FiniteSpace> corp = corpus(kCorpusSeed);
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < corp.size(); ++i)
    pairs.push_back(
        {static_cast<int>(i), static_cast<int>((i + 1) % corp.size())});
  pairs.push_back({0, 0});
  pairs.push_back({5, 5});
  pairs.push_back({2, 17});
  pairs.push_back({4, 30});
  pairs.push_back({9, 26});

  int bad_rho = 0;
  for (auto [i, j] : pairs) {
    for (int n = 1; n <= 3; ++n) {
      RhoLevel lvl = rho_level(handle(corp[i]), handle(corp[j]), n);
      const double reference =
          oracle::oracle_rho_level(handle(corp[i]), handle(corp[j]), n, 0.25);
      if (!lvl.value.contains(reference, 1e-9)) ++bad_rho;
    }
  }
  std::ostringstream os;
  os << "500 gh pairs (" << bad_gh << " off), " << pairs.size()
     << " corpus pairs x 3 levels (" << bad_rho << " outside)";
  return {bad_gh == 0 && bad_rho == 0, os.str()};
}

std::pair<bool, std::string> run_three_lipschitz() {
  std::vector<FiniteSpace> corp = corpus(kCorpusSeed);
  std::vector<FiniteSpace> small;
  for (const FiniteSpace& s : corp)
    if (s.size() <= 4) small.push_back(s);
  int checked = 0, bad = 0;
  double worst = 0.0;
  for (size_t i = 0; i < small.size(); ++i)
    for (size_t j = i + 1; j < small.size(); ++j) {
      const double d = gh_exact(small[i], small[j]).value.hi;
      RhoEstimate est = rho(handle(small[i]), handle(small[j]));
      ++checked;
      const double margin = est.outer().lo - 3.0 * d;
      worst = std::max(worst, margin);
      if (margin > 1e-9) ++bad;
    }
  std::ostringstream os;
  os << checked << " pairs, worst slack " << fmt(worst) << " (" << bad
     << " over)";
  return {bad == 0, os.str()};
}

std::pair<bool, std::string> run_sigma_closed_form() {
  int bad = 0;
  double worst_width = 0.0;
  for (int m = 1; m < 5; ++m)
    for (int n = m + 1; n <= 5; ++n) {
      FiniteSpace a = sigma_space(m, m == 1 ? ExtReal(0.0) : ExtReal(1.0));
      FiniteSpace b = sigma_space(n, ExtReal(1.0));
      RhoEstimate est = rho(handle(a), handle(b));
      const double expect = std::pow(2.0, -m - 1);
      worst_width = std::max(worst_width, est.total.width());
      if (!est.total.contains(expect, 1e-9) || est.total.width() > 0.08) ++bad;
    }
  std::ostringstream os;
  os << "10 pairs, worst width " << fmt(worst_width) << " (" << bad << " bad)";
  return {bad == 0, os.str()};
}

std::pair<bool, std::string> run_spider_separation() {
  FiniteSpace sp8 = generate(SpaceRecipe::spider(8, 1.0, 2)).space;
  FiniteSpace sp16 = generate(SpaceRecipe::spider(16, 1.0, 2)).space;
  GhResult b = gh_bounds(sp8, sp16);
  const bool sep = b.value.lo >= 0.4;

  FiniteSpace sp64 = generate(SpaceRecipe::spider(64, 1.0, 2)).space;
  std::vector<double> his, los;
  for (int n : {2, 4, 8, 16}) {
    FiniteSpace spn = generate(SpaceRecipe::spider(n, 1.0, 2)).space;
    RhoEstimate est = rho(handle(spn), handle(sp64));
    his.push_back(est.total.hi);
    los.push_back(est.total.lo);
  }
  bool mono = true;
  for (size_t k = 1; k < his.size(); ++k)
    if (his[k] > his[k - 1] + 1e-9) mono = false;
  const bool crossed = his.back() < los.front();
  std::ostringstream os;
  os << "gh lo " << fmt(b.value.lo) << "; rho hi";
  for (double h : his) os << " " << fmt(h);
  os << "; first lo " << fmt(los.front());
  return {sep && mono && crossed, os.str()};
}

std::pair<bool, std::string> run_transfer_constant() {
  std::vector<FiniteSpace> corp = corpus(kCorpusSeed);
  std::vector<FiniteSpace> small;
  for (const FiniteSpace& s : corp)
    if (s.size() <= 4 && !s.has_infinite_entry()) small.push_back(s);
  int checked = 0, bad = 0;
  for (size_t i = 0; i < small.size() && checked < 200; ++i)
    for (size_t j = 0; j < small.size() && checked < 200; ++j) {
      if (i == j) continue;
      const FiniteSpace& x = small[i];
      const FiniteSpace& y = small[j];
      const double e = gh_exact(x, y).value.hi + 1e-12;
      std::vector<FiniteSpace> members;
      members.push_back(y);
      if (y.size() >= 2) members.push_back(y.restrict({0, 1}));
      if (y.size() >= 3) members.push_back(y.restrict({0, 1, 2}));
      if (y.diameter().value() > 0) {
        members.push_back(truncate(y, 0.8 * y.diameter().value()));
        members.push_back(scale(y, 0.75));
      }
      for (const FiniteSpace& yp : members) {
        if (checked >= 200) break;
        ++checked;
        const double cap = std::max(yp.diameter().value(), 1e-6) + 1e-12;
        FiniteSpace out = transfer_net(yp, x, e, cap);
        const bool ok = gh_exact(out, yp).value.hi <= 3.0 * e + 1e-9 &&
                        widening_defect(out, x).defect.value() <= 1e-9 &&
                        out.diameter().value() <= cap + 1e-9 &&
                        out.size() <= yp.size();
        if (!ok) ++bad;
      }
    }
  std::ostringstream os;
  os << checked << " transfers (" << bad << " over the 3-eps bound)";
  return {checked >= 200 && bad == 0, os.str()};
}

std::pair<bool, std::string> run_mcshane_contract() {
  int bad = 0;
  for (uint64_t s = 0; s < 200; ++s) {
    const int n = 2 + static_cast<int>(s % 5);
    FiniteSpace x = random_metric(n, 350'000 + s);
    const double eps = 0.02 + 0.01 * static_cast<double>(s % 11);
    SplitMix64 rng(8'800 + s);
    CoordinateMap f = kuratowski(x);
    for (auto& row : f.values)
      for (double& v : row) v += rng.uniform(-eps / 2, eps / 2);
    CoordinateMap g = mcshane_fix(x, f, eps);
    for (int i = 0; i < x.size(); ++i) {
      for (int j = 0; j < x.size(); ++j)
        if (g.sup_dist(i, j) > x.dist(i, j).value() + 1e-12) ++bad;
      for (size_t c = 0; c < f.values[i].size(); ++c)
        if (std::abs(g.values[i][c] - f.values[i][c]) > eps + 1e-12) ++bad;
    }
  }
  std::ostringstream os;
  os << "200 instances (" << bad << " contract violations)";
  return {bad == 0, os.str()};
}

std::pair<bool, std::string> run_rho_bounds() {
  std::vector<FiniteSpace> corp = corpus(kCorpusSeed);
  int checked = 0, bad = 0;
  auto inspect = [&](const RhoEstimate& est) {
    ++checked;
    if (est.total.hi > 2.0 + est.tail_bound + 1e-9) ++bad;
    for (const RhoLevel& l : est.levels) {
      if (l.value.lo < -1e-12 || l.value.hi > l.n + 1e-12) ++bad;
      if (l.value.lo > l.value.hi) ++bad;
    }
    if (est.total.lo > est.total.hi) ++bad;
  };
  for (size_t i = 0; i < corp.size(); i += 4)
    for (size_t j = i; j < corp.size(); j += 7)
      inspect(rho(handle(corp[i]), handle(corp[j])));
  inspect(rho(handle(corp[0]), PyramidHandle::max_sentinel()));
  inspect(rho(PyramidHandle::max_sentinel(), PyramidHandle::max_sentinel()));
  std::vector<PointedSpace> pcorp = pointed_corpus(kCorpusSeed);
  for (size_t i = 0; i < pcorp.size(); i += 9)
    inspect(rho_pointed(PyramidHandle::finite_pointed(pcorp[i]),
                        PyramidHandle::finite_pointed(pcorp[(i + 4) % pcorp.size()])));
  std::ostringstream os;
  os << checked << " estimates (" << bad << " out of bounds)";
  return {bad == 0, os.str()};
}

std::pair<bool, std::string> run_pointed_scaling() {
  std::vector<PointedSpace> pcorp = pointed_corpus(kCorpusSeed);
  std::vector<PointedSpace> eligible;
  for (const PointedSpace& p : pcorp)
    if (!p.space.has_infinite_entry() && p.space.size() <= 5 &&
        p.space.diameter().value() > 0)
      eligible.push_back(p);
  const std::vector<std::pair<double, double>> factors{
      {0.5, 1.0}, {0.8, 1.0}, {1.0, 1.25}, {0.5, 1.25}, {0.8, 1.25}};
  int checked = 0, bad = 0;
  for (size_t t = 0; checked < 50; ++t) {
    const PointedSpace& p = eligible[t % eligible.size()];
    const auto& [sf, tf] = factors[(t / eligible.size() + t) % factors.size()];
    const double diam = p.space.diameter().value();
    RhoEstimate est =
        rho_pointed(PyramidHandle::finite_pointed(
                        PointedSpace(scale(p.space, sf), p.base)),
                    PyramidHandle::finite_pointed(
                        PointedSpace(scale(p.space, tf), p.base)));
    ++checked;
    if (est.outer().lo > 0.5 * diam * std::abs(sf - tf) + 1e-9) ++bad;
  }
  std::ostringstream os;
  os << checked << " scalings (" << bad << " over the half-diameter bound)";
  return {checked >= 50 && bad == 0, os.str()};
}

std::pair<bool, std::string> run_ball_modulus() {
  std::vector<PointedSpace> probes{
      generate(SpaceRecipe::spider(3, 1.0, 8)).pointed(),
      generate(SpaceRecipe::spider(4, 1.0, 12)).pointed(),
      generate(SpaceRecipe::path(2.0, 16)).pointed(),
  };
  std::vector<double> spacing{1.0 / 8, 1.0 / 12, 2.0 / 16};
  const std::vector<std::pair<double, double>> rs{
      {0.5, 1.0}, {1.0, 2.0}, {1.0, 1.25}, {0.8, 1.0}};
  int bad = 0, checked = 0;
  for (size_t p = 0; p + 1 < probes.size(); ++p) {
    const PointedSpace& a = probes[p];
    const PointedSpace& b = probes[p + 1];
    for (auto [r1, r2] : rs) {
      RhoEstimate e1 = rescaled_ball_rho(a, b, r1);
      RhoEstimate e2 = rescaled_ball_rho(a, b, r2);
      const double lhs = std::abs(e1.total.mid() - e2.total.mid());
      const double rhs = 8.0 * std::abs(1.0 - r2 / r1) + e1.total.width() +
                         e2.total.width() + 2.0 * spacing[p] / r1 +
                         e1.model_gap + e2.model_gap + 1e-9;
      ++checked;
      if (lhs > rhs) ++bad;
    }
  }
  std::ostringstream os;
  os << checked << " radius pairs (" << bad << " over the modulus)";
  return {bad == 0, os.str()};
}

std::pair<bool, std::string> run_long_space_maximality() {
  int bad = 0;
  std::ostringstream os;
  const double b16 = (2.0 + std::sqrt(16.0)) * std::pow(2.0, 1.0 - std::sqrt(16.0));
  if (std::abs(b16 - 0.75) > 1e-12) ++bad;  // the closed form at R = 16
  for (int R : {4, 9, 16}) {
    GeneratedSpace path = generate(SpaceRecipe::path(R, 4 * R));
    RhoEstimate est = rho_pointed(PyramidHandle::finite_pointed(path.pointed()),
                                  PyramidHandle::max_sentinel());
    const double bound =
        (2.0 + std::sqrt(R)) * std::pow(2.0, 1.0 - std::sqrt(R));
    os << "R=" << R << " lo " << fmt(est.total.lo) << " bound " << fmt(bound)
       << "; ";
    if (est.total.lo > bound + 1e-9) ++bad;
  }
  return {bad == 0, os.str()};
}

std::pair<bool, std::string> run_rho0_comparison() {
  std::vector<PointedSpace> pcorp = pointed_corpus(kCorpusSeed);
  std::vector<PointedSpace> eligible;
  for (const PointedSpace& p : pcorp)
    if (!p.space.has_infinite_entry() && p.radius().value() <= 1.0 &&
        p.space.size() <= 7)
      eligible.push_back(p);
  const double big_c = 4.0 / (std::exp(-1.0) - std::exp(-4.0));
  QuadratureScheme scheme = QuadratureScheme::geometric(0.05, 3.0, 12);
  int checked = 0, bad = 0;
  for (size_t t = 0; checked < 20 && t < 40; ++t) {
    const PointedSpace& a = eligible[t % eligible.size()];
    const PointedSpace& b = eligible[(t * 3 + 1) % eligible.size()];
    if (a.space.content_hash() == b.space.content_hash()) continue;
    RhoEstimate direct = rho_pointed(PyramidHandle::finite_pointed(a),
                                     PyramidHandle::finite_pointed(b));
    Rho0Report rep = rho0(a, b, scheme);
    ++checked;
    if (direct.outer().lo > big_c * rep.outer().hi + 1e-6) ++bad;
  }
  std::ostringstream os;
  os << checked << " pairs with factor " << fmt(big_c) << " (" << bad
     << " over)";
  return {checked >= 20 && bad == 0, os.str()};
}

std::pair<bool, std::string> run_pyramid_axioms() {
  std::vector<FiniteSpace> corp = corpus(kCorpusSeed);
  int closure_bad = 0, directed_bad = 0, probes = 0;
  SplitMix64 rng(515'151);

  auto check_directed = [&](const FiniteSpace& x, const PyramidHandle& h,
                            int n, const FiniteSpace& e1,
                            const FiniteSpace& e2) {
    FiniteSpace xd = truncate(x, static_cast<double>(n));
    auto w1 = widening_defect(e1, xd);
    auto w2 = widening_defect(e2, xd);
    if (w1.defect.value() > 1e-9 || w2.defect.value() > 1e-9) {
      ++directed_bad;
      return;
    }
    std::set<int> pts;
    for (int v : w1.witness.assignment) pts.insert(v);
    for (int v : w2.witness.assignment) pts.insert(v);
    std::vector<int> idx(pts.begin(), pts.end());
    FiniteSpace z = truncate(xd.restrict(idx), static_cast<double>(n));
    const bool ok = static_cast<int>(z.size()) <= 2 * n &&
                    member(z, h, 1e-9) &&
                    widening_defect(e1, z).defect.value() <= 1e-9 &&
                    widening_defect(e2, z).defect.value() <= 1e-9;
    if (!ok) ++directed_bad;
  };

  for (size_t ci = 0; ci < corp.size(); ci += 5) {
    const FiniteSpace& x = corp[ci];
    PyramidHandle h = handle(x);
    for (int n = 2; n <= 5; ++n) {
      SliceNet net = slice_net(h, n, static_cast<double>(n), 0.25);
      if (net.elements.empty()) continue;
      if (net.certified && n <= 3) {
        // exhaustive downward closure: every one-step grid minor of every
        // element stays a member
        for (const FiniteSpace& e : net.elements) {
          for (int i = 0; i < e.size(); ++i)
            for (int j = i + 1; j < e.size(); ++j) {
              RawMatrix m = e.matrix();
              const double v = m[i][j].value() - 0.25;
              if (v <= 0) continue;
              m[i][j] = m[j][i] = ExtReal(v);
              if (!validate(m).ok()) continue;
              ++probes;
              if (!member(FiniteSpace(m), h, 1e-9)) ++closure_bad;
            }
        }
        const size_t count = net.elements.size();
        if (count * count <= 800) {
          for (size_t a = 0; a < count; ++a)
            for (size_t b = a; b < count; ++b) {
              ++probes;
              check_directed(x, h, n, net.elements[a], net.elements[b]);
            }
        } else {
          for (int t = 0; t < 200; ++t) {
            ++probes;
            check_directed(x, h, n, net.elements[rng.below(count)],
                           net.elements[rng.below(count)]);
          }
        }
      } else {
        for (int t = 0; t < 200; ++t) {
          const FiniteSpace& e = net.elements[rng.below(net.elements.size())];
          const double f = 0.3 + 0.6 * rng.uniform();
          ++probes;
          if (!member(scale(e, f), h, 1e-9)) ++closure_bad;
          check_directed(x, h, n, e,
                         net.elements[rng.below(net.elements.size())]);
        }
      }
    }
  }
  std::ostringstream os;
  os << probes << " probes (" << closure_bad << " closure, " << directed_bad
     << " directedness failures)";
  return {closure_bad == 0 && directed_bad == 0, os.str()};
}

std::pair<bool, std::string> run_equivalence_consistency() {
  std::vector<FiniteSpace> corp = corpus(kCorpusSeed);
  std::vector<FiniteSpace> small;
  for (const FiniteSpace& s : corp)
    if (s.size() <= 6 && !s.has_infinite_entry()) small.push_back(s);
  int checked = 0, bad = 0;
  auto consistent = [&](const FiniteSpace& x, const FiniteSpace& y) {
    const bool eq = equivalent(x, y, 1e-9);
    RhoEstimate est = rho(handle(x), handle(y));
    const bool rho_zero =
        est.total.lo <= 1e-12 && est.total.hi <= est.tail_bound + 1e-9;
    ++checked;
    if (eq != rho_zero) ++bad;
    if (eq && gh_exact(x, y).value.hi > 1e-12) ++bad;
  };
  for (size_t i = 0; i < small.size(); i += 2)
    consistent(small[i], small[(i + 1) % small.size()]);
  // relabeled copies must register as equivalent
  SplitMix64 rng(77'000);
  for (int t = 0; t < 5; ++t) {
    const FiniteSpace& x = small[(t * 7) % small.size()];
    std::vector<int> perm(x.size());
    for (int i = 0; i < x.size(); ++i) perm[i] = i;
    for (int i = x.size() - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(i + 1)]);
    consistent(x, x.restrict(perm));
  }
  std::ostringstream os;
  os << checked << " pairs (" << bad << " inconsistent)";
  return {bad == 0, os.str()};
}

}  // namespace

const std::vector<Criterion>& verification_criteria() {
  static const std::vector<Criterion> criteria{
      {"C01", "oracle-equivalence", 120.0, run_oracle_equivalence},
      {"C02", "rho-three-lipschitz", 300.0, run_three_lipschitz},
      {"C03", "sigma-closed-form", 180.0, run_sigma_closed_form},
      {"C04", "spider-separation", 600.0, run_spider_separation},
      {"C05", "transfer-constant", 0.0, run_transfer_constant},
      {"C06", "mcshane-contract", 0.0, run_mcshane_contract},
      {"C07", "rho-global-bounds", 0.0, run_rho_bounds},
      {"C08", "pointed-scaling", 0.0, run_pointed_scaling},
      {"C09", "ball-modulus", 0.0, run_ball_modulus},
      {"C10", "long-space-maximality", 0.0, run_long_space_maximality},
      {"C11", "rho0-comparison", 0.0, run_rho0_comparison},
      {"C12", "pyramid-axioms", 0.0, run_pyramid_axioms},
      {"C13", "equivalence-consistency", 0.0, run_equivalence_consistency},
  };
  return criteria;
}

std::vector<CriterionResult> run_verification(
    const std::vector<std::string>& filter, std::ostream* progress) {
  std::vector<CriterionResult> results;
  for (const Criterion& c : verification_criteria()) {
    if (!filter.empty()) {
      bool match = false;
      for (const std::string& f : filter)
        if (c.id == f || c.name == f) match = true;
      if (!match) continue;
    }
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto [ok, detail] = c.run();
      r.passed = ok;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (c.time_budget_s > 0.0 && r.seconds > c.time_budget_s) {
      r.passed = false;
      r.detail += " [over time budget " + fmt(c.time_budget_s) + "s]";
    }
    if (progress) {
      (*progress) << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " "
                  << r.name << " (" << fmt(r.seconds) << "s) " << r.detail
                  << "\n";
      progress->flush();
    }
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    if (!r.passed) return false;
  return !results.empty();
}

}  // namespace ghp
