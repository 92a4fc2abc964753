/* Apache License, Version 2.0 */
#include "ghp/gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

namespace ghp {

namespace {

struct DenseMetric {
  int n = 0;
  std::vector<double> d;
  double at(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
};

DenseMetric densify(const FiniteSpace& x, const char* who) {
  if (x.has_infinite_entry())
    throw PreconditionError(std::string(who) +
                            ": infinite entries are not supported, truncate first");
  DenseMetric m;
  m.n = x.size();
  m.d.resize(static_cast<size_t>(m.n) * m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      m.d[static_cast<size_t>(i) * m.n + j] = x.dist(i, j).value();
  return m;
}

std::vector<int> ecc_order(const DenseMetric& m) {
  std::vector<double> ecc(m.n, 0.0);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) ecc[i] = std::max(ecc[i], m.at(i, j));
  std::vector<int> order(m.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (ecc[a] == ecc[b]) return a < b;
    return ecc[a] > ecc[b];
  });
  return order;
}

// Exact minimal-distortion search over map pairs (f : X->Y, g : Y->X).
// dis(f,g) = max( |dX(i,i') - dY(fi,fi')|, |dX(gj,gj') - dY(j,j')|,
//                 |dX(i,gj) - dY(fi,j)| ).
struct GhSearch {
  const DenseMetric& X;
  const DenseMetric& Y;
  uint64_t budget;
  double target_lo;  // certified lower bound on minimal distortion

  std::vector<int> orderX, orderY;
  std::vector<int> fx, gy;
  std::vector<int> assignedX, assignedY;
  uint64_t nodes = 0;

  bool found = false;
  double best = 0.0;
  std::vector<int> best_fx, best_gy;
  int pin_x = -1, pin_y = -1;

  GhSearch(const DenseMetric& x, const DenseMetric& y, uint64_t budget_,
           double target_lo_)
      : X(x), Y(y), budget(budget_), target_lo(target_lo_) {
    orderX = ecc_order(X);
    orderY = ecc_order(Y);
    fx.assign(X.n, -1);
    gy.assign(Y.n, -1);
  }

  void pin(int bx, int by) {
    pin_x = bx;
    pin_y = by;
    fx[bx] = by;
    gy[by] = bx;
    orderX.erase(std::find(orderX.begin(), orderX.end(), bx));
    orderY.erase(std::find(orderY.begin(), orderY.end(), by));
    assignedX.push_back(bx);
    assignedY.push_back(by);
  }

  bool prune(double partial) const { return found && partial >= best; }
  bool optimal_hit() const { return found && best <= target_lo; }

  // Incremental cost of appending (xi -> yj) to the f-assignment.
  double f_extend(double partial, int xi, int yj) const {
    for (int a : assignedX)
      partial = std::max(partial, std::abs(X.at(xi, a) - Y.at(yj, fx[a])));
    return partial;
  }

  // Incremental cost of appending (yj -> xi) to the g-assignment. The f-map
  // is complete here, so cross terms against every X point apply.
  double g_extend(double partial, int yj, int xi) const {
    for (int b : assignedY)
      partial = std::max(partial, std::abs(X.at(xi, gy[b]) - Y.at(yj, b)));
    for (int i = 0; i < X.n; ++i)
      partial = std::max(partial, std::abs(X.at(i, xi) - Y.at(fx[i], yj)));
    return partial;
  }

  void seed_greedy() {
    double partial = 0.0;
    for (int xi : orderX) {
      int pick = -1;
      double pick_cost = 0.0;
      for (int step = -1; step < Y.n; ++step) {
        const int yj = step < 0 ? (xi < Y.n ? xi : 0) : step;  // identity first
        const double c = f_extend(partial, xi, yj);
        if (pick < 0 || c < pick_cost) {
          pick = yj;
          pick_cost = c;
        }
      }
      fx[xi] = pick;
      assignedX.push_back(xi);
      partial = pick_cost;
    }
    for (int yj : orderY) {
      int pick = -1;
      double pick_cost = 0.0;
      for (int step = -1; step < X.n; ++step) {
        const int xi = step < 0 ? (yj < X.n ? yj : 0) : step;
        const double c = g_extend(partial, yj, xi);
        if (pick < 0 || c < pick_cost) {
          pick = xi;
          pick_cost = c;
        }
      }
      gy[yj] = pick;
      assignedY.push_back(yj);
      partial = pick_cost;
    }
    found = true;
    best = partial;
    best_fx = fx;
    best_gy = gy;
    // reset to the pinned-only state
    for (int xi : orderX) fx[xi] = -1;
    for (int yj : orderY) gy[yj] = -1;
    assignedX.clear();
    assignedY.clear();
    if (pin_x >= 0) {
      assignedX.push_back(pin_x);
      assignedY.push_back(pin_y);
    }
  }

  void run() {
    seed_greedy();
    if (optimal_hit()) return;
    dfs_f(0, 0.0);
  }

  void dfs_f(int depth, double partial) {
    if (optimal_hit()) return;
    if (++nodes > budget) throw SizeLimitError("gh_exact: node budget exceeded");
    if (depth == static_cast<int>(orderX.size())) {
      dfs_g(0, partial);
      return;
    }
    const int xi = orderX[depth];
    for (int yj = 0; yj < Y.n; ++yj) {
      const double ext = f_extend(partial, xi, yj);
      if (prune(ext)) continue;
      fx[xi] = yj;
      assignedX.push_back(xi);
      dfs_f(depth + 1, ext);
      assignedX.pop_back();
      fx[xi] = -1;
      if (optimal_hit()) return;
    }
  }

  void dfs_g(int depth, double partial) {
    if (optimal_hit()) return;
    if (++nodes > budget) throw SizeLimitError("gh_exact: node budget exceeded");
    if (depth == static_cast<int>(orderY.size())) {
      if (!found || partial < best) {
        found = true;
        best = partial;
        best_fx = fx;
        best_gy = gy;
      }
      return;
    }
    const int yj = orderY[depth];
    for (int xi = 0; xi < X.n; ++xi) {
      const double ext = g_extend(partial, yj, xi);
      if (prune(ext)) continue;
      gy[yj] = xi;
      assignedY.push_back(yj);
      dfs_g(depth + 1, ext);
      assignedY.pop_back();
      gy[yj] = -1;
      if (optimal_hit()) return;
    }
  }

  Correspondence witness() const {
    std::set<std::pair<int, int>> s;
    for (int i = 0; i < X.n; ++i) s.insert({i, best_fx[i]});
    for (int j = 0; j < Y.n; ++j) s.insert({best_gy[j], j});
    Correspondence c;
    c.pairs.assign(s.begin(), s.end());
    return c;
  }
};

double cheap_dis_lower_bound(const FiniteSpace& x, const FiniteSpace& y) {
  return 2.0 * std::max(lb_diameter(x, y), lb_eccentricity(x, y));
}

}  // namespace

ExtReal distortion(const FiniteSpace& x, const FiniteSpace& y,
                   const Correspondence& c) {
  ExtReal dis(0.0);
  for (size_t a = 0; a < c.pairs.size(); ++a)
    for (size_t b = a; b < c.pairs.size(); ++b) {
      const auto& [i1, j1] = c.pairs[a];
      const auto& [i2, j2] = c.pairs[b];
      dis = ext_max(dis, ext_abs_diff(x.dist(i1, i2), y.dist(j1, j2)));
    }
  return dis;
}

GhResult gh_exact(const FiniteSpace& x, const FiniteSpace& y,
                  const GhLimits& limits) {
  DenseMetric X = densify(x, "gh_exact");
  DenseMetric Y = densify(y, "gh_exact");
  GhSearch s(X, Y, limits.max_nodes, cheap_dis_lower_bound(x, y));
  s.run();
  const double v = 0.5 * s.best;
  return {Interval::point(v), s.witness(), GhMethod::Exact};
}

GhResult gh_pointed(const PointedSpace& x, const PointedSpace& y,
                    const GhLimits& limits) {
  DenseMetric X = densify(x.space, "gh_pointed");
  DenseMetric Y = densify(y.space, "gh_pointed");
  // The unpointed bound stays valid: constraining the correspondence can only
  // raise the minimal distortion.
  GhSearch s(X, Y, limits.max_nodes, cheap_dis_lower_bound(x.space, y.space));
  s.pin(x.base, y.base);
  s.run();
  const double v = 0.5 * s.best;
  return {Interval::point(v), s.witness(), GhMethod::Exact};
}

double lb_diameter(const FiniteSpace& x, const FiniteSpace& y) {
  return 0.5 * std::abs(x.diameter().value() - y.diameter().value());
}

double lb_eccentricity(const FiniteSpace& x, const FiniteSpace& y) {
  // Related points have eccentricities within the distortion of each other,
  // so the Hausdorff distance between the eccentricity sets is a certified
  // bound on the minimal distortion.
  std::vector<double> ex(x.size()), ey(y.size());
  for (int i = 0; i < x.size(); ++i) ex[i] = x.eccentricity(i).value();
  for (int j = 0; j < y.size(); ++j) ey[j] = y.eccentricity(j).value();
  double h = 0.0;
  for (double a : ex) {
    double m = std::numeric_limits<double>::infinity();
    for (double b : ey) m = std::min(m, std::abs(a - b));
    h = std::max(h, m);
  }
  for (double b : ey) {
    double m = std::numeric_limits<double>::infinity();
    for (double a : ex) m = std::min(m, std::abs(a - b));
    h = std::max(h, m);
  }
  return 0.5 * h;
}

namespace {

// Insertion radii of farthest-point sampling: fps[m-1] is the minimal
// pairwise distance among the first m sampled points (non-increasing in m).
std::vector<double> fps_radii(const DenseMetric& m) {
  std::vector<double> radii;
  std::vector<double> dist_to_set(m.n, std::numeric_limits<double>::infinity());
  // start at the point of maximal eccentricity
  int cur = 0;
  double best_ecc = -1.0;
  for (int i = 0; i < m.n; ++i) {
    double e = 0.0;
    for (int j = 0; j < m.n; ++j) e = std::max(e, m.at(i, j));
    if (e > best_ecc) {
      best_ecc = e;
      cur = i;
    }
  }
  radii.push_back(std::numeric_limits<double>::infinity());  // m = 1
  for (int picked = 1; picked < m.n; ++picked) {
    for (int i = 0; i < m.n; ++i)
      dist_to_set[i] = std::min(dist_to_set[i], m.at(cur, i));
    int next = 0;
    double far = -1.0;
    for (int i = 0; i < m.n; ++i)
      if (dist_to_set[i] > far) {
        far = dist_to_set[i];
        next = i;
      }
    radii.push_back(far);  // min pairwise distance among picked+1 points
    cur = next;
  }
  return radii;
}

// Size of a greedy covering of the space by closed balls of radius h.
int greedy_cover_size(const DenseMetric& m, double h) {
  std::vector<bool> covered(m.n, false);
  int balls = 0;
  for (int i = 0; i < m.n; ++i) {
    if (covered[i]) continue;
    ++balls;
    for (int j = 0; j < m.n; ++j)
      if (m.at(i, j) <= h) covered[j] = true;
  }
  return balls;
}

// Directed packing/covering mismatch: if B holds m points pairwise >= s while
// A is covered by m-1 balls of radius h (so any m points of A contain a pair
// <= 2h), every correspondence distorts by at least s - 2h.
double directed_packing_bound(const DenseMetric& a, const DenseMetric& b) {
  std::vector<double> s_b = fps_radii(b);
  std::vector<double> hs{0.0};
  for (int i = 0; i < a.n; ++i)
    for (int j = i + 1; j < a.n; ++j) hs.push_back(a.at(i, j));
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  std::vector<int> cover_sizes(hs.size());
  for (size_t k = 0; k < hs.size(); ++k) cover_sizes[k] = greedy_cover_size(a, hs[k]);
  double bound = 0.0;
  for (int m = 2; m <= b.n; ++m) {
    const double s = s_b[m - 1];
    // smallest certified t = 2h with cover(h) <= m-1
    double t = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < hs.size(); ++k)
      if (cover_sizes[k] <= m - 1) {
        t = 2.0 * hs[k];
        break;
      }
    if (m > a.n) t = std::min(t, 0.0);  // pigeonhole: some pair collapses
    if (std::isfinite(t)) bound = std::max(bound, s - t);
  }
  return bound;
}

}  // namespace

double lb_packing_covering(const FiniteSpace& x, const FiniteSpace& y) {
  DenseMetric X = densify(x, "lb_packing_covering");
  DenseMetric Y = densify(y, "lb_packing_covering");
  return 0.5 *
         std::max(directed_packing_bound(X, Y), directed_packing_bound(Y, X));
}

double lb_sorted_profile(const FiniteSpace& x, const FiniteSpace& y) {
  // Bottleneck mismatch of the sorted distance multisets; applied only to
  // equal-cardinality spaces.
  if (x.size() != y.size() || x.size() < 2) return 0.0;
  std::vector<double> a, b;
  for (int i = 0; i < x.size(); ++i)
    for (int j = i + 1; j < x.size(); ++j) {
      a.push_back(x.dist(i, j).value());
      b.push_back(y.dist(i, j).value());
    }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double h = 0.0;
  for (size_t k = 0; k < a.size(); ++k) h = std::max(h, std::abs(a[k] - b[k]));
  return 0.5 * h;
}

GhResult gh_bounds(const FiniteSpace& x, const FiniteSpace& y,
                   uint64_t budget) {
  DenseMetric X = densify(x, "gh_bounds");
  DenseMetric Y = densify(y, "gh_bounds");

  // lb_sorted_profile is deliberately not part of the certified floor: the
  // bottleneck-of-sorted-multisets argument needs a bijective optimal
  // correspondence, which is not guaranteed. It is exposed for diagnostics.
  double lo = std::max({lb_diameter(x, y), lb_eccentricity(x, y),
                        lb_packing_covering(x, y)});

  // Upper bound: greedy correspondence, then first-improvement local search
  // over single reassignments.
  GhSearch s(X, Y, budget, 0.0);
  s.seed_greedy();
  std::vector<int> fx = s.best_fx, gy = s.best_gy;

  auto full_dis = [&](const std::vector<int>& f, const std::vector<int>& g) {
    double dis = 0.0;
    for (int i = 0; i < X.n; ++i)
      for (int i2 = i; i2 < X.n; ++i2)
        dis = std::max(dis, std::abs(X.at(i, i2) - Y.at(f[i], f[i2])));
    for (int j = 0; j < Y.n; ++j)
      for (int j2 = j; j2 < Y.n; ++j2)
        dis = std::max(dis, std::abs(X.at(g[j], g[j2]) - Y.at(j, j2)));
    for (int i = 0; i < X.n; ++i)
      for (int j = 0; j < Y.n; ++j)
        dis = std::max(dis, std::abs(X.at(i, g[j]) - Y.at(f[i], j)));
    return dis;
  };

  double cur = full_dis(fx, gy);
  uint64_t work = 0;
  bool improved = true;
  while (improved && work < budget) {
    improved = false;
    for (int i = 0; i < X.n && work < budget; ++i)
      for (int j = 0; j < Y.n && work < budget; ++j) {
        ++work;
        if (fx[i] == j) continue;
        const int saved = fx[i];
        fx[i] = j;
        const double d = full_dis(fx, gy);
        if (d < cur) {
          cur = d;
          improved = true;
        } else {
          fx[i] = saved;
        }
      }
    for (int j = 0; j < Y.n && work < budget; ++j)
      for (int i = 0; i < X.n && work < budget; ++i) {
        ++work;
        if (gy[j] == i) continue;
        const int saved = gy[j];
        gy[j] = i;
        const double d = full_dis(fx, gy);
        if (d < cur) {
          cur = d;
          improved = true;
        } else {
          gy[j] = saved;
        }
      }
  }

  const double hi = 0.5 * cur;
  std::set<std::pair<int, int>> pairs;
  for (int i = 0; i < X.n; ++i) pairs.insert({i, fx[i]});
  for (int j = 0; j < Y.n; ++j) pairs.insert({gy[j], j});
  Correspondence c;
  c.pairs.assign(pairs.begin(), pairs.end());
  return {Interval(lo, hi), c, GhMethod::Bounded};
}

Interval hausdorff_between_sets(const std::vector<FiniteSpace>& a,
                                const std::vector<FiniteSpace>& b,
                                const PairwiseOracle& pairwise) {
  if (a.empty() || b.empty())
    throw PreconditionError("hausdorff_between_sets: empty set");
  auto directed = [&](const std::vector<FiniteSpace>& from,
                      const std::vector<FiniteSpace>& to) {
    Interval sup(0.0, 0.0);
    for (const auto& f : from) {
      Interval inf;
      bool first = true;
      for (const auto& t : to) {
        Interval d = pairwise(f, t);
        inf = first ? d : interval_min(inf, d);
        first = false;
        if (inf.hi <= 0.0) break;
      }
      sup = interval_max(sup, inf);
    }
    return sup;
  };
  return interval_max(directed(a, b), directed(b, a));
}

}  // namespace ghp
