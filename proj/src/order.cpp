/* Apache License, Version 2.0 */
#include "ghp/order.hpp"

#include <algorithm>
#include <numeric>

namespace ghp {

namespace {

// Shared branch-and-bound core. In exact mode it minimizes the defect; in
// decision mode (cutoff >= 0) it only proves or refutes "defect <= cutoff",
// pruning every branch whose partial defect already exceeds the cutoff.
struct DefectSearch {
  const FiniteSpace& x;
  const FiniteSpace& y;
  uint64_t budget;
  double cutoff = -1.0;  // decision mode iff >= 0

  std::vector<int> order;       // X-indices, most constrained first
  std::vector<ExtReal> ecc_y;   // row max of Y
  std::vector<int> fmap;        // X-index -> Y-index (by original index)
  uint64_t nodes = 0;

  bool found = false;
  ExtReal best_defect = ExtReal::inf();
  std::vector<int> best_map;
  bool decision_hit = false;

  DefectSearch(const FiniteSpace& x_, const FiniteSpace& y_, uint64_t budget_)
      : x(x_), y(y_), budget(budget_) {
    const int n = x.size();
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<ExtReal> rowmax(n);
    for (int i = 0; i < n; ++i) rowmax[i] = x.eccentricity(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (rowmax[a] == rowmax[b]) return a < b;
      return rowmax[b] < rowmax[a];
    });
    ecc_y.resize(y.size());
    for (int j = 0; j < y.size(); ++j) ecc_y[j] = y.eccentricity(j);
    fmap.assign(n, -1);
  }

  // Preassign (used by the pointed variant). Must be called before run().
  void pin(int xi, int yj) {
    fmap[xi] = yj;
    order.erase(std::find(order.begin(), order.end(), xi));
    order.insert(order.begin(), xi);
  }

  bool prune(ExtReal partial) const {
    if (cutoff >= 0.0)
      return partial.is_inf() || partial.value() > cutoff;
    return found && !(partial < best_defect);
  }

  void run() {
    int pinned = 0;
    while (pinned < static_cast<int>(order.size()) && fmap[order[pinned]] >= 0)
      ++pinned;
    ExtReal partial(0.0);
    for (int a = 0; a < pinned; ++a)
      for (int b = 0; b < a; ++b)
        partial = ext_max(partial,
                          ext_excess(x.dist(order[a], order[b]),
                                     y.dist(fmap[order[a]], fmap[order[b]])));
    dfs(pinned, partial);
  }

  void dfs(int depth, ExtReal partial) {
    if (decision_hit) return;
    if (++nodes > budget) throw SizeLimitError("widening defect search budget exceeded");
    if (depth == static_cast<int>(order.size())) {
      if (cutoff >= 0.0) {
        decision_hit = true;
        return;
      }
      if (!found || partial < best_defect) {
        found = true;
        best_defect = partial;
        best_map = fmap;
      }
      return;
    }
    const int xi = order[depth];
    const ExtReal row_need = x.eccentricity(xi);
    for (int yj = 0; yj < y.size(); ++yj) {
      // Cheap bound: the largest X-distance out of xi must be matched from
      // within Y's reach at yj.
      ExtReal lb = ext_max(partial, ext_excess(row_need, ecc_y[yj]));
      if (prune(lb)) continue;
      ExtReal ext = partial;
      bool cut = false;
      for (int a = 0; a < depth; ++a) {
        ext = ext_max(ext, ext_excess(x.dist(xi, order[a]),
                                      y.dist(yj, fmap[order[a]])));
        if (prune(ext)) {
          cut = true;
          break;
        }
      }
      if (cut) continue;
      fmap[xi] = yj;
      dfs(depth + 1, ext);
      fmap[xi] = -1;
      if (decision_hit) return;
    }
  }
};

}  // namespace

DefectResult widening_defect(const FiniteSpace& x, const FiniteSpace& y,
                             const SearchLimits& limits) {
  DefectSearch s(x, y, limits.max_nodes);
  s.run();
  return {s.best_defect, PointMap{s.best_map}};
}

DefectResult widening_defect_pointed(const PointedSpace& x,
                                     const PointedSpace& y,
                                     const SearchLimits& limits) {
  DefectSearch s(x.space, y.space, limits.max_nodes);
  s.pin(x.base, y.base);
  s.run();
  return {s.best_defect, PointMap{s.best_map}};
}

bool defect_at_most(const FiniteSpace& x, const FiniteSpace& y, double tol,
                    const SearchLimits& limits) {
  DefectSearch s(x, y, limits.max_nodes);
  s.cutoff = tol;
  s.run();
  return s.decision_hit;
}

bool defect_at_most_pointed(const PointedSpace& x, const PointedSpace& y,
                            double tol, const SearchLimits& limits) {
  DefectSearch s(x.space, y.space, limits.max_nodes);
  s.cutoff = tol;
  s.pin(x.base, y.base);
  s.run();
  return s.decision_hit;
}

bool precsim(const FiniteSpace& x, const FiniteSpace& y, double tol,
             const SearchLimits& limits) {
  return defect_at_most(x, y, tol, limits);
}

bool precsim_pointed(const PointedSpace& x, const PointedSpace& y, double tol,
                     const SearchLimits& limits) {
  return defect_at_most_pointed(x, y, tol, limits);
}

bool equivalent(const FiniteSpace& x, const FiniteSpace& y, double tol,
                const SearchLimits& limits) {
  return precsim(x, y, tol, limits) && precsim(y, x, tol, limits);
}

bool equivalent_pointed(const PointedSpace& x, const PointedSpace& y,
                        double tol, const SearchLimits& limits) {
  return precsim_pointed(x, y, tol, limits) &&
         precsim_pointed(y, x, tol, limits);
}

}  // namespace ghp
