/* Apache License, Version 2.0 */
#pragma once

#include <cstdint>
#include <vector>

#include "ghp/errors.hpp"
#include "ghp/finite_space.hpp"

namespace ghp {

// Total assignment of X-indices to Y-indices (not required injective or
// surjective).
struct PointMap {
  std::vector<int> assignment;
};

// Least eps such that Y is eps-wider than X, with a witness map attaining it:
//   defect = min over maps f of  max over pairs (d_X(i,i') - d_Y(f i, f i'))^+
struct DefectResult {
  ExtReal defect;
  PointMap witness;
};

struct SearchLimits {
  uint64_t max_nodes = 50'000'000;
};

// Exact minimal widening defect of embedding X into Y, by branch-and-bound
// over point maps (most-constrained X-index first, pruned by the incumbent).
// Deterministic: first map attaining the minimum in (order, index) order wins.
// Throws SizeLimitError when the node budget is exhausted.
DefectResult widening_defect(const FiniteSpace& x, const FiniteSpace& y,
                             const SearchLimits& limits = {});

// Pointed variant: only maps sending base_x to base_y are considered.
DefectResult widening_defect_pointed(const PointedSpace& x,
                                     const PointedSpace& y,
                                     const SearchLimits& limits = {});

// Decision form: is the minimal defect <= tol? Prunes much harder than the
// exact search and is the workhorse of slice membership tests.
bool defect_at_most(const FiniteSpace& x, const FiniteSpace& y, double tol,
                    const SearchLimits& limits = {});
bool defect_at_most_pointed(const PointedSpace& x, const PointedSpace& y,
                            double tol, const SearchLimits& limits = {});

// X precsim Y: some map witnesses defect <= tol. For finite spaces this is
// the order relation realized by constant approximating sequences.
bool precsim(const FiniteSpace& x, const FiniteSpace& y, double tol = 1e-9,
             const SearchLimits& limits = {});
bool precsim_pointed(const PointedSpace& x, const PointedSpace& y,
                     double tol = 1e-9, const SearchLimits& limits = {});

// Both directed relations hold.
bool equivalent(const FiniteSpace& x, const FiniteSpace& y, double tol = 1e-9,
                const SearchLimits& limits = {});
bool equivalent_pointed(const PointedSpace& x, const PointedSpace& y,
                        double tol = 1e-9, const SearchLimits& limits = {});

}  // namespace ghp
