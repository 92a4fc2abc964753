/* Apache License, Version 2.0 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ghp/errors.hpp"
#include "ghp/finite_space.hpp"
#include "ghp/interval.hpp"

namespace ghp {

// Relation between the point sets of two spaces, surjective in both
// directions.
struct Correspondence {
  std::vector<std::pair<int, int>> pairs;
};

enum class GhMethod { Exact, Bounded };

struct GhResult {
  Interval value;
  std::optional<Correspondence> witness;  // attains value.hi
  GhMethod method = GhMethod::Bounded;
};

struct GhLimits {
  uint64_t max_nodes = 20'000'000;
};

// Max over related pairs of |d_X(i,i') - d_Y(j,j')| under the extended
// conventions. Half of it upper-bounds the GH distance.
ExtReal distortion(const FiniteSpace& x, const FiniteSpace& y,
                   const Correspondence& c);

// Exact GH distance as half the minimal correspondence distortion, by
// branch-and-bound over pairs of maps (X->Y, Y->X); every correspondence
// contains such a pair with no larger distortion, so the search is exact.
// Requires finite entries (truncate first). Throws SizeLimitError.
GhResult gh_exact(const FiniteSpace& x, const FiniteSpace& y,
                  const GhLimits& limits = {});

// Base-pair-constrained surrogate of the pointed GH distance: half the
// minimal distortion over correspondences containing (base_x, base_y).
// Lies within a factor 2 of the embedding-based pointed GH distance and is
// itself a metric; always >= the unpointed distance.
GhResult gh_pointed(const PointedSpace& x, const PointedSpace& y,
                    const GhLimits& limits = {});

// Certified interval for instances too large for gh_exact: lo from matched
// invariants (diameter gap, eccentricity profiles, packing vs covering
// mismatch, sorted distance profiles), hi from a greedy correspondence
// improved by local search within the budget.
GhResult gh_bounds(const FiniteSpace& x, const FiniteSpace& y,
                   uint64_t budget = 200'000);

// Individual certified lower bounds on d_GH (exposed for tests).
double lb_diameter(const FiniteSpace& x, const FiniteSpace& y);
double lb_eccentricity(const FiniteSpace& x, const FiniteSpace& y);
double lb_packing_covering(const FiniteSpace& x, const FiniteSpace& y);
double lb_sorted_profile(const FiniteSpace& x, const FiniteSpace& y);

using PairwiseOracle =
    std::function<Interval(const FiniteSpace&, const FiniteSpace&)>;

// Hausdorff distance between two finite sets of spaces, with the pairwise
// distances supplied as intervals. The result encloses the true value
// whenever every pairwise interval does.
Interval hausdorff_between_sets(const std::vector<FiniteSpace>& a,
                                const std::vector<FiniteSpace>& b,
                                const PairwiseOracle& pairwise);

}  // namespace ghp
