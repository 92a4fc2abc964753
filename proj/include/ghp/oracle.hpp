/* Apache License, Version 2.0 */
#pragma once

#include <vector>

#include "ghp/finite_space.hpp"
#include "ghp/pyramid.hpp"

namespace ghp::oracle {

// Brute-force reference implementations used to certify the engines on tiny
// instances. They deliberately share none of the engine optimizations: no
// pruning, no incremental evaluation, no shortcut bounds. Tractable up to
// five points per space and three-point slices.

// Exhaustive minimum of the correspondence distortion over all map pairs.
double oracle_gh(const FiniteSpace& x, const FiniteSpace& y);
double oracle_gh_pointed(const PointedSpace& x, const PointedSpace& y);

// Exhaustive minimal widening defect over all point maps.
ExtReal oracle_defect(const FiniteSpace& x, const FiniteSpace& y);
ExtReal oracle_defect_pointed(const PointedSpace& x, const PointedSpace& y);

// All grid metric spaces with exactly n points and entries in
// {delta, ..., vmax*delta}, up to isometry (full-permutation dedup).
std::vector<FiniteSpace> oracle_grid_universe(int n, int vmax, double delta);
// Pointed classes anchored at index 0.
std::vector<PointedSpace> oracle_grid_universe_pointed(int n, int vmax,
                                                       double delta);

// Exact grid slice of a pyramid: every universe element (sizes 1..n_cap)
// passing the unpruned membership test.
std::vector<FiniteSpace> oracle_slice(const PyramidHandle& p, int n_cap,
                                      double diam_cap, double delta,
                                      double tol = 1e-9);
std::vector<PointedSpace> oracle_slice_pointed(const PyramidHandle& p,
                                               int n_cap, double diam_cap,
                                               double delta, double tol = 1e-9);

// Exact Hausdorff distance between grid slices with oracle_gh pairwise.
double oracle_rho_level(const PyramidHandle& a, const PyramidHandle& b, int n,
                        double delta, double tol = 1e-9);
double oracle_rho_level_pointed(const PyramidHandle& a, const PyramidHandle& b,
                                int n, double delta, double tol = 1e-9);

}  // namespace ghp::oracle
