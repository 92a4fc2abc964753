/* Apache License, Version 2.0 */
#pragma once

#include <vector>

#include "ghp/errors.hpp"
#include "ghp/finite_space.hpp"

namespace ghp {

// Map from the points of a space into (R^N, sup norm): one row per point.
struct CoordinateMap {
  std::vector<std::vector<double>> values;

  int dim() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
  double sup_dist(int i, int j) const;
};

// Isometric embedding i -> (d(i,0), ..., d(i,n-1)) into sup norm.
// Throws PreconditionError on infinite entries.
CoordinateMap kuratowski(const FiniteSpace& x);

// Coordinatewise min-convolution with the metric:
//   out_c(i) = min_j ( f_c(j) + d(i, j) ).
// Given f 1-Lipschitz up to eps (sup norm), the output is 1-Lipschitz and
// moves no point by more than eps. Throws PreconditionError when the input
// violates the hypothesis.
CoordinateMap mcshane_fix(const FiniteSpace& x, const CoordinateMap& f,
                          double eps, double tol = 1e-9);

// Given yp dominated by the handle space x up to defect 2*eps, produce a
// space on at most |yp| points that is dominated by x (defect ~0) and lies
// within GH distance 3*eps of yp, with diameter at most cap. The construction
// maps yp into x by the minimal-defect witness, pulls back through the
// embedding of yp, repairs to 1-Lipschitz, reads off the sup-norm matrix and
// truncates; zero-distance duplicates are merged at the end.
FiniteSpace transfer_net(const FiniteSpace& yp, const FiniteSpace& x,
                         double eps, double cap, double tol = 1e-9);

}  // namespace ghp
