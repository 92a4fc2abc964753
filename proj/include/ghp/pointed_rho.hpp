/* Apache License, Version 2.0 */
#pragma once

#include <vector>

#include "ghp/finite_space.hpp"
#include "ghp/interval.hpp"
#include "ghp/pyramid.hpp"

namespace ghp {

// Quadrature nodes for the weight r*exp(-r^2) dr on [r_min, r_max]. Segment
// masses are exact: the weight integrates in closed form.
struct QuadratureScheme {
  double r_min = 0.05;
  double r_max = 3.0;
  std::vector<double> radii;  // ascending, radii.front()=r_min, back()=r_max

  static QuadratureScheme geometric(double r_min, double r_max, int count);
  void check() const;  // throws PreconditionError on an ill-formed scheme
};

// rho_pointed of the 1/r-rescaled closed balls around the basepoints.
RhoEstimate rescaled_ball_rho(const PointedSpace& a, const PointedSpace& b,
                              double r, const RhoParams& params = {});

struct Rho0Node {
  double r = 0.0;
  Interval value;      // rescaled-ball rho at this node
  double model_gap = 0.0;
};

struct Rho0Report {
  std::vector<Rho0Node> nodes;
  double lower_tail = 0.0;    // mass below r_min times the trivial bound 2
  double upper_tail = 0.0;    // mass above r_max times the trivial bound 2
  double modulus_slack = 0.0; // in-segment variation bound, weighted
  double model_gap = 0.0;     // weighted quantization accounting
  Interval total;

  Interval outer() const {
    return {std::max(0.0, total.lo - model_gap), total.hi + model_gap};
  }
};

// Weighted integral of the rescaled-ball distance. The integrand is bracketed
// on each segment by the node values widened with the (8/r)-Lipschitz modulus
// of the rescaled-ball distance, and clamped to [0, 2]; the missing tails
// enter the upper bound with the trivial integrand bound.
Rho0Report rho0(const PointedSpace& a, const PointedSpace& b,
                const QuadratureScheme& scheme = QuadratureScheme::geometric(0.05, 3.0, 32),
                const RhoParams& params = {});

// Finite proxy for ball-by-ball equivalence: equivalence of the pointed balls
// at every quadrature node.
bool strongly_equivalent_proxy(const PointedSpace& a, const PointedSpace& b,
                               const QuadratureScheme& scheme, double tol = 1e-9);

}  // namespace ghp
