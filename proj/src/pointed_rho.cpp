/* Apache License, Version 2.0 */
#include "ghp/pointed_rho.hpp"

#include <algorithm>
#include <cmath>

#include "ghp/errors.hpp"
#include "ghp/order.hpp"

namespace ghp {

QuadratureScheme QuadratureScheme::geometric(double r_min, double r_max,
                                             int count) {
  QuadratureScheme s;
  s.r_min = r_min;
  s.r_max = r_max;
  if (count < 2 || !(r_min > 0.0) || !(r_min < r_max))
    throw PreconditionError("quadrature: need r_min > 0, r_min < r_max, count >= 2");
  const double ratio = std::pow(r_max / r_min, 1.0 / (count - 1));
  s.radii.resize(count);
  for (int i = 0; i < count; ++i) s.radii[i] = r_min * std::pow(ratio, i);
  s.radii.front() = r_min;
  s.radii.back() = r_max;
  return s;
}

void QuadratureScheme::check() const {
  if (radii.size() < 2 || !(r_min > 0.0) || !(r_min < r_max))
    throw PreconditionError("quadrature: ill-formed scheme");
  for (size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] < radii[i + 1]))
      throw PreconditionError("quadrature: radii must be strictly increasing");
}

RhoEstimate rescaled_ball_rho(const PointedSpace& a, const PointedSpace& b,
                              double r, const RhoParams& params) {
  if (!(r > 0.0)) throw PreconditionError("rescaled_ball_rho: r must be > 0");
  PointedSpace ba = ball(a, r);
  PointedSpace bb = ball(b, r);
  PointedSpace ra(scale(ba.space, 1.0 / r), ba.base);
  PointedSpace rb(scale(bb.space, 1.0 / r), bb.base);
  return rho_pointed(PyramidHandle::finite_pointed(ra),
                     PyramidHandle::finite_pointed(rb), params);
}

Rho0Report rho0(const PointedSpace& a, const PointedSpace& b,
                const QuadratureScheme& scheme, const RhoParams& params) {
  scheme.check();
  Rho0Report rep;
  for (double r : scheme.radii) {
    RhoEstimate est = rescaled_ball_rho(a, b, r, params);
    rep.nodes.push_back({r, est.total, est.model_gap});
  }
  const auto mass = [](double lo, double hi) {
    return 0.5 * (std::exp(-lo * lo) - std::exp(-hi * hi));
  };
  double lo = 0.0, hi = 0.0;
  for (size_t k = 0; k + 1 < rep.nodes.size(); ++k) {
    const Rho0Node& u = rep.nodes[k];
    const Rho0Node& v = rep.nodes[k + 1];
    const double m = mass(u.r, v.r);
    // the rescaled-ball distance moves by at most 8|1 - r2/r1| between radii
    const double modulus = 8.0 * (v.r - u.r) / u.r;
    const double seg_lo =
        std::max(0.0, std::min(u.value.lo, v.value.lo) - modulus);
    const double seg_hi = std::min(2.0, std::max(u.value.hi, v.value.hi) + modulus);
    lo += m * seg_lo;
    hi += m * seg_hi;
    rep.modulus_slack += m * modulus;
    rep.model_gap += m * std::max(u.model_gap, v.model_gap);
  }
  rep.lower_tail = 1.0 - std::exp(-scheme.r_min * scheme.r_min);
  rep.upper_tail = std::exp(-scheme.r_max * scheme.r_max);
  hi += rep.lower_tail + rep.upper_tail;
  rep.total = Interval(lo, hi);
  return rep;
}

bool strongly_equivalent_proxy(const PointedSpace& a, const PointedSpace& b,
                               const QuadratureScheme& scheme, double tol) {
  scheme.check();
  for (double r : scheme.radii) {
    if (!equivalent_pointed(ball(a, r), ball(b, r), tol)) return false;
  }
  return true;
}

}  // namespace ghp
