/* Apache License, Version 2.0 */
#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ghp {

// Closed interval [lo, hi] certifying a real quantity. Both bounds finite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
  }
  static Interval point(double v) { return Interval(v, v); }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v, double tol = 0.0) const {
    return lo - tol <= v && v <= hi + tol;
  }

  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
  Interval scaled(double t) const {
    return t >= 0 ? Interval(lo * t, hi * t) : Interval(hi * t, lo * t);
  }
  Interval clamped(double a, double b) const {
    return {std::clamp(lo, a, b), std::clamp(hi, a, b)};
  }

  std::string str() const;
};

inline Interval interval_min(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}
inline Interval interval_max(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}
// Smallest interval containing both.
inline Interval interval_hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

}  // namespace ghp
