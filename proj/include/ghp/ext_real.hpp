/* Apache License, Version 2.0 */
#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace ghp {

// A nonnegative extended real: a finite value >= 0 or +infinity.
// All arithmetic used on distances goes through the named helpers below so
// that the extended conventions are total and explicit:
//   a + INF = INF,  a /\ INF = a,  |INF - INF| = 0,  |INF - a| = INF.
class ExtReal {
 public:
  constexpr ExtReal() : v_(0.0) {}
  constexpr explicit ExtReal(double v) : v_(v) {}

  static constexpr ExtReal inf() {
    return ExtReal(std::numeric_limits<double>::infinity());
  }

  constexpr bool is_inf() const {
    return v_ == std::numeric_limits<double>::infinity();
  }
  // Finite numeric value; only meaningful when !is_inf().
  constexpr double value() const { return v_; }

  friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(ExtReal a, ExtReal b) { return a.v_ != b.v_; }
  friend constexpr bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend constexpr bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
  friend constexpr bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend constexpr bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

  friend constexpr ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.is_inf() || b.is_inf()) return inf();
    return ExtReal(a.v_ + b.v_);
  }

  std::string str() const;

 private:
  double v_;
};

constexpr ExtReal ext_min(ExtReal a, ExtReal b) { return a <= b ? a : b; }
constexpr ExtReal ext_max(ExtReal a, ExtReal b) { return a >= b ? a : b; }

// |a - b| under the extended conventions: INF vs INF is 0, INF vs finite is INF.
constexpr ExtReal ext_abs_diff(ExtReal a, ExtReal b) {
  if (a.is_inf() && b.is_inf()) return ExtReal(0.0);
  if (a.is_inf() || b.is_inf()) return ExtReal::inf();
  return ExtReal(a.value() >= b.value() ? a.value() - b.value()
                                        : b.value() - a.value());
}

// (a - b)^+ : the one-sided excess of a over b. INF over INF is 0; INF over a
// finite value is INF; a finite value never exceeds INF.
constexpr ExtReal ext_excess(ExtReal a, ExtReal b) {
  if (b.is_inf()) return ExtReal(0.0);
  if (a.is_inf()) return ExtReal::inf();
  return ExtReal(a.value() > b.value() ? a.value() - b.value() : 0.0);
}

constexpr ExtReal ext_scale(ExtReal a, double t) {
  if (a.is_inf()) return ExtReal::inf();
  return ExtReal(a.value() * t);
}

}  // namespace ghp
