/* Apache License, Version 2.0 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghp/finite_space.hpp"
#include "ghp/gh.hpp"
#include "ghp/interval.hpp"
#include "ghp/order.hpp"

namespace ghp {

// A pyramid is addressed either by a concrete finite space or by the maximal
// sentinel, whose every slice is the whole of H(N, D).
class PyramidHandle {
 public:
  static PyramidHandle finite(FiniteSpace x) {
    PyramidHandle h;
    h.space_ = std::move(x);
    return h;
  }
  static PyramidHandle finite_pointed(PointedSpace x) {
    PyramidHandle h;
    h.space_ = x.space;
    h.base_ = x.base;
    return h;
  }
  static PyramidHandle max_sentinel() { return PyramidHandle(); }

  bool is_max() const { return !space_.has_value(); }
  const FiniteSpace& space() const { return *space_; }
  // Basepoint index; meaningful only in pointed computations.
  int base() const { return base_; }

 private:
  std::optional<FiniteSpace> space_;
  int base_ = 0;
};

struct RhoParams {
  int n_max = 8;
  double delta = 0.25;
  double tol = 1e-9;
  uint64_t gh_nodes = 4'000'000;      // budget for public exact solves
  uint64_t pair_gh_nodes = 80'000;    // budget per net pairwise evaluation
  uint64_t enum_nodes = 3'000'000;    // budget for exhaustive grid enumeration
  uint64_t defect_nodes = 20'000'000;
  int beam_width = 128;               // sampled-net beam width
  int max_net = 256;                  // cap on net size after dedup
};

// Finite net of a slice P \cap H(N, D). `certified` means the elements are
// exactly the delta-grid members of the slice (exhaustive enumeration);
// otherwise the net is a sampled family of genuine members and Hausdorff
// values against it are estimates. net_radius accounts for the distance from
// the continuum slice to the delta-grid model (delta/2 grid fineness, plus
// delta/2 when the source matrix itself is off the grid); it is reported
// alongside results rather than folded into the grid-model interval.
struct SliceNet {
  int n_cap = 0;
  double diam_cap = 0.0;
  double delta = 0.0;
  bool pointed = false;
  std::vector<FiniteSpace> elements;  // pointed nets keep base at index 0
  std::vector<std::vector<double>> keys;  // canonical keys, aligned
  double net_radius = 0.0;
  bool certified = false;
  double sampling_slack = 0.0;
};

struct RhoLevel {
  int n = 0;
  Interval value;       // grid/net-model enclosure, clamped to [0, N]
  bool certified = false;
  double radius_sum = 0.0;     // net_radius_A + net_radius_B
  double sampling_slack = 0.0;
};

// Weighted-sum estimate of the compactification pseudometric.
//   total.lo = sum 2^-N lo_N,  total.hi = sum 2^-N hi_N + tail_bound,
//   tail_bound = (N_max + 2) 2^-N_max.
// `total` encloses the delta-grid model of rho; `model_gap` bounds the extra
// discrepancy against the continuum value contributed by quantization, so
// [total.lo - model_gap, total.hi + model_gap] is the outer (continuum)
// enclosure wherever every level is certified.
struct RhoEstimate {
  std::vector<RhoLevel> levels;
  double tail_bound = 0.0;
  Interval total;
  double model_gap = 0.0;
  bool fully_certified = false;

  Interval outer() const {
    return {std::max(0.0, total.lo - model_gap), total.hi + model_gap};
  }
};

// Membership Y \in P: the sentinel accepts everything; a finite pyramid
// requires a point map witnessing domination within tol.
bool member(const FiniteSpace& y, const PyramidHandle& p, double tol = 1e-9,
            const SearchLimits& limits = {});
bool member_pointed(const PointedSpace& y, const PyramidHandle& p,
                    double tol = 1e-9, const SearchLimits& limits = {});

SliceNet slice_net(const PyramidHandle& p, int n_cap, double diam_cap,
                   double delta, const RhoParams& params = {},
                   bool pointed = false);

// Interval for the Hausdorff distance between the N-slices of two pyramids
// (diameter cap N), in the grid/net model.
RhoLevel rho_level(const PyramidHandle& a, const PyramidHandle& b, int n,
                   const RhoParams& params = {}, bool pointed = false);

RhoEstimate rho(const PyramidHandle& a, const PyramidHandle& b,
                const RhoParams& params = {});
RhoEstimate rho_pointed(const PyramidHandle& a, const PyramidHandle& b,
                        const RhoParams& params = {});

struct SliceConvergenceRow {
  std::string label;
  Interval value;
  bool certified = false;
};

// Per-term slice Hausdorff intervals against the target slice at fixed
// (N, D, delta). Display only; makes no convergence claim.
std::vector<SliceConvergenceRow> slice_converge_report(
    const std::vector<PyramidHandle>& sequence, const PyramidHandle& target,
    int n_cap, double diam_cap, double delta, const RhoParams& params = {});

// Clears the process-wide net/value caches (mainly for benchmarking).
void clear_pyramid_caches();

}  // namespace ghp
