/* Apache License, Version 2.0 */
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghp/ext_real.hpp"

namespace ghp {

// Raw square grid of extended reals, row-major.
using RawMatrix = std::vector<std::vector<ExtReal>>;

enum class ViolationKind {
  NotSquare,
  NegativeEntry,
  NonzeroDiagonal,
  Asymmetric,
  TriangleViolation,
  DuplicatePoint,
};

struct Violation {
  ViolationKind kind;
  int i = -1;
  int j = -1;
  int k = -1;  // middle point of a triangle violation d[i][j] > d[i][k]+d[k][j]

  std::string str() const;
};

// Result of validating a raw matrix. Lists every violated pair/triple.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string str() const;
};

ValidationReport validate(const RawMatrix& m);

class InvalidSpaceError : public std::invalid_argument {
 public:
  InvalidSpaceError(std::string what, ValidationReport report)
      : std::invalid_argument(std::move(what)), report(std::move(report)) {}
  ValidationReport report;
};

// A finite (extended) metric space: symmetric matrix with zero diagonal,
// triangle inequality under the extended conventions, and no two distinct
// points at distance zero. Immutable after construction.
class FiniteSpace {
 public:
  // Validates eagerly; throws InvalidSpaceError with the full report.
  explicit FiniteSpace(RawMatrix m, std::string label = "");

  int size() const { return n_; }
  ExtReal dist(int i, int j) const { return d_[static_cast<size_t>(i) * n_ + j]; }
  const std::string& label() const { return label_; }

  ExtReal diameter() const;
  // Max distance from point i.
  ExtReal eccentricity(int i) const;
  bool has_infinite_entry() const;
  // True when every finite entry is an integer multiple of delta (within tol).
  bool on_grid(double delta, double tol = 1e-9) const;

  // Subspace induced on the given index subset (order preserved).
  FiniteSpace restrict(const std::vector<int>& idx) const;

  RawMatrix matrix() const;

  // Stable identity of the exact matrix (not the isometry class).
  uint64_t content_hash() const;

 private:
  struct Unchecked {};
  FiniteSpace(Unchecked, int n, std::vector<ExtReal> flat, std::string label);

  int n_;
  std::vector<ExtReal> d_;
  std::string label_;

  friend FiniteSpace make_unchecked(int n, std::vector<ExtReal> flat,
                                    std::string label);
};

// Internal fast path for constructions that preserve validity structurally
// (truncate, scale, grid enumeration after incremental triangle filtering).
FiniteSpace make_unchecked(int n, std::vector<ExtReal> flat, std::string label);

struct PointedSpace {
  FiniteSpace space;
  int base = 0;

  PointedSpace(FiniteSpace s, int base_idx);
  ExtReal radius() const { return space.eccentricity(base); }
};

// Entrywise minimum with D. Never leaves an infinite entry.
FiniteSpace truncate(const FiniteSpace& x, double cap);
// Entrywise multiplication by t > 0.
FiniteSpace scale(const FiniteSpace& x, double t);
// Closed ball of radius r around the basepoint, with the restricted metric.
PointedSpace ball(const PointedSpace& p, double r);

inline ExtReal diameter(const FiniteSpace& x) { return x.diameter(); }
inline ExtReal radius(const PointedSpace& p) { return p.radius(); }

// Lexicographically minimal upper triangle over all point permutations
// (permutations fixing `fixed_base` first when it is >= 0). Exact search is
// used up to max_exact points; beyond that a permutation-invariant digest is
// returned, which may conflate rare non-isometric pairs (used for dedup only).
std::vector<double> canonical_key(const FiniteSpace& x, int fixed_base = -1,
                                  int max_exact = 8);

FiniteSpace sigma_space(int n, ExtReal d, std::string label = "");

}  // namespace ghp
