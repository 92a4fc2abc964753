/* Apache License, Version 2.0 */
#pragma once

#include <vector>

#include "ghp/finite_space.hpp"
#include "ghp/rng.hpp"

namespace ghp::testing {

inline FiniteSpace sigma(int n, double d) {
  return sigma_space(n, n == 1 ? ExtReal(0.0) : ExtReal(d));
}

inline FiniteSpace from_rows(const std::vector<std::vector<double>>& rows) {
  RawMatrix m;
  for (const auto& r : rows) {
    std::vector<ExtReal> row;
    for (double v : r) row.push_back(ExtReal(v));
    m.push_back(std::move(row));
  }
  return FiniteSpace(std::move(m));
}

// Seeded random metric space (shortest-path repaired grid of uniforms).
inline FiniteSpace random_space(int n, uint64_t seed, double lo = 0.5,
                                double hi = 2.0) {
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = rng.uniform(lo, hi);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (d[i][k] + d[k][j] < d[i][j]) {
            d[i][j] = d[i][k] + d[k][j];
            changed = true;
          }
  }
  RawMatrix m(n, std::vector<ExtReal>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = ExtReal(d[i][j]);
  return FiniteSpace(std::move(m));
}

// Relabel by a seeded permutation.
inline FiniteSpace relabel(const FiniteSpace& x, uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<int> perm(x.size());
  for (int i = 0; i < x.size(); ++i) perm[i] = i;
  for (int i = x.size() - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(i + 1));
    std::swap(perm[i], perm[j]);
  }
  return x.restrict(perm);
}

}  // namespace ghp::testing
