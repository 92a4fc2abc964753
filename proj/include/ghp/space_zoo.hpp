/* Apache License, Version 2.0 */
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ghp/finite_space.hpp"

namespace ghp {

enum class Family {
  Sigma,        // n points pairwise at distance d (d may be inf)
  Spider,       // n legs of length r glued at a center, k nodes per leg
  Sphere,       // samples on the round d-sphere, geodesic metric
  ProjSpace,    // samples on real projective space, quotient metric
  LpProduct,    // sampled n-fold l^p product of a base space
  Path,         // k+1 points on a segment, pointed at one end
  RandomMetric  // random symmetric matrix repaired by shortest paths
};

struct SpaceRecipe {
  Family family = Family::Sigma;
  int n = 1;                  // Sigma/Spider legs/LpProduct factors/RandomMetric points
  ExtReal d = ExtReal(1.0);   // Sigma distance
  double r = 1.0;             // Spider leg length / Path length
  int k = 1;                  // Spider nodes per leg / Path segments
  int dim = 1;                // Sphere/ProjSpace dimension
  int samples = 4;            // Sphere/ProjSpace/LpProduct sample count
  double p = 2.0;             // LpProduct exponent (inf for the max metric)
  uint64_t seed = 1;
  std::shared_ptr<SpaceRecipe> base;  // LpProduct base recipe

  static SpaceRecipe sigma(int n, ExtReal d);
  static SpaceRecipe spider(int n, double r, int k);
  static SpaceRecipe sphere(int dim, int samples, uint64_t seed);
  static SpaceRecipe proj_space(int dim, int samples, uint64_t seed);
  static SpaceRecipe lp_product(SpaceRecipe base, int n, double p, int samples,
                                uint64_t seed);
  static SpaceRecipe path(double length, int k);
  static SpaceRecipe random_metric(int n, uint64_t seed);
};

struct GeneratedSpace {
  FiniteSpace space;
  std::optional<int> base;  // set for families with a canonical basepoint

  PointedSpace pointed() const {
    return PointedSpace(space, base.value_or(0));
  }
};

GeneratedSpace generate(const SpaceRecipe& recipe);

// Deterministic shared test corpus: simplex families, spiders, paths and
// seeded random metrics. At least 40 spaces, reproducible bit-for-bit.
std::vector<FiniteSpace> corpus(uint64_t seed);

// Corpus members that carry a canonical basepoint (spiders at the center,
// paths at an end, others at index 0).
std::vector<PointedSpace> pointed_corpus(uint64_t seed);

}  // namespace ghp
