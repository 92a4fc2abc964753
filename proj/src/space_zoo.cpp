/* Apache License, Version 2.0 */
#include "ghp/space_zoo.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "ghp/errors.hpp"
#include "ghp/rng.hpp"

namespace ghp {

SpaceRecipe SpaceRecipe::sigma(int n, ExtReal d) {
  SpaceRecipe r;
  r.family = Family::Sigma;
  r.n = n;
  r.d = d;
  return r;
}

SpaceRecipe SpaceRecipe::spider(int n, double leg, int k) {
  SpaceRecipe r;
  r.family = Family::Spider;
  r.n = n;
  r.r = leg;
  r.k = k;
  return r;
}

SpaceRecipe SpaceRecipe::sphere(int dim, int samples, uint64_t seed) {
  SpaceRecipe r;
  r.family = Family::Sphere;
  r.dim = dim;
  r.samples = samples;
  r.seed = seed;
  return r;
}

SpaceRecipe SpaceRecipe::proj_space(int dim, int samples, uint64_t seed) {
  SpaceRecipe r;
  r.family = Family::ProjSpace;
  r.dim = dim;
  r.samples = samples;
  r.seed = seed;
  return r;
}

SpaceRecipe SpaceRecipe::lp_product(SpaceRecipe base, int n, double p,
                                    int samples, uint64_t seed) {
  SpaceRecipe r;
  r.family = Family::LpProduct;
  r.base = std::make_shared<SpaceRecipe>(std::move(base));
  r.n = n;
  r.p = p;
  r.samples = samples;
  r.seed = seed;
  return r;
}

SpaceRecipe SpaceRecipe::path(double length, int k) {
  SpaceRecipe r;
  r.family = Family::Path;
  r.r = length;
  r.k = k;
  return r;
}

SpaceRecipe SpaceRecipe::random_metric(int n, uint64_t seed) {
  SpaceRecipe r;
  r.family = Family::RandomMetric;
  r.n = n;
  r.seed = seed;
  return r;
}

namespace {

// Shortest-path closure; repairs floating dust (or a random grid) into an
// exact metric. Iterates until no entry changes.
void floyd_close(std::vector<std::vector<double>>& d) {
  const int n = static_cast<int>(d.size());
  bool changed = true;
  int rounds = 0;
  while (changed && rounds++ <= n + 2) {
    changed = false;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double via = d[i][k] + d[k][j];
          if (via < d[i][j]) {
            d[i][j] = via;
            changed = true;
          }
        }
  }
}

FiniteSpace from_dense(const std::vector<std::vector<double>>& d,
                       std::string label) {
  const int n = static_cast<int>(d.size());
  RawMatrix m(n, std::vector<ExtReal>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = ExtReal(d[i][j]);
  return FiniteSpace(std::move(m), std::move(label));
}

std::vector<double> unit_vector(SplitMix64& rng, int dim) {
  std::vector<double> v(dim + 1);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& c : v) {
      c = rng.gauss();
      norm += c * c;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  for (double& c : v) c /= norm;
  return v;
}

double clamped_acos(double t) { return std::acos(std::clamp(t, -1.0, 1.0)); }

GeneratedSpace generate_sphere(const SpaceRecipe& r, bool projective) {
  SplitMix64 rng(r.seed);
  std::vector<std::vector<double>> pts;
  int guard = 0;
  while (static_cast<int>(pts.size()) < r.samples && guard++ < 100 * r.samples) {
    std::vector<double> v = unit_vector(rng, r.dim);
    bool dup = false;
    for (const auto& u : pts) {
      double dot = 0.0;
      for (size_t c = 0; c < u.size(); ++c) dot += u[c] * v[c];
      const double dist = projective ? clamped_acos(std::abs(dot)) : clamped_acos(dot);
      if (dist < 1e-6) dup = true;
    }
    if (!dup) pts.push_back(std::move(v));
  }
  const int m = static_cast<int>(pts.size());
  std::vector<std::vector<double>> d(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double dot = 0.0;
      for (size_t c = 0; c < pts[i].size(); ++c) dot += pts[i][c] * pts[j][c];
      const double v = projective ? clamped_acos(std::abs(dot)) : clamped_acos(dot);
      d[i][j] = d[j][i] = v;
    }
  floyd_close(d);
  std::ostringstream label;
  label << (projective ? "rp" : "s") << r.dim << "_m" << m << "_seed" << r.seed;
  return {from_dense(d, label.str()), std::nullopt};
}

GeneratedSpace generate_lp(const SpaceRecipe& r) {
  if (!r.base) throw PreconditionError("lp_product: missing base recipe");
  if (!(r.p >= 1.0)) throw PreconditionError("lp_product: p must be >= 1");
  GeneratedSpace base = generate(*r.base);
  const FiniteSpace& b = base.space;
  if (b.has_infinite_entry())
    throw PreconditionError("lp_product: base must be finite-valued");
  SplitMix64 rng(r.seed);
  std::set<std::vector<int>> tuples;
  int guard = 0;
  while (static_cast<int>(tuples.size()) < r.samples &&
         guard++ < 100 * r.samples) {
    std::vector<int> t(r.n);
    for (int& c : t) c = static_cast<int>(rng.below(b.size()));
    tuples.insert(std::move(t));
  }
  std::vector<std::vector<int>> pts(tuples.begin(), tuples.end());
  const int m = static_cast<int>(pts.size());
  std::vector<std::vector<double>> d(m, std::vector<double>(m, 0.0));
  const bool linf = std::isinf(r.p);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double acc = 0.0;
      for (int c = 0; c < r.n; ++c) {
        const double v = b.dist(pts[i][c], pts[j][c]).value();
        if (linf)
          acc = std::max(acc, v);
        else
          acc += std::pow(v, r.p);
      }
      const double v = linf ? acc : std::pow(acc, 1.0 / r.p);
      d[i][j] = d[j][i] = v;
    }
  floyd_close(d);
  std::ostringstream label;
  label << "lp" << (linf ? std::string("inf") : std::to_string(r.p)) << "_n"
        << r.n << "_m" << m << "_seed" << r.seed;
  return {from_dense(d, label.str()), std::nullopt};
}

}  // namespace

GeneratedSpace generate(const SpaceRecipe& recipe) {
  switch (recipe.family) {
    case Family::Sigma: {
      if (recipe.n < 1) throw PreconditionError("sigma: n >= 1 required");
      if (!recipe.d.is_inf() && !(recipe.d.value() > 0.0) && recipe.n > 1)
        throw PreconditionError("sigma: distance must be positive");
      std::ostringstream label;
      label << "sigma" << recipe.n << "_d" << recipe.d.str();
      return {sigma_space(recipe.n, recipe.n == 1 ? ExtReal(0.0) : recipe.d,
                          label.str()),
              0};
    }
    case Family::Spider: {
      const int n = recipe.n, k = recipe.k;
      const double leg = recipe.r;
      if (n < 1 || k < 1 || !(leg > 0.0))
        throw PreconditionError("spider: positive parameters required");
      const int total = 1 + n * k;
      const double step = leg / k;
      auto radius = [&](int idx) {  // distance from the center
        if (idx == 0) return 0.0;
        const int s = (idx - 1) % k + 1;
        return s * step;
      };
      auto leg_of = [&](int idx) { return idx == 0 ? -1 : (idx - 1) / k; };
      std::vector<std::vector<double>> d(total, std::vector<double>(total, 0.0));
      for (int i = 0; i < total; ++i)
        for (int j = i + 1; j < total; ++j) {
          const double v = (leg_of(i) == leg_of(j))
                               ? std::abs(radius(i) - radius(j))
                               : radius(i) + radius(j);
          d[i][j] = d[j][i] = v;
        }
      std::ostringstream label;
      label << "spider" << n << "_r" << leg << "_k" << k;
      return {from_dense(d, label.str()), 0};
    }
    case Family::Sphere:
      return generate_sphere(recipe, false);
    case Family::ProjSpace:
      return generate_sphere(recipe, true);
    case Family::LpProduct:
      return generate_lp(recipe);
    case Family::Path: {
      const int k = recipe.k;
      const double len = recipe.r;
      if (k < 1 || !(len > 0.0))
        throw PreconditionError("path: positive parameters required");
      const double step = len / k;
      std::vector<std::vector<double>> d(k + 1, std::vector<double>(k + 1, 0.0));
      for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) d[i][j] = std::abs(i - j) * step;
      std::ostringstream label;
      label << "path" << len << "_k" << k;
      return {from_dense(d, label.str()), 0};
    }
    case Family::RandomMetric: {
      if (recipe.n < 1) throw PreconditionError("random_metric: n >= 1");
      SplitMix64 rng(recipe.seed);
      const int n = recipe.n;
      std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = rng.uniform(0.5, 2.0);
      floyd_close(d);
      std::ostringstream label;
      label << "rand_n" << n << "_seed" << recipe.seed;
      return {from_dense(d, label.str()), 0};
    }
  }
  throw PreconditionError("generate: unknown family");
}

std::vector<FiniteSpace> corpus(uint64_t seed) {
  std::vector<FiniteSpace> out;
  out.push_back(generate(SpaceRecipe::sigma(1, ExtReal(0.0))).space);
  for (int n = 2; n <= 5; ++n)
    for (double dd : {0.5, 1.0, 2.0})
      out.push_back(generate(SpaceRecipe::sigma(n, ExtReal(dd))).space);
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= 2; ++k)
      out.push_back(generate(SpaceRecipe::spider(n, 1.0, k)).space);
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 4;
    out.push_back(
        generate(SpaceRecipe::random_metric(n, seed * 1000 + i)).space);
  }
  out.push_back(generate(SpaceRecipe::path(1.0, 2)).space);
  out.push_back(generate(SpaceRecipe::path(1.0, 4)).space);
  out.push_back(generate(SpaceRecipe::path(2.0, 2)).space);
  out.push_back(generate(SpaceRecipe::path(2.0, 4)).space);
  return out;
}

std::vector<PointedSpace> pointed_corpus(uint64_t seed) {
  std::vector<PointedSpace> out;
  for (const FiniteSpace& x : corpus(seed)) out.push_back(PointedSpace(x, 0));
  return out;
}

}  // namespace ghp
