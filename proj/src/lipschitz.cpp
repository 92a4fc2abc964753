/* Apache License, Version 2.0 */
#include "ghp/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ghp/order.hpp"

namespace ghp {

double CoordinateMap::sup_dist(int i, int j) const {
  double m = 0.0;
  for (size_t c = 0; c < values[i].size(); ++c)
    m = std::max(m, std::abs(values[i][c] - values[j][c]));
  return m;
}

CoordinateMap kuratowski(const FiniteSpace& x) {
  if (x.has_infinite_entry())
    throw PreconditionError("kuratowski: infinite entries cannot be embedded");
  CoordinateMap f;
  f.values.resize(x.size());
  for (int i = 0; i < x.size(); ++i) {
    f.values[i].resize(x.size());
    for (int j = 0; j < x.size(); ++j) f.values[i][j] = x.dist(i, j).value();
  }
  return f;
}

CoordinateMap mcshane_fix(const FiniteSpace& x, const CoordinateMap& f,
                          double eps, double tol) {
  const int n = x.size();
  if (static_cast<int>(f.values.size()) != n)
    throw PreconditionError("mcshane_fix: map size mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const ExtReal d = x.dist(i, j);
      if (d.is_inf()) continue;
      if (f.sup_dist(i, j) > d.value() + eps + tol)
        throw PreconditionError("mcshane_fix: input is not 1-Lipschitz up to eps");
    }
  const int dim = f.dim();
  CoordinateMap out;
  out.values.assign(n, std::vector<double>(dim, 0.0));
  for (int c = 0; c < dim; ++c)
    for (int i = 0; i < n; ++i) {
      double m = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) {
        const ExtReal d = x.dist(i, j);
        const double cand = d.is_inf()
                                ? std::numeric_limits<double>::infinity()
                                : f.values[j][c] + d.value();
        m = std::min(m, cand);
      }
      out.values[i][c] = m;
    }
  return out;
}

namespace {

// Try to resolve collisions of the defect witness without raising the defect:
// a larger image gives a tighter transferred net.
std::vector<int> spread_witness(const FiniteSpace& yp, const FiniteSpace& x,
                                std::vector<int> u, double budget_defect,
                                double tol) {
  const int n = yp.size();
  auto defect_of = [&](const std::vector<int>& m) {
    ExtReal d(0.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        d = ext_max(d, ext_excess(yp.dist(i, j), x.dist(m[i], m[j])));
    return d;
  };
  std::vector<bool> taken(x.size(), false);
  for (int v : u) taken[v] = true;
  for (int i = 0; i < n; ++i) {
    bool collided = false;
    for (int j = 0; j < n; ++j)
      if (j != i && u[j] == u[i]) collided = true;
    if (!collided) continue;
    for (int cand = 0; cand < x.size(); ++cand) {
      if (taken[cand]) continue;
      const int saved = u[i];
      u[i] = cand;
      ExtReal d = defect_of(u);
      if (!d.is_inf() && d.value() <= budget_defect + tol) {
        taken[cand] = true;
        break;
      }
      u[i] = saved;
    }
  }
  return u;
}

}  // namespace

FiniteSpace transfer_net(const FiniteSpace& yp, const FiniteSpace& x,
                         double eps, double cap, double tol) {
  if (!(eps >= 0.0)) throw PreconditionError("transfer_net: eps must be >= 0");
  if (!(cap > 0.0)) throw PreconditionError("transfer_net: cap must be > 0");
  DefectResult dr = widening_defect(yp, x);
  if (dr.defect.is_inf() || dr.defect.value() > 2.0 * eps + tol)
    throw PreconditionError(
        "transfer_net: target is not 2*eps-wider than the source");
  const double eta = dr.defect.is_inf() ? 0.0 : dr.defect.value();

  std::vector<int> u =
      spread_witness(yp, x, dr.witness.assignment, eta, tol);

  // representatives of the witness fibers: u restricted to them is injective
  std::map<int, int> rep_of_image;  // x-index -> yp representative
  for (int i = 0; i < yp.size(); ++i)
    if (!rep_of_image.count(u[i])) rep_of_image[u[i]] = i;

  std::vector<int> image;  // x-indices, ascending
  for (const auto& [xi, rep] : rep_of_image) image.push_back(xi);

  FiniteSpace xsub = x.restrict(image);
  CoordinateMap emb = kuratowski(yp);
  CoordinateMap f;
  f.values.reserve(image.size());
  for (int xi : image) f.values.push_back(emb.values[rep_of_image[xi]]);

  CoordinateMap fixed = mcshane_fix(xsub, f, eta, tol);

  const int m = static_cast<int>(image.size());
  std::vector<std::vector<double>> d(m, std::vector<double>(m, 0.0));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      double v = std::min(fixed.sup_dist(a, b), cap);
      d[a][b] = d[b][a] = v;
    }

  // merge zero-distance points (keep the first of each cluster)
  std::vector<int> keep;
  for (int a = 0; a < m; ++a) {
    bool dup = false;
    for (int b : keep)
      if (d[a][b] <= tol) {
        dup = true;
        break;
      }
    if (!dup) keep.push_back(a);
  }
  const int k = static_cast<int>(keep.size());
  std::vector<ExtReal> flat(static_cast<size_t>(k) * k, ExtReal(0.0));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (a != b) flat[static_cast<size_t>(a) * k + b] = ExtReal(d[keep[a]][keep[b]]);
  return make_unchecked(k, std::move(flat), yp.label());
}

}  // namespace ghp
