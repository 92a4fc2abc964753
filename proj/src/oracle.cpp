/* Apache License, Version 2.0 */
#include "ghp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

namespace ghp::oracle {

namespace {

// Odometer over maps dom -> [range); returns false after the last map.
bool advance(std::vector<int>& map, int range) {
  for (size_t i = 0; i < map.size(); ++i) {
    if (++map[i] < range) return true;
    map[i] = 0;
  }
  return false;
}

double dis_of(const FiniteSpace& x, const FiniteSpace& y,
              const std::vector<int>& f, const std::vector<int>& g) {
  double dis = 0.0;
  const int n = x.size(), m = y.size();
  for (int i = 0; i < n; ++i)
    for (int i2 = 0; i2 < n; ++i2)
      dis = std::max(dis, std::abs(x.dist(i, i2).value() -
                                   y.dist(f[i], f[i2]).value()));
  for (int j = 0; j < m; ++j)
    for (int j2 = 0; j2 < m; ++j2)
      dis = std::max(dis, std::abs(x.dist(g[j], g[j2]).value() -
                                   y.dist(j, j2).value()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      dis = std::max(dis, std::abs(x.dist(i, g[j]).value() -
                                   y.dist(f[i], j).value()));
  return dis;
}

double gh_min(const FiniteSpace& x, const FiniteSpace& y, int pin_x,
              int pin_y) {
  const int n = x.size(), m = y.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> f(n, 0), g(m, 0);
  if (pin_x >= 0) f[pin_x] = pin_y;
  do {
    if (pin_x >= 0 && f[pin_x] != pin_y) continue;
    std::fill(g.begin(), g.end(), 0);
    if (pin_y >= 0) g[pin_y] = pin_x;
    do {
      if (pin_y >= 0 && g[pin_y] != pin_x) continue;
      best = std::min(best, dis_of(x, y, f, g));
    } while (advance(g, n));
  } while (advance(f, m));
  return 0.5 * best;
}

ExtReal defect_min(const FiniteSpace& x, const FiniteSpace& y, int pin_x,
                   int pin_y) {
  std::vector<int> f(x.size(), 0);
  if (pin_x >= 0) f[pin_x] = pin_y;
  bool any = false;
  ExtReal best = ExtReal::inf();
  do {
    if (pin_x >= 0 && f[pin_x] != pin_y) continue;
    ExtReal d(0.0);
    for (int i = 0; i < x.size(); ++i)
      for (int j = 0; j < x.size(); ++j)
        d = ext_max(d, ext_excess(x.dist(i, j), y.dist(f[i], f[j])));
    if (!any || d < best) {
      best = d;
      any = true;
    }
  } while (advance(f, y.size()));
  return best;
}

std::vector<double> brute_canonical(const FiniteSpace& s, bool fix_base) {
  const int n = s.size();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<double> best;
  bool have = false;
  do {
    if (fix_base && perm[0] != 0) continue;
    std::vector<double> key;
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i)
        key.push_back(s.dist(perm[i], perm[j]).value());
    if (!have || key < best) {
      best = std::move(key);
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<FiniteSpace> universe_raw(int n, int vmax, double delta,
                                      bool fix_base) {
  std::vector<FiniteSpace> out;
  std::set<std::vector<double>> seen;
  if (n == 1) {
    out.push_back(sigma_space(1, ExtReal(0.0)));
    return out;
  }
  const int pairs = n * (n - 1) / 2;
  if (vmax < 1) return out;
  std::vector<int> tri(pairs, 0);  // values 0..vmax-1 shifted by +1
  bool more = true;
  while (more) {
    RawMatrix m(n, std::vector<ExtReal>(n, ExtReal(0.0)));
    int t = 0;
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) {
        const ExtReal v((tri[t++] + 1) * delta);
        m[i][j] = v;
        m[j][i] = v;
      }
    if (validate(m).ok()) {
      FiniteSpace s(m, "");
      std::vector<double> key = brute_canonical(s, fix_base);
      if (seen.insert(key).second) out.push_back(std::move(s));
    }
    more = advance(tri, vmax);
  }
  return out;
}

}  // namespace

double oracle_gh(const FiniteSpace& x, const FiniteSpace& y) {
  return gh_min(x, y, -1, -1);
}

double oracle_gh_pointed(const PointedSpace& x, const PointedSpace& y) {
  return gh_min(x.space, y.space, x.base, y.base);
}

ExtReal oracle_defect(const FiniteSpace& x, const FiniteSpace& y) {
  return defect_min(x, y, -1, -1);
}

ExtReal oracle_defect_pointed(const PointedSpace& x, const PointedSpace& y) {
  return defect_min(x.space, y.space, x.base, y.base);
}

std::vector<FiniteSpace> oracle_grid_universe(int n, int vmax, double delta) {
  return universe_raw(n, vmax, delta, false);
}

std::vector<PointedSpace> oracle_grid_universe_pointed(int n, int vmax,
                                                       double delta) {
  std::vector<PointedSpace> out;
  for (FiniteSpace& s : universe_raw(n, vmax, delta, true))
    out.push_back(PointedSpace(std::move(s), 0));
  return out;
}

std::vector<FiniteSpace> oracle_slice(const PyramidHandle& p, int n_cap,
                                      double diam_cap, double delta,
                                      double tol) {
  const int vmax = static_cast<int>(std::floor(diam_cap / delta + 1e-9));
  std::vector<FiniteSpace> out;
  std::optional<FiniteSpace> xd;
  if (!p.is_max()) xd = truncate(p.space(), diam_cap);
  for (int k = 1; k <= n_cap; ++k)
    for (FiniteSpace& g : universe_raw(k, vmax, delta, false)) {
      if (!p.is_max()) {
        ExtReal d = oracle_defect(g, *xd);
        if (d.is_inf() || d.value() > tol) continue;
      }
      out.push_back(std::move(g));
    }
  return out;
}

std::vector<PointedSpace> oracle_slice_pointed(const PyramidHandle& p,
                                               int n_cap, double diam_cap,
                                               double delta, double tol) {
  const int vmax = static_cast<int>(std::floor(diam_cap / delta + 1e-9));
  std::vector<PointedSpace> out;
  std::optional<PointedSpace> xd;
  if (!p.is_max())
    xd = PointedSpace(truncate(p.space(), diam_cap), p.base());
  for (int k = 1; k <= n_cap; ++k)
    for (FiniteSpace& g : universe_raw(k, vmax, delta, true)) {
      PointedSpace pg(std::move(g), 0);
      if (!p.is_max()) {
        ExtReal d = oracle_defect_pointed(pg, *xd);
        if (d.is_inf() || d.value() > tol) continue;
      }
      out.push_back(std::move(pg));
    }
  return out;
}

namespace {

template <typename Elem, typename Dist>
double hausdorff_raw(const std::vector<Elem>& a, const std::vector<Elem>& b,
                     Dist dist) {
  double h = 0.0;
  for (const Elem& e : a) {
    double m = std::numeric_limits<double>::infinity();
    for (const Elem& f : b) m = std::min(m, dist(e, f));
    h = std::max(h, m);
  }
  for (const Elem& f : b) {
    double m = std::numeric_limits<double>::infinity();
    for (const Elem& e : a) m = std::min(m, dist(e, f));
    h = std::max(h, m);
  }
  return h;
}

}  // namespace

double oracle_rho_level(const PyramidHandle& a, const PyramidHandle& b, int n,
                        double delta, double tol) {
  auto sa = oracle_slice(a, n, n, delta, tol);
  auto sb = oracle_slice(b, n, n, delta, tol);
  return hausdorff_raw(sa, sb, [](const FiniteSpace& e, const FiniteSpace& f) {
    return oracle_gh(e, f);
  });
}

double oracle_rho_level_pointed(const PyramidHandle& a, const PyramidHandle& b,
                                int n, double delta, double tol) {
  auto sa = oracle_slice_pointed(a, n, n, delta, tol);
  auto sb = oracle_slice_pointed(b, n, n, delta, tol);
  return hausdorff_raw(sa, sb,
                       [](const PointedSpace& e, const PointedSpace& f) {
                         return oracle_gh_pointed(e, f);
                       });
}

}  // namespace ghp::oracle
