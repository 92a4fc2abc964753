/* Apache License, Version 2.0 */
#include "ghp/pyramid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <tuple>

namespace ghp {

namespace {

int64_t key_units(double v) { return static_cast<int64_t>(std::llround(v * 1e6)); }

// ---------------------------------------------------------------------------
// Fast membership for tiny configurations
// ---------------------------------------------------------------------------

// Dominating patterns of a truncated space: the Pareto-maximal sorted triple
// patterns, the largest pair, and their base-anchored analogues. A 2- or
// 3-point grid space is a slice member iff its sorted pattern is dominated
// componentwise by some pattern here (for 3 points the full symmetric group
// acts on a triangle, so sorted domination is equivalent to an assignment).
struct MemberPatterns {
  double max_pair = 0.0;
  std::vector<std::array<double, 3>> triples;  // sorted descending
  double max_ray = 0.0;                        // pointed: largest base distance
  std::vector<std::array<double, 3>> ptriples;  // (r1 >= r2, s)
};

void pareto_filter(std::vector<std::array<double, 3>>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return std::tie(b[0], b[1], b[2]) < std::tie(a[0], a[1], a[2]);
  });
  std::vector<std::array<double, 3>> keep;
  for (const auto& t : v) {
    bool dominated = false;
    for (const auto& k : keep)
      if (k[0] >= t[0] && k[1] >= t[1] && k[2] >= t[2]) {
        dominated = true;
        break;
      }
    if (!dominated) keep.push_back(t);
  }
  v = std::move(keep);
}

MemberPatterns build_patterns(const FiniteSpace& xd, int base) {
  MemberPatterns p;
  const int n = xd.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      p.max_pair = std::max(p.max_pair, xd.dist(i, j).value());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::array<double, 3> t{xd.dist(i, j).value(), xd.dist(i, k).value(),
                                xd.dist(j, k).value()};
        std::sort(t.begin(), t.end(), std::greater<double>());
        p.triples.push_back(t);
      }
  pareto_filter(p.triples);
  if (base >= 0) {
    for (int i = 0; i < n; ++i)
      if (i != base) p.max_ray = std::max(p.max_ray, xd.dist(base, i).value());
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        if (u == base || v == base) continue;
        double r1 = xd.dist(base, u).value();
        double r2 = xd.dist(base, v).value();
        if (r1 < r2) std::swap(r1, r2);
        p.ptriples.push_back({r1, r2, xd.dist(u, v).value()});
      }
    pareto_filter(p.ptriples);
  }
  return p;
}

// g is a <=3-point space; pointed tests anchor g's base at index 0.
bool pattern_member(const FiniteSpace& g, const MemberPatterns& p, bool pointed,
                    double tol) {
  const int k = g.size();
  if (k == 1) return true;
  if (!pointed) {
    if (k == 2) return g.dist(0, 1).value() <= p.max_pair + tol;
    std::array<double, 3> t{g.dist(0, 1).value(), g.dist(0, 2).value(),
                            g.dist(1, 2).value()};
    std::sort(t.begin(), t.end(), std::greater<double>());
    for (const auto& q : p.triples)
      if (q[0] + tol >= t[0] && q[1] + tol >= t[1] && q[2] + tol >= t[2])
        return true;
    return false;
  }
  if (k == 2) return g.dist(0, 1).value() <= p.max_ray + tol;
  double r1 = g.dist(0, 1).value();
  double r2 = g.dist(0, 2).value();
  double s = g.dist(1, 2).value();
  if (r1 < r2) std::swap(r1, r2);
  for (const auto& q : p.ptriples)
    if (q[0] + tol >= r1 && q[1] + tol >= r2 && q[2] + tol >= s) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Grid universes (integer units of delta)
// ---------------------------------------------------------------------------

struct GridUniverse {
  int n = 0;
  // Upper-triangle entries in row-pair order (0,1),(0,2),(1,2),(0,3),...
  std::vector<std::vector<int>> entries;
  bool complete = false;
};

FiniteSpace grid_to_space(int n, const std::vector<int>& tri, double delta) {
  std::vector<ExtReal> flat(static_cast<size_t>(n) * n, ExtReal(0.0));
  int t = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const ExtReal v(tri[t++] * delta);
      flat[static_cast<size_t>(i) * n + j] = v;
      flat[static_cast<size_t>(j) * n + i] = v;
    }
  return make_unchecked(n, std::move(flat), "");
}

// Enumerate all valid matrices with off-diagonal entries in {1..vmax} (units
// of the grid step), pruning by incremental triangle ranges. Aborts when the
// node budget is exhausted.
GridUniverse enumerate_universe(int n, int vmax, uint64_t budget) {
  GridUniverse u;
  u.n = n;
  if (n == 1) {
    u.entries.push_back({});
    u.complete = true;
    return u;
  }
  const int pairs = n * (n - 1) / 2;
  std::vector<int> tri(pairs, 0);
  // flat index of pair (i, j), i < j
  auto pidx = [n](int i, int j) { return j * (j - 1) / 2 + i; };
  uint64_t nodes = 0;
  bool aborted = false;

  // entries assigned in order t = 0..pairs-1 with (i, j) as in grid_to_space
  std::vector<std::pair<int, int>> order;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) order.push_back({i, j});

  auto rec = [&](auto&& self, int t) -> void {
    if (aborted) return;
    if (t == pairs) {
      u.entries.push_back(tri);
      return;
    }
    const auto [i, j] = order[t];
    int lo = 1, hi = vmax;
    for (int c = 0; c < i; ++c) {
      const int a = tri[pidx(c, i)];
      const int b = tri[pidx(c, j)];
      lo = std::max(lo, std::abs(a - b));
      hi = std::min(hi, a + b);
    }
    for (int v = lo; v <= hi; ++v) {
      if (++nodes > budget) {
        aborted = true;
        return;
      }
      tri[t] = v;
      self(self, t + 1);
      if (aborted) return;
    }
  };
  rec(rec, 0);
  u.complete = !aborted;
  if (aborted) u.entries.clear();
  return u;
}

// Universe cache keyed by (n, vmax); canonical dedup is done by the caller
// because pointed and unpointed slices group the same matrices differently.
// Failed (over-budget) attempts are remembered so they are not retried.
std::map<std::pair<int, int>, std::shared_ptr<GridUniverse>> g_universe_cache;
std::set<std::pair<int, int>> g_universe_failed;

std::shared_ptr<GridUniverse> universe(int n, int vmax, uint64_t budget) {
  const auto key = std::make_pair(n, vmax);
  auto it = g_universe_cache.find(key);
  if (it != g_universe_cache.end()) return it->second;
  if (g_universe_failed.count(key))
    return std::make_shared<GridUniverse>();  // incomplete marker
  // Skip clearly hopeless enumerations without burning the budget; triangle
  // pruning rarely buys more than a factor in the dozens.
  const double raw = std::pow(static_cast<double>(std::max(vmax, 1)),
                              n * (n - 1) / 2);
  if (raw > 64.0 * static_cast<double>(budget)) {
    g_universe_failed.insert(key);
    return std::make_shared<GridUniverse>();
  }
  auto u = std::make_shared<GridUniverse>(enumerate_universe(n, vmax, budget));
  if (u->complete)
    g_universe_cache[key] = u;
  else
    g_universe_failed.insert(key);
  return u;
}

// ---------------------------------------------------------------------------
// Net construction
// ---------------------------------------------------------------------------

struct ViewKey {
  uint64_t content = 0;  // 0 for the sentinel
  int base = -1;         // -1 for unpointed
  int n_cap = 0;
  int64_t diam_cap = 0;
  int64_t delta = 0;
  int beam = 0;
  int max_net = 0;
  bool sampled_only = false;

  bool operator<(const ViewKey& o) const {
    return std::tie(content, base, n_cap, diam_cap, delta, beam, max_net,
                    sampled_only) <
           std::tie(o.content, o.base, o.n_cap, o.diam_cap, o.delta, o.beam,
                    o.max_net, o.sampled_only);
  }
};

std::map<ViewKey, std::shared_ptr<SliceNet>> g_net_cache;

struct PairKey {
  uint64_t a = 0, b = 0;
  int na = 0, nb = 0;  // cheap collision guard alongside the hashes
  bool pointed = false;
  bool operator<(const PairKey& o) const {
    return std::tie(a, b, na, nb, pointed) <
           std::tie(o.a, o.b, o.na, o.nb, o.pointed);
  }
};

std::map<PairKey, Interval> g_pair_cache;

void sort_and_cap(SliceNet& net, int max_net) {
  // Deterministic order preferring large, spread-out elements (the usual
  // carriers of the directed Hausdorff supremum), then canonical key.
  std::vector<int> idx(net.elements.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  auto min_pair = [&](int e) {
    const FiniteSpace& s = net.elements[e];
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < s.size(); ++i)
      for (int j = i + 1; j < s.size(); ++j)
        m = std::min(m, s.dist(i, j).value());
    return s.size() == 1 ? 0.0 : m;
  };
  std::vector<double> mp(net.elements.size());
  for (size_t i = 0; i < mp.size(); ++i) mp[i] = min_pair(static_cast<int>(i));
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    const int sa = net.elements[a].size(), sb = net.elements[b].size();
    if (sa != sb) return sa > sb;
    if (mp[a] != mp[b]) return mp[a] > mp[b];
    return net.keys[a] < net.keys[b];
  });
  if (static_cast<int>(idx.size()) > max_net) idx.resize(max_net);
  std::vector<FiniteSpace> elems;
  std::vector<std::vector<double>> keys;
  for (int e : idx) {
    elems.push_back(net.elements[e]);
    keys.push_back(net.keys[e]);
  }
  net.elements = std::move(elems);
  net.keys = std::move(keys);
}

void add_element(SliceNet& net, std::set<std::vector<double>>& seen,
                 FiniteSpace s) {
  std::vector<double> key = canonical_key(s, net.pointed ? 0 : -1);
  if (seen.insert(key).second) {
    net.elements.push_back(std::move(s));
    net.keys.push_back(std::move(key));
  }
}

// Exhaustive delta-grid slice: every grid space with at most n_cap points and
// diameter at most diam_cap that is dominated by the handle. Returns nullopt
// when enumeration would exceed the budget.
std::optional<SliceNet> certified_slice(const PyramidHandle& p, int n_cap,
                                        double diam_cap, double delta,
                                        const RhoParams& params, bool pointed) {
  SliceNet net;
  net.pointed = pointed;
  net.n_cap = n_cap;
  net.diam_cap = diam_cap;
  net.delta = delta;

  double value_cap = diam_cap;
  std::optional<FiniteSpace> xd;
  std::optional<MemberPatterns> patterns;
  int n_eff = n_cap;
  if (!p.is_max()) {
    xd = truncate(p.space(), diam_cap);
    value_cap = std::min(value_cap, xd->diameter().value());
    n_eff = std::min(n_eff, xd->size());
    patterns = build_patterns(*xd, pointed ? p.base() : -1);
    if (pointed) value_cap = std::min(value_cap, 2.0 * patterns->max_ray);
  }
  const int vmax = static_cast<int>(std::floor(value_cap / delta + 1e-9));

  std::set<std::vector<double>> seen;
  for (int k = 1; k <= n_eff; ++k) {
    if (k >= 2 && vmax < 1) break;  // no positive grid values available
    // Membership beyond the pattern fast path needs a map search per
    // element; keep that regime small.
    if (!p.is_max() && k > 3 && xd->size() > 40) return std::nullopt;
    auto uni = universe(k, std::max(vmax, 0), params.enum_nodes);
    if (!uni->complete) return std::nullopt;
    for (const auto& tri : uni->entries) {
      FiniteSpace g = grid_to_space(k, tri, delta);
      if (!p.is_max()) {
        bool in = false;
        if (k <= 3) {
          in = pattern_member(g, *patterns, pointed, params.tol);
        } else if (pointed) {
          in = defect_at_most_pointed(PointedSpace(g, 0),
                                      PointedSpace(*xd, p.base()), params.tol,
                                      {params.defect_nodes});
        } else {
          in = defect_at_most(g, *xd, params.tol, {params.defect_nodes});
        }
        if (!in) continue;
      }
      add_element(net, seen, std::move(g));
    }
  }
  net.certified = true;
  const bool exact_grid = p.is_max() || xd->on_grid(delta);
  net.net_radius = 0.5 * delta + (exact_grid ? 0.0 : 0.5 * delta);
  net.sampling_slack = 0.0;
  // certified nets are never truncated: they are the complete grid slice
  sort_and_cap(net, std::numeric_limits<int>::max());
  return net;
}

// Cheap permutation-invariant digest used while assembling sampled nets; the
// retained elements get full canonical keys afterwards. Collisions between
// non-isometric spaces merely drop one sample.
std::vector<double> digest_key(const FiniteSpace& s, int base) {
  std::vector<double> key;
  key.push_back(static_cast<double>(s.size()));
  std::vector<double> all;
  std::vector<double> row_sums;
  for (int i = 0; i < s.size(); ++i) {
    double sum = 0.0;
    for (int j = 0; j < s.size(); ++j) {
      const double v = s.dist(i, j).value();
      sum += v;
      if (j > i) all.push_back(v);
    }
    if (base >= 0 && i == base)
      key.push_back(-sum);  // base row distinguished
    else
      row_sums.push_back(sum);
  }
  std::sort(all.begin(), all.end());
  std::sort(row_sums.begin(), row_sums.end());
  key.insert(key.end(), all.begin(), all.end());
  key.insert(key.end(), row_sums.begin(), row_sums.end());
  return key;
}

struct NetPool {
  std::vector<FiniteSpace> elems;
  std::set<std::vector<double>> seen;
  int base = -1;  // digest anchor (0 for pointed elements)

  void add(FiniteSpace s) {
    if (seen.insert(digest_key(s, base)).second) elems.push_back(std::move(s));
  }
};

// Content-driven beam over subconfigurations: deterministic, and isometric
// inputs produce identical nets. Every element is a genuine member (subspaces
// and their contractions), so Hausdorff values against the net are honest
// member-to-member distances; coverage of the full slice is heuristic.
void beam_configs(const FiniteSpace& x, int base, int n_eff, double diam_cap,
                  const RhoParams& params, NetPool& pool) {
  struct Entry {
    std::vector<int> idx;
    double min_pair;
    double sum;
    std::vector<double> key;
  };

  auto config_space = [&](const std::vector<int>& idx) {
    return truncate(x.restrict(idx), diam_cap);
  };
  auto make_entry = [&](std::vector<int> idx) {
    Entry e;
    e.idx = std::move(idx);
    FiniteSpace s = config_space(e.idx);
    e.min_pair = std::numeric_limits<double>::infinity();
    e.sum = 0.0;
    for (int i = 0; i < s.size(); ++i)
      for (int j = i + 1; j < s.size(); ++j) {
        const double v = s.dist(i, j).value();
        e.min_pair = std::min(e.min_pair, v);
        e.sum += v;
      }
    if (s.size() == 1) e.min_pair = 0.0;
    e.key = digest_key(s, base >= 0 ? 0 : -1);
    return e;
  };

  std::vector<Entry> beam;
  if (base >= 0) {
    beam.push_back(make_entry({base}));
  } else {
    // seed with the point of maximal eccentricity (ties by index)
    int best = 0;
    double be = -1.0;
    for (int i = 0; i < x.size(); ++i) {
      const double e = x.eccentricity(i).value();
      if (e > be) {
        be = e;
        best = i;
      }
    }
    beam.push_back(make_entry({best}));
  }
  for (const Entry& e : beam) pool.add(config_space(e.idx));

  for (int k = 2; k <= n_eff; ++k) {
    std::map<std::vector<double>, Entry> next;
    for (const Entry& e : beam) {
      for (int pt = 0; pt < x.size(); ++pt) {
        if (std::find(e.idx.begin(), e.idx.end(), pt) != e.idx.end()) continue;
        std::vector<int> idx = e.idx;
        idx.push_back(pt);
        Entry ne = make_entry(std::move(idx));
        auto it = next.find(ne.key);
        if (it == next.end()) next.emplace(ne.key, std::move(ne));
      }
    }
    std::vector<Entry> cand;
    cand.reserve(next.size());
    for (auto& kv : next) cand.push_back(std::move(kv.second));
    std::stable_sort(cand.begin(), cand.end(), [](const Entry& a, const Entry& b) {
      if (a.min_pair != b.min_pair) return a.min_pair > b.min_pair;
      if (a.sum != b.sum) return a.sum > b.sum;
      return a.key < b.key;
    });
    if (static_cast<int>(cand.size()) > params.beam_width)
      cand.resize(params.beam_width);
    for (const Entry& e : cand) pool.add(config_space(e.idx));
    beam = std::move(cand);
    if (beam.empty()) break;
  }
}

// Deterministic member variants: scalings and truncations stay inside the
// pyramid and populate the downward closure.
void add_contractions(NetPool& pool, double diam_cap) {
  const std::vector<FiniteSpace> snapshot = pool.elems;
  for (const FiniteSpace& s : snapshot) {
    if (s.size() < 2) continue;
    for (double t : {0.75, 0.5}) pool.add(truncate(scale(s, t), diam_cap));
    const double d = s.diameter().value();
    if (d > 0)
      for (double t : {0.75, 0.5})
        pool.add(truncate(s, std::max(d * t, 1e-12)));
  }
}

// Extremal grid members seeded into sentinel nets: simplex-like and path-like
// configurations at several scales.
void sentinel_family(NetPool& pool, int n_eff, double diam_cap, double delta) {
  std::vector<double> scales{1.0, 0.75, 0.5, 0.25};
  for (int k = 1; k <= n_eff; ++k) {
    for (double sc : scales) {
      const double d = std::floor(diam_cap * sc / delta + 1e-9) * delta;
      if (k >= 2 && d < delta) continue;
      pool.add(sigma_space(k, ExtReal(k == 1 ? 0.0 : d)));
      if (k >= 3) {
        // equally spaced points on a segment of length d (grid-snapped steps)
        const double step = std::floor(d / (k - 1) / delta + 1e-9) * delta;
        if (step >= delta) {
          std::vector<ExtReal> flat(static_cast<size_t>(k) * k, ExtReal(0.0));
          for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
              flat[static_cast<size_t>(i) * k + j] =
                  ExtReal(std::abs(i - j) * step);
          pool.add(make_unchecked(k, std::move(flat), ""));
        }
      }
    }
  }
}

// All subconfigurations of a small space: label-free, so relabeled inputs
// produce identical nets (the beam cannot promise that when distinct points
// tie on the invariants driving its choices).
void all_configs(const FiniteSpace& x, int base, int n_eff, double diam_cap,
                 NetPool& pool) {
  const int n = x.size();
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (base >= 0 && !(mask & (1u << base))) continue;
    if (__builtin_popcount(mask) > n_eff) continue;
    std::vector<int> idx;
    if (base >= 0) idx.push_back(base);
    for (int i = 0; i < n; ++i)
      if ((mask & (1u << i)) && i != base) idx.push_back(i);
    pool.add(truncate(x.restrict(idx), diam_cap));
  }
}

SliceNet sampled_slice(const PyramidHandle& p, int n_cap, double diam_cap,
                       double delta, const RhoParams& params, bool pointed) {
  SliceNet net;
  net.pointed = pointed;
  net.n_cap = n_cap;
  net.diam_cap = diam_cap;
  net.delta = delta;
  net.certified = false;
  net.sampling_slack = 0.5 * delta;

  NetPool pool;
  pool.base = pointed ? 0 : -1;
  if (p.is_max()) {
    net.net_radius = 0.5 * delta;
    sentinel_family(pool, n_cap, diam_cap, delta);
  } else {
    const bool exact_grid = p.space().on_grid(delta);
    net.net_radius = 0.5 * delta + (exact_grid ? 0.0 : 0.5 * delta);
    const int n_eff = std::min(n_cap, p.space().size());
    if (p.space().size() <= 12)
      all_configs(p.space(), pointed ? p.base() : -1, n_eff, diam_cap, pool);
    else
      beam_configs(p.space(), pointed ? p.base() : -1, n_eff, diam_cap, params,
                   pool);
    add_contractions(pool, diam_cap);
  }
  pool.add(sigma_space(1, ExtReal(0.0)));  // always a member

  // Rank by digest-level spread, cap, then compute full canonical keys for
  // the retained elements only.
  std::vector<int> order(pool.elems.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::vector<double> mp(pool.elems.size(), 0.0), sm(pool.elems.size(), 0.0);
  std::vector<std::vector<double>> digests(pool.elems.size());
  for (size_t i = 0; i < pool.elems.size(); ++i) {
    const FiniteSpace& s = pool.elems[i];
    double m = std::numeric_limits<double>::infinity(), acc = 0.0;
    for (int a = 0; a < s.size(); ++a)
      for (int b = a + 1; b < s.size(); ++b) {
        m = std::min(m, s.dist(a, b).value());
        acc += s.dist(a, b).value();
      }
    mp[i] = s.size() == 1 ? 0.0 : m;
    sm[i] = acc;
    digests[i] = digest_key(s, pool.base);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const int sa = pool.elems[a].size(), sb = pool.elems[b].size();
    if (sa != sb) return sa > sb;
    if (mp[a] != mp[b]) return mp[a] > mp[b];
    if (sm[a] != sm[b]) return sm[a] > sm[b];
    return digests[a] < digests[b];
  });
  if (static_cast<int>(order.size()) > params.max_net)
    order.resize(params.max_net);
  std::set<std::vector<double>> canon_seen;
  for (int e : order) {
    std::vector<double> key = canonical_key(pool.elems[e], pointed ? 0 : -1);
    if (canon_seen.insert(key).second) {
      net.elements.push_back(pool.elems[e]);
      net.keys.push_back(std::move(key));
    }
  }
  return net;
}

Interval pair_distance(const FiniteSpace& a, const std::vector<double>& ka,
                       const FiniteSpace& b, const std::vector<double>& kb,
                       bool pointed, const RhoParams& params) {
  if (ka == kb) return Interval::point(0.0);
  PairKey key;
  key.a = a.content_hash();
  key.b = b.content_hash();
  key.na = a.size();
  key.nb = b.size();
  if (key.b < key.a) {
    std::swap(key.a, key.b);
    std::swap(key.na, key.nb);
  }
  key.pointed = pointed;
  auto it = g_pair_cache.find(key);
  if (it != g_pair_cache.end()) return it->second;

  Interval v;
  try {
    GhResult r = pointed
                     ? gh_pointed(PointedSpace(a, 0), PointedSpace(b, 0),
                                  {params.pair_gh_nodes})
                     : gh_exact(a, b, {params.pair_gh_nodes});
    v = r.value;
  } catch (const SizeLimitError&) {
    if (!pointed) {
      v = gh_bounds(a, b).value;
    } else {
      // Full-relation distortion contains the base pair, so half of it is a
      // valid upper bound for the base-constrained distance.
      double dis = 0.0;
      for (int i = 0; i < a.size(); ++i)
        for (int i2 = 0; i2 < a.size(); ++i2)
          for (int j = 0; j < b.size(); ++j)
            for (int j2 = 0; j2 < b.size(); ++j2)
              dis = std::max(dis, std::abs(a.dist(i, i2).value() -
                                           b.dist(j, j2).value()));
      v = Interval(std::max(lb_diameter(a, b), lb_eccentricity(a, b)),
                   0.5 * dis);
    }
  }
  g_pair_cache[key] = v;
  return v;
}

struct HausdorffOut {
  Interval value;
  bool exact = true;  // every contributing pairwise value was a point
};

// Hausdorff distance between two finite subsets of the line, both sorted.
double line_hausdorff(const std::vector<double>& a,
                      const std::vector<double>& b) {
  auto directed = [](const std::vector<double>& u,
                     const std::vector<double>& v) {
    double h = 0.0;
    size_t j = 0;
    for (double x : u) {
      while (j + 1 < v.size() && v[j + 1] < x) ++j;
      double m = std::abs(v[j] - x);
      if (j + 1 < v.size()) m = std::min(m, std::abs(v[j + 1] - x));
      h = std::max(h, m);
    }
    return h;
  };
  return std::max(directed(a, b), directed(b, a));
}

struct NetStats {
  std::vector<double> diam;
  std::vector<std::vector<double>> ecc;  // sorted eccentricities per element
};

NetStats net_stats(const SliceNet& net) {
  NetStats st;
  st.diam.reserve(net.elements.size());
  st.ecc.reserve(net.elements.size());
  for (const FiniteSpace& s : net.elements) {
    std::vector<double> e(s.size());
    double d = 0.0;
    for (int i = 0; i < s.size(); ++i) {
      double m = 0.0;
      for (int j = 0; j < s.size(); ++j)
        m = std::max(m, s.dist(i, j).value());
      e[i] = m;
      d = std::max(d, m);
    }
    std::sort(e.begin(), e.end());
    st.diam.push_back(d);
    st.ecc.push_back(std::move(e));
  }
  return st;
}

HausdorffOut net_hausdorff(const SliceNet& na, const SliceNet& nb,
                           const RhoParams& params) {
  HausdorffOut out;
  std::set<std::vector<double>> keys_b(nb.keys.begin(), nb.keys.end());
  std::set<std::vector<double>> keys_a(na.keys.begin(), na.keys.end());
  NetStats sa = net_stats(na);
  NetStats sb = net_stats(nb);

  auto directed = [&](const SliceNet& from, const NetStats& fs,
                      const SliceNet& to, const NetStats& ts,
                      const std::set<std::vector<double>>& to_keys) {
    Interval sup(0.0, 0.0);
    std::vector<std::pair<double, int>> ranked(to.elements.size());
    for (size_t i = 0; i < from.elements.size(); ++i) {
      if (to_keys.count(from.keys[i])) continue;  // exact zero, cannot raise sup
      // certified cheap floors, scanned in ascending order so the min
      // stabilizes early and the sorted tail can be cut wholesale
      for (size_t j = 0; j < to.elements.size(); ++j) {
        const double cheap =
            0.5 * std::max(std::abs(fs.diam[i] - ts.diam[j]),
                           line_hausdorff(fs.ecc[i], ts.ecc[j]));
        ranked[j] = {cheap, static_cast<int>(j)};
      }
      std::sort(ranked.begin(), ranked.end());
      Interval inf;
      bool first = true;
      for (const auto& [cheap, j] : ranked) {
        if (!first && cheap >= inf.hi) break;
        Interval d = pair_distance(from.elements[i], from.keys[i],
                                   to.elements[j], to.keys[j],
                                   from.pointed, params);
        inf = first ? d : interval_min(inf, d);
        first = false;
        if (inf.hi <= 0.0) break;
      }
      if (first) continue;  // empty target handled by caller
      if (inf.lo < inf.hi) out.exact = false;
      sup = interval_max(sup, inf);
    }
    return sup;
  };

  Interval d1 = directed(na, sa, nb, sb, keys_b);
  Interval d2 = directed(nb, sb, na, sa, keys_a);
  out.value = interval_max(d1, d2);
  return out;
}

std::vector<double> handle_signature(const PyramidHandle& p, bool pointed) {
  if (p.is_max()) return {-1.0};
  std::vector<double> sig;
  const uint64_t h = p.space().content_hash();
  // split the hash so no bits are lost to the double mantissa
  sig.push_back(static_cast<double>(h >> 32));
  sig.push_back(static_cast<double>(h & 0xffffffffull));
  sig.push_back(p.space().size());
  sig.push_back(pointed ? p.base() : -1);
  return sig;
}

}  // namespace

bool member(const FiniteSpace& y, const PyramidHandle& p, double tol,
            const SearchLimits& limits) {
  if (p.is_max()) return true;
  if (y.size() <= 3 && !y.has_infinite_entry()) {
    MemberPatterns pat = build_patterns(p.space(), -1);
    // patterns are built from the untruncated space here
    return pattern_member(y, pat, false, tol);
  }
  return defect_at_most(y, p.space(), tol, limits);
}

bool member_pointed(const PointedSpace& y, const PyramidHandle& p, double tol,
                    const SearchLimits& limits) {
  if (p.is_max()) return true;
  PointedSpace anchor(p.space(), p.base());
  if (y.space.size() <= 3 && !y.space.has_infinite_entry() && y.base == 0) {
    MemberPatterns pat = build_patterns(p.space(), p.base());
    return pattern_member(y.space, pat, true, tol);
  }
  return defect_at_most_pointed(y, anchor, tol, limits);
}

namespace {

const SliceNet& slice_net_cached(const PyramidHandle& p, int n_cap,
                                 double diam_cap, double delta,
                                 const RhoParams& params, bool pointed,
                                 bool sampled_only) {
  ViewKey key;
  key.content = p.is_max() ? 0 : p.space().content_hash();
  key.base = pointed ? (p.is_max() ? -2 : p.base()) : -1;
  key.n_cap = n_cap;
  key.diam_cap = key_units(diam_cap);
  key.delta = key_units(delta);
  key.beam = params.beam_width;
  key.max_net = params.max_net;
  key.sampled_only = sampled_only;
  auto it = g_net_cache.find(key);
  if (it != g_net_cache.end()) return *it->second;

  std::optional<SliceNet> net;
  if (!sampled_only)
    net = certified_slice(p, n_cap, diam_cap, delta, params, pointed);
  if (!net) net = sampled_slice(p, n_cap, diam_cap, delta, params, pointed);
  auto sp = std::make_shared<SliceNet>(std::move(*net));
  g_net_cache[key] = sp;
  return *sp;
}

}  // namespace

SliceNet slice_net(const PyramidHandle& p, int n_cap, double diam_cap,
                   double delta, const RhoParams& params, bool pointed) {
  if (n_cap < 1 || !(diam_cap > 0.0) || !(delta > 0.0))
    throw PreconditionError("slice_net: require n_cap >= 1, diam_cap > 0, delta > 0");
  return slice_net_cached(p, n_cap, diam_cap, delta, params, pointed, false);
}

namespace {

std::map<std::vector<double>, RhoLevel> g_level_cache;

}  // namespace

RhoLevel rho_level(const PyramidHandle& a, const PyramidHandle& b, int n,
                   const RhoParams& params, bool pointed) {
  std::vector<double> sa = handle_signature(a, pointed);
  std::vector<double> sb = handle_signature(b, pointed);
  if (sb < sa) std::swap(sa, sb);  // the value is symmetric
  std::vector<double> cache_key = sa;
  cache_key.insert(cache_key.end(), sb.begin(), sb.end());
  cache_key.push_back(n);
  cache_key.push_back(params.delta);
  cache_key.push_back(pointed ? 1.0 : 0.0);
  cache_key.push_back(params.beam_width);
  cache_key.push_back(params.max_net);
  auto it = g_level_cache.find(cache_key);
  if (it != g_level_cache.end()) return it->second;

  RhoLevel lvl;
  lvl.n = n;
  const double cap = static_cast<double>(n);
  // Sampled nets shrink at the deepest levels: their weight in the total is
  // already down by 2^-N.
  RhoParams local = params;
  local.max_net = std::max(48, params.max_net >> std::max(0, n - 5));
  const SliceNet* na = &slice_net_cached(a, n, cap, local.delta, local,
                                         pointed, false);
  const SliceNet* nb = &slice_net_cached(b, n, cap, local.delta, local,
                                         pointed, false);
  // A complete grid slice compared against a heuristic sample reads as a
  // spurious gap; compare through the same lens on both sides.
  if (na->certified != nb->certified) {
    na = &slice_net_cached(a, n, cap, local.delta, local, pointed, true);
    nb = &slice_net_cached(b, n, cap, local.delta, local, pointed, true);
  }
  HausdorffOut h = net_hausdorff(*na, *nb, local);
  lvl.value = h.value.clamped(0.0, static_cast<double>(n));
  lvl.certified = na->certified && nb->certified;
  lvl.radius_sum = na->net_radius + nb->net_radius;
  lvl.sampling_slack = na->sampling_slack + nb->sampling_slack;
  g_level_cache[cache_key] = lvl;
  return lvl;
}

namespace {

RhoEstimate rho_impl(const PyramidHandle& a, const PyramidHandle& b,
                     const RhoParams& params, bool pointed) {
  RhoEstimate est;
  double lo = 0.0, hi = 0.0, gap = 0.0;
  est.fully_certified = true;
  for (int n = 1; n <= params.n_max; ++n) {
    RhoLevel lvl = rho_level(a, b, n, params, pointed);
    const double w = std::pow(2.0, -n);
    lo += w * lvl.value.lo;
    hi += w * lvl.value.hi;
    gap += w * lvl.radius_sum;
    est.fully_certified = est.fully_certified && lvl.certified;
    est.levels.push_back(std::move(lvl));
  }
  est.tail_bound = (params.n_max + 2.0) * std::pow(2.0, -params.n_max);
  est.total = Interval(lo, hi + est.tail_bound);
  est.model_gap = gap;
  return est;
}

}  // namespace

RhoEstimate rho(const PyramidHandle& a, const PyramidHandle& b,
                const RhoParams& params) {
  return rho_impl(a, b, params, false);
}

RhoEstimate rho_pointed(const PyramidHandle& a, const PyramidHandle& b,
                        const RhoParams& params) {
  return rho_impl(a, b, params, true);
}

std::vector<SliceConvergenceRow> slice_converge_report(
    const std::vector<PyramidHandle>& sequence, const PyramidHandle& target,
    int n_cap, double diam_cap, double delta, const RhoParams& params) {
  std::vector<SliceConvergenceRow> rows;
  for (const PyramidHandle& h : sequence) {
    const SliceNet* nh =
        &slice_net_cached(h, n_cap, diam_cap, delta, params, false, false);
    const SliceNet* nt =
        &slice_net_cached(target, n_cap, diam_cap, delta, params, false, false);
    if (nh->certified != nt->certified) {
      nh = &slice_net_cached(h, n_cap, diam_cap, delta, params, false, true);
      nt = &slice_net_cached(target, n_cap, diam_cap, delta, params, false, true);
    }
    HausdorffOut out = net_hausdorff(*nh, *nt, params);
    SliceConvergenceRow row;
    row.label = h.is_max() ? "MAX" : h.space().label();
    row.value = out.value;
    row.certified = nt->certified && nh->certified;
    rows.push_back(std::move(row));
  }
  return rows;
}

void clear_pyramid_caches() {
  g_universe_cache.clear();
  g_universe_failed.clear();
  g_net_cache.clear();
  g_pair_cache.clear();
  g_level_cache.clear();
}

}  // namespace ghp
