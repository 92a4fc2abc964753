/* Apache License, Version 2.0 */
#include "ghp/finite_space.hpp"

#include "ghp/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

namespace ghp {

std::string ExtReal::str() const {
  if (is_inf()) return "inf";
  std::ostringstream os;
  os << v_;
  return os.str();
}

std::string Violation::str() const {
  std::ostringstream os;
  switch (kind) {
    case ViolationKind::NotSquare:
      os << "matrix is not square";
      break;
    case ViolationKind::NegativeEntry:
      os << "negative entry at (" << i << "," << j << ")";
      break;
    case ViolationKind::NonzeroDiagonal:
      os << "nonzero diagonal at (" << i << "," << i << ")";
      break;
    case ViolationKind::Asymmetric:
      os << "asymmetric pair (" << i << "," << j << ")";
      break;
    case ViolationKind::TriangleViolation:
      os << "triangle violation: d(" << i << "," << j << ") > d(" << i << ","
         << k << ") + d(" << k << "," << j << ")";
      break;
    case ViolationKind::DuplicatePoint:
      os << "duplicate points (" << i << "," << j << ") at distance 0";
      break;
  }
  return os.str();
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.str() << "\n";
  return os.str();
}

ValidationReport validate(const RawMatrix& m) {
  ValidationReport rep;
  const int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n) {
      rep.violations.push_back({ViolationKind::NotSquare, i, -1, -1});
      return rep;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!(m[i][i] == ExtReal(0.0)))
      rep.violations.push_back({ViolationKind::NonzeroDiagonal, i, i, -1});
    for (int j = 0; j < n; ++j) {
      if (!m[i][j].is_inf() && !(m[i][j].value() >= 0.0))
        rep.violations.push_back({ViolationKind::NegativeEntry, i, j, -1});
    }
    for (int j = i + 1; j < n; ++j) {
      if (!(m[i][j] == m[j][i]))
        rep.violations.push_back({ViolationKind::Asymmetric, i, j, -1});
      if (m[i][j] == ExtReal(0.0))
        rep.violations.push_back({ViolationKind::DuplicatePoint, i, j, -1});
    }
  }
  if (!rep.ok()) return rep;  // triangle checks assume a symmetric base
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const ExtReal lhs = m[i][j];
        const ExtReal rhs = m[i][k] + m[k][j];
        if (rhs < lhs) {
          // tolerate rounding dust from scaled or transported matrices
          const double slack =
              1e-12 * std::max(1.0, lhs.is_inf() ? 1.0 : lhs.value());
          if (rhs.is_inf() || lhs.is_inf() ||
              lhs.value() > rhs.value() + slack)
            rep.violations.push_back(
                {ViolationKind::TriangleViolation, i, j, k});
        }
      }
  return rep;
}

FiniteSpace::FiniteSpace(RawMatrix m, std::string label)
    : n_(static_cast<int>(m.size())), label_(std::move(label)) {
  if (n_ < 1) {
    ValidationReport rep;
    rep.violations.push_back({ViolationKind::NotSquare, -1, -1, -1});
    throw InvalidSpaceError("empty matrix", rep);
  }
  ValidationReport rep = validate(m);
  if (!rep.ok())
    throw InvalidSpaceError("invalid metric matrix:\n" + rep.str(), rep);
  d_.reserve(static_cast<size_t>(n_) * n_);
  for (const auto& row : m)
    for (ExtReal v : row) d_.push_back(v);
}

FiniteSpace::FiniteSpace(Unchecked, int n, std::vector<ExtReal> flat,
                         std::string label)
    : n_(n), d_(std::move(flat)), label_(std::move(label)) {}

FiniteSpace make_unchecked(int n, std::vector<ExtReal> flat, std::string label) {
  return FiniteSpace(FiniteSpace::Unchecked{}, n, std::move(flat),
                     std::move(label));
}

ExtReal FiniteSpace::diameter() const {
  ExtReal d(0.0);
  for (const ExtReal& v : d_) d = ext_max(d, v);
  return d;
}

ExtReal FiniteSpace::eccentricity(int i) const {
  ExtReal d(0.0);
  for (int j = 0; j < n_; ++j) d = ext_max(d, dist(i, j));
  return d;
}

bool FiniteSpace::has_infinite_entry() const {
  for (const ExtReal& v : d_)
    if (v.is_inf()) return true;
  return false;
}

bool FiniteSpace::on_grid(double delta, double tol) const {
  for (const ExtReal& v : d_) {
    if (v.is_inf()) continue;
    const double q = v.value() / delta;
    if (std::abs(q - std::round(q)) > tol) return false;
  }
  return true;
}

FiniteSpace FiniteSpace::restrict(const std::vector<int>& idx) const {
  const int m = static_cast<int>(idx.size());
  std::vector<ExtReal> flat(static_cast<size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) flat[static_cast<size_t>(a) * m + b] = dist(idx[a], idx[b]);
  return make_unchecked(m, std::move(flat), label_);
}

RawMatrix FiniteSpace::matrix() const {
  RawMatrix m(n_, std::vector<ExtReal>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m[i][j] = dist(i, j);
  return m;
}

uint64_t FiniteSpace::content_hash() const {
  // Full 64-bit finalization per word: the bit patterns of grid-valued
  // doubles are sparse, and a plain FNV fold measurably collides on them.
  auto fin = [](uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  uint64_t h = fin(static_cast<uint64_t>(n_));
  for (const ExtReal& v : d_) {
    double x = v.is_inf() ? -1.0 : v.value();
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(x));
    std::memcpy(&bits, &x, sizeof(bits));
    h = fin(h ^ bits);
  }
  return h;
}

PointedSpace::PointedSpace(FiniteSpace s, int base_idx)
    : space(std::move(s)), base(base_idx) {
  if (base < 0 || base >= space.size())
    throw std::invalid_argument("PointedSpace: base index out of range");
}

FiniteSpace truncate(const FiniteSpace& x, double cap) {
  if (!(cap > 0.0)) throw std::invalid_argument("truncate: cap must be > 0");
  const int n = x.size();
  std::vector<ExtReal> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      flat[static_cast<size_t>(i) * n + j] = ext_min(x.dist(i, j), ExtReal(cap));
  return make_unchecked(n, std::move(flat), x.label());
}

FiniteSpace scale(const FiniteSpace& x, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("scale: factor must be > 0");
  const int n = x.size();
  std::vector<ExtReal> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      flat[static_cast<size_t>(i) * n + j] = ext_scale(x.dist(i, j), t);
  return make_unchecked(n, std::move(flat), x.label());
}

PointedSpace ball(const PointedSpace& p, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("ball: radius must be > 0");
  std::vector<int> keep;
  const double slack = 1e-12 * std::max(1.0, r);
  for (int i = 0; i < p.space.size(); ++i) {
    ExtReal d = p.space.dist(p.base, i);
    if (!d.is_inf() && d.value() <= r + slack) keep.push_back(i);
  }
  int new_base = 0;
  for (size_t t = 0; t < keep.size(); ++t)
    if (keep[t] == p.base) new_base = static_cast<int>(t);
  return PointedSpace(p.space.restrict(keep), new_base);
}

namespace {

// Depth-first lexicographic minimization over permutations. The comparison
// state against the incumbent key is carried per branch: EQUAL means the
// prefix matches the incumbent so far, LESS means it is already strictly
// smaller (no further pruning applies on that branch).
struct CanonState {
  enum Cmp { EQUAL, LESS };

  const FiniteSpace* x;
  int n;
  std::vector<int> perm;
  std::vector<bool> used;
  std::vector<double> best;
  std::vector<double> cur;
  bool best_set = false;

  static double key_value(ExtReal v) { return v.is_inf() ? 1e300 : v.value(); }

  void dfs(int depth, Cmp cmp) {
    if (depth == n) {
      // Full compare at the leaf: the incumbent may have shrunk since this
      // branch's cmp state was computed.
      if (!best_set || cur < best) {
        best = cur;
        best_set = true;
      }
      return;
    }
    for (int cand = 0; cand < n; ++cand) {
      if (used[cand]) continue;
      size_t mark = cur.size();
      Cmp branch_cmp = cmp;
      bool viable = true;
      for (int t = 0; t < depth; ++t) {
        double v = key_value(x->dist(perm[t], cand));
        cur.push_back(v);
        if (best_set && branch_cmp == EQUAL) {
          size_t idx = cur.size() - 1;
          if (v > best[idx]) {
            viable = false;
            break;
          }
          if (v < best[idx]) branch_cmp = LESS;
        }
      }
      if (viable) {
        perm[depth] = cand;
        used[cand] = true;
        dfs(depth + 1, branch_cmp);
        used[cand] = false;
      }
      cur.resize(mark);
    }
  }
};

}  // namespace

std::vector<double> canonical_key(const FiniteSpace& x, int fixed_base,
                                  int max_exact) {
  const int n = x.size();
  if (n > max_exact) {
    // Permutation-invariant digest: global sorted entries plus sorted row
    // profiles (rows sorted internally, then rows sorted lexicographically).
    std::vector<double> key;
    std::vector<double> all;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < n; ++i) {
      std::vector<double> row;
      for (int j = 0; j < n; ++j) {
        double v = x.dist(i, j).is_inf() ? 1e300 : x.dist(i, j).value();
        row.push_back(v);
        if (j > i) all.push_back(v);
      }
      std::sort(row.begin(), row.end());
      if (fixed_base >= 0 && i == fixed_base) {
        key.insert(key.end(), row.begin(), row.end());
      } else {
        rows.push_back(std::move(row));
      }
    }
    std::sort(all.begin(), all.end());
    std::sort(rows.begin(), rows.end());
    key.push_back(static_cast<double>(n));
    key.insert(key.end(), all.begin(), all.end());
    for (auto& r : rows) key.insert(key.end(), r.begin(), r.end());
    return key;
  }
  CanonState st;
  st.x = &x;
  st.n = n;
  st.perm.assign(n, -1);
  st.used.assign(n, false);
  if (fixed_base >= 0) {
    st.perm[0] = fixed_base;
    st.used[fixed_base] = true;
    st.dfs(1, CanonState::EQUAL);
  } else {
    st.dfs(0, CanonState::EQUAL);
  }
  std::vector<double> key;
  key.push_back(static_cast<double>(n));
  key.insert(key.end(), st.best.begin(), st.best.end());
  return key;
}

FiniteSpace sigma_space(int n, ExtReal d, std::string label) {
  std::vector<ExtReal> flat(static_cast<size_t>(n) * n, d);
  for (int i = 0; i < n; ++i) flat[static_cast<size_t>(i) * n + i] = ExtReal(0.0);
  return make_unchecked(n, std::move(flat), std::move(label));
}

std::string Interval::str() const {
  std::ostringstream os;
  os << "[" << lo << ", " << hi << "]";
  return os.str();
}

}  // namespace ghp
