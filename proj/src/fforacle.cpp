#include "dtwc/fforacle.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>

namespace dtwc {

namespace {

// Irreducible polynomials for the extension fields, low-to-high coefficients
// of x^k (leading 1 implicit): GF(4): x^2+x+1, GF(8): x^3+x+1, GF(9): x^2+1.
const std::vector<int>& irreducible_for(int p, int k) {
  static const std::vector<int> f4 = {1, 1};
  static const std::vector<int> f8 = {1, 1, 0};
  static const std::vector<int> f9 = {1, 0};
  if (p == 2 && k == 2) return f4;
  if (p == 2 && k == 3) return f8;
  if (p == 3 && k == 2) return f9;
  throw std::invalid_argument("no irreducible polynomial configured");
}

}  // namespace

FiniteField FiniteField::make(int q) {
  for (int p : {2, 3, 5, 7}) {
    if (q == p) {
      FiniteField f;
      f.build_prime(p);
      return f;
    }
    int k = 0, x = q;
    while (x % p == 0) {
      x /= p;
      ++k;
    }
    if (x == 1 && k > 1) {
      FiniteField f;
      f.build_extension(p, k, irreducible_for(p, k));
      return f;
    }
  }
  throw std::invalid_argument("unsupported field size " + std::to_string(q));
}

void FiniteField::build_prime(int p) {
  q_ = p;
  p_ = p;
  k_ = 1;
  add_.resize(p * p);
  mul_.resize(p * p);
  neg_.resize(p);
  inv_.assign(p, 0);
  for (int a = 0; a < p; ++a) {
    neg_[a] = (p - a) % p;
    for (int b = 0; b < p; ++b) {
      add_[a * p + b] = (a + b) % p;
      mul_[a * p + b] = (a * b) % p;
    }
  }
  for (int a = 1; a < p; ++a)
    for (int b = 1; b < p; ++b)
      if (a * b % p == 1) inv_[a] = b;
  spot_check();
}

void FiniteField::build_extension(int p, int k,
                                  const std::vector<int>& irreducible) {
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= p;
  p_ = p;
  k_ = k;
  auto digits = [&](int a) {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  };
  auto encode = [&](const std::vector<int>& d) {
    int a = 0;
    for (int i = k - 1; i >= 0; --i) a = a * p + d[i];
    return a;
  };
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    auto da = digits(a);
    std::vector<int> dn(k);
    for (int i = 0; i < k; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = encode(dn);
    for (int b = 0; b < q_; ++b) {
      auto db = digits(b);
      std::vector<int> ds(k);
      for (int i = 0; i < k; ++i) ds[i] = (da[i] + db[i]) % p;
      add_[a * q_ + b] = encode(ds);
      // polynomial product reduced by x^k = -irreducible
      std::vector<int> prod(2 * k - 1, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      for (int deg = 2 * k - 2; deg >= k; --deg) {
        int c = prod[deg];
        if (c == 0) continue;
        prod[deg] = 0;
        for (int i = 0; i < k; ++i)
          prod[deg - k + i] =
              (prod[deg - k + i] + (p - irreducible[i]) * c) % p;
      }
      prod.resize(k);
      mul_[a * q_ + b] = encode(prod);
    }
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = b;
  spot_check();
}

int FiniteField::inv(int a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return inv_[a];
}

void FiniteField::spot_check() const {
  // Field axioms on all triples for these tiny tables.
  for (int a = 0; a < q_; ++a) {
    if (add(a, neg_[a]) != 0) throw std::logic_error("field: bad negation");
    if (a != 0 && mul(a, inv_[a]) != 1)
      throw std::logic_error("field: bad inverse");
    for (int b = 0; b < q_; ++b) {
      if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a))
        throw std::logic_error("field: commutativity fails");
      for (int c = 0; c < q_ && q_ <= 16; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c)))
          throw std::logic_error("field: additive associativity fails");
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw std::logic_error("field: multiplicative associativity fails");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
          throw std::logic_error("field: distributivity fails");
      }
    }
  }
}

namespace {

Int gl_order(const FiniteField& F, long long d) {
  Int q(F.q());
  Int order = 1;
  Int qd = int_pow(q, (unsigned long)d);
  Int qi = 1;
  for (long long i = 0; i < d; ++i) {
    order *= (qd - qi);
    qi *= q;
  }
  return order;
}

// Row space in reduced echelon form over F.
struct Subspace {
  std::vector<std::vector<int>> rows;  // each of length n
  std::vector<int> pivots;

  int dim() const { return (int)rows.size(); }

  // Returns true if v was independent (and inserts it).
  bool insert(const FiniteField& F, std::vector<int> v) {
    const int n = (int)v.size();
    for (size_t r = 0; r < rows.size(); ++r) {
      int c = v[pivots[r]];
      if (c == 0) continue;
      for (int j = 0; j < n; ++j)
        v[j] = F.sub(v[j], F.mul(c, rows[r][j]));
    }
    int pivot = -1;
    for (int j = 0; j < n; ++j)
      if (v[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot < 0) return false;
    int s = F.inv(v[pivot]);
    for (int j = 0; j < n; ++j) v[j] = F.mul(v[j], s);
    rows.push_back(std::move(v));
    pivots.push_back(pivot);
    return true;
  }

  bool contains(const FiniteField& F, std::vector<int> v) const {
    const int n = (int)v.size();
    for (size_t r = 0; r < rows.size(); ++r) {
      int c = v[pivots[r]];
      if (c == 0) continue;
      for (int j = 0; j < n; ++j)
        v[j] = F.sub(v[j], F.mul(c, rows[r][j]));
    }
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
  }
};

// All subspaces of F^n by reduced-echelon enumeration (n small).
std::vector<Subspace> all_subspaces(const FiniteField& F, int n) {
  std::vector<Subspace> out;
  out.push_back(Subspace{});  // zero space
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int k = 1; k <= n; ++k) {
    std::vector<int> comb(k);
    std::function<void(int, int)> pick = [&](int start, int depth) {
      if (depth == k) {
        // free positions: row i, column j with j > pivots[i], j not a pivot
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < k; ++i)
          for (int j = comb[i] + 1; j < n; ++j)
            if (std::find(comb.begin(), comb.end(), j) == comb.end())
              free_pos.emplace_back(i, j);
        std::vector<int> assign(free_pos.size(), 0);
        while (true) {
          Subspace s;
          s.pivots = comb;
          s.rows.assign(k, std::vector<int>(n, 0));
          for (int i = 0; i < k; ++i) s.rows[i][comb[i]] = 1;
          for (size_t t = 0; t < free_pos.size(); ++t)
            s.rows[free_pos[t].first][free_pos[t].second] = assign[t];
          out.push_back(std::move(s));
          int t = (int)assign.size() - 1;
          while (t >= 0 && assign[t] == F.q() - 1) assign[t--] = 0;
          if (t < 0) break;
          ++assign[t];
        }
        return;
      }
      for (int j = start; j < n; ++j) {
        comb[depth] = j;
        pick(j + 1, depth + 1);
      }
    };
    pick(0, 0);
  }
  return out;
}

struct EdgeMapLayout {
  // For each edge: offset into the flat entry buffer; matrix is
  // d(head) x d(tail), row-major.
  std::vector<long long> offset;
  long long total = 0;
};

EdgeMapLayout layout_edges(const Quiver& q, const KClass& d) {
  EdgeMapLayout lay;
  for (auto [t, h] : q.edges) {
    lay.offset.push_back(lay.total);
    lay.total += d[h] * d[t];
  }
  return lay;
}

// y = M v for the matrix of edge ei inside `entries`.
void apply_edge(const FiniteField& F, const Quiver& q, const KClass& d,
                const EdgeMapLayout& lay, const std::vector<int>& entries,
                size_t ei, const std::vector<int>& v, std::vector<int>& y) {
  auto [t, h] = q.edges[ei];
  long long rows = d[h], cols = d[t];
  const int* m = entries.data() + lay.offset[ei];
  y.assign((size_t)rows, 0);
  for (long long r = 0; r < rows; ++r) {
    int acc = 0;
    for (long long c = 0; c < cols; ++c)
      acc = F.add(acc, F.mul(m[r * cols + c], v[(size_t)c]));
    y[(size_t)r] = acc;
  }
}

// Span closure of the given seed vectors under all edge maps; true if the
// closure is everything.
bool closure_is_full(const FiniteField& F, const Quiver& q, const KClass& d,
                     const EdgeMapLayout& lay, const std::vector<int>& entries,
                     std::vector<std::vector<std::vector<int>>> seeds) {
  const int nv = q.rank();
  std::vector<Subspace> span(nv);
  // worklist of (vertex, vector)
  std::vector<std::pair<int, std::vector<int>>> work;
  for (int v = 0; v < nv; ++v)
    for (auto& s : seeds[v])
      if (span[v].insert(F, s)) work.emplace_back(v, span[v].rows.back());
  std::vector<int> image;
  while (!work.empty()) {
    auto [v, vec] = std::move(work.back());
    work.pop_back();
    for (size_t ei = 0; ei < q.edges.size(); ++ei) {
      if (q.edges[ei].first != v) continue;
      int h = q.edges[ei].second;
      if (span[h].dim() == d[h]) continue;
      apply_edge(F, q, d, lay, entries, ei, vec, image);
      if (span[h].insert(F, image)) work.emplace_back(h, span[h].rows.back());
    }
  }
  for (int v = 0; v < nv; ++v)
    if (span[v].dim() != d[v]) return false;
  return true;
}

bool stability_is_trivial(const WeakStability& mu) {
  if (std::get_if<WeakStability::Trivial>(&mu.kind)) return true;
  return false;
}

// Slope of a dimension vector under mu (Trivial -> 0).
Rational dim_slope(const WeakStability& mu, const KClass& dims) {
  return slope_value(mu, dims);
}

}  // namespace

Int count_stable_framings_direct(const FiniteField& F, const Quiver& q,
                                 const KClass& d, const KClass& e,
                                 const WeakStability& mu,
                                 const std::vector<std::vector<int>>& maps) {
  // maps: per-edge flat matrices.  Enumerate framings sigma (per vertex a
  // d(v) x e(v) matrix) and test stability directly.
  EdgeMapLayout lay = layout_edges(q, d);
  std::vector<int> entries;
  entries.reserve((size_t)lay.total);
  for (const auto& m : maps) entries.insert(entries.end(), m.begin(), m.end());

  const int nv = q.rank();
  long long sig_entries = 0;
  for (int v = 0; v < nv; ++v) sig_entries += d[v] * e[v];
  std::vector<int> sigma((size_t)sig_entries, 0);

  bool trivial = stability_is_trivial(mu);
  // Invariant-subspace data for the slope path.
  std::vector<std::vector<Subspace>> per_vertex;
  std::vector<std::vector<std::vector<const Subspace*>>> critical_tuples;
  std::vector<std::vector<const Subspace*>> invariant_tuples;
  if (!trivial) {
    for (int v = 0; v < nv; ++v) per_vertex.push_back(all_subspaces(F, (int)d[v]));
    // all invariant tuples
    std::vector<const Subspace*> cur(nv, nullptr);
    std::vector<int> image;
    std::function<void(int)> rec = [&](int v) {
      if (v == nv) {
        // check invariance
        for (size_t ei = 0; ei < q.edges.size(); ++ei) {
          auto [t, h] = q.edges[ei];
          for (const auto& row : cur[t]->rows) {
            apply_edge(F, q, d, lay, entries, ei, row, image);
            if (!cur[h]->contains(F, image)) return;
          }
        }
        invariant_tuples.push_back(cur);
        return;
      }
      for (const auto& s : per_vertex[v]) {
        cur[v] = &s;
        rec(v + 1);
      }
    };
    rec(0);
  }

  Rational mu_total = trivial ? Rational(0) : dim_slope(mu, d);
  // Precompute stability condition (i) (independent of sigma) and the list
  // of "critical" walls for (ii).
  std::vector<std::vector<const Subspace*>> walls;
  if (!trivial) {
    for (const auto& tup : invariant_tuples) {
      KClass dims(nv);
      bool zero = true, full = true;
      for (int v = 0; v < nv; ++v) {
        dims[v] = tup[v]->dim();
        if (dims[v] != 0) zero = false;
        if (dims[v] != d[v]) full = false;
      }
      if (full) continue;
      if (zero) {
        walls.push_back(tup);  // sigma = 0 is never stable
        continue;
      }
      Rational s = dim_slope(mu, dims);
      if (s > mu_total) return 0;   // condition (i) fails for every framing
      if (s == mu_total) walls.push_back(tup);
    }
  }

  Int count = 0;
  while (true) {
    // test this sigma
    bool stable;
    if (trivial) {
      std::vector<std::vector<std::vector<int>>> seeds(nv);
      long long off = 0;
      for (int v = 0; v < nv; ++v) {
        for (long long col = 0; col < e[v]; ++col) {
          std::vector<int> vec((size_t)d[v]);
          for (long long r = 0; r < d[v]; ++r)
            vec[(size_t)r] = sigma[(size_t)(off + r * e[v] + col)];
          seeds[v].push_back(std::move(vec));
        }
        off += d[v] * e[v];
      }
      stable = closure_is_full(F, q, d, lay, entries, std::move(seeds));
    } else {
      stable = true;
      for (const auto& tup : walls) {
        bool contains_image = true;
        long long off = 0;
        for (int v = 0; v < nv && contains_image; ++v) {
          for (long long col = 0; col < e[v] && contains_image; ++col) {
            std::vector<int> vec((size_t)d[v]);
            for (long long r = 0; r < d[v]; ++r)
              vec[(size_t)r] = sigma[(size_t)(off + r * e[v] + col)];
            if (!tup[v]->contains(F, vec)) contains_image = false;
          }
          off += d[v] * e[v];
        }
        if (contains_image) {
          stable = false;
          break;
        }
      }
    }
    if (stable) ++count;
    // odometer
    long long t = sig_entries - 1;
    while (t >= 0 && sigma[(size_t)t] == F.q() - 1) sigma[(size_t)t--] = 0;
    if (t < 0) break;
    ++sigma[(size_t)t];
  }
  return count;
}

Int count_stable_framings_subspace(const FiniteField& F, const Quiver& q,
                                   const KClass& d, const KClass& e,
                                   const WeakStability& mu,
                                   const std::vector<std::vector<int>>& maps) {
  if (!stability_is_trivial(mu))
    return count_stable_framings_direct(F, q, d, e, mu, maps);
  // mu = 0: a framing is stable iff its image lies in no proper invariant
  // subrepresentation.  Enumerate invariant subspace tuples, then scan
  // framings against them.
  EdgeMapLayout lay = layout_edges(q, d);
  std::vector<int> entries;
  for (const auto& m : maps) entries.insert(entries.end(), m.begin(), m.end());
  const int nv = q.rank();
  std::vector<std::vector<Subspace>> per_vertex;
  for (int v = 0; v < nv; ++v) per_vertex.push_back(all_subspaces(F, (int)d[v]));
  std::vector<std::vector<const Subspace*>> proper_invariant;
  std::vector<const Subspace*> cur(nv, nullptr);
  std::vector<int> image;
  std::function<void(int)> rec = [&](int v) {
    if (v == nv) {
      bool full = true;
      for (int u = 0; u < nv; ++u)
        if (cur[u]->dim() != d[u]) full = false;
      if (full) return;
      for (size_t ei = 0; ei < q.edges.size(); ++ei) {
        auto [t, h] = q.edges[ei];
        for (const auto& row : cur[t]->rows) {
          apply_edge(F, q, d, lay, entries, ei, row, image);
          if (!cur[h]->contains(F, image)) return;
        }
      }
      proper_invariant.push_back(cur);
      return;
    }
    for (const auto& s : per_vertex[v]) {
      cur[v] = &s;
      rec(v + 1);
    }
  };
  rec(0);

  long long sig_entries = 0;
  for (int v = 0; v < nv; ++v) sig_entries += d[v] * e[v];
  std::vector<int> sigma((size_t)sig_entries, 0);
  Int count = 0;
  while (true) {
    bool stable = true;
    for (const auto& tup : proper_invariant) {
      bool contains_image = true;
      long long off = 0;
      for (int v = 0; v < nv && contains_image; ++v) {
        for (long long col = 0; col < e[v] && contains_image; ++col) {
          std::vector<int> vec((size_t)d[v]);
          for (long long r = 0; r < d[v]; ++r)
            vec[(size_t)r] = sigma[(size_t)(off + r * e[v] + col)];
          if (!tup[v]->contains(F, vec)) contains_image = false;
        }
        off += d[v] * e[v];
      }
      if (contains_image) {
        stable = false;
        break;
      }
    }
    if (stable) ++count;
    long long t = sig_entries - 1;
    while (t >= 0 && sigma[(size_t)t] == F.q() - 1) sigma[(size_t)t--] = 0;
    if (t < 0) break;
    ++sigma[(size_t)t];
  }
  return count;
}

namespace {

// Fast path: one vertex, e = 1, mu = 0, d = 1 or 2.  Returns the number of
// stable framing vectors for the edge maps in `entries`.
long long cyclic_vector_count_fast(const FiniteField& F, int m, int d,
                                   const std::vector<int>& entries,
                                   const std::vector<std::vector<int>>& lines) {
  const int q = F.q();
  if (d == 1) return q - 1;
  // d == 2: cyclic vectors are the nonzero vectors spanning no common
  // invariant line of all m matrices.
  int invariant_lines = 0;
  for (const auto& v : lines) {
    bool inv = true;
    for (int e = 0; e < m && inv; ++e) {
      const int* a = entries.data() + 4 * e;
      int x = F.add(F.mul(a[0], v[0]), F.mul(a[1], v[1]));
      int y = F.add(F.mul(a[2], v[0]), F.mul(a[3], v[1]));
      // (x,y) parallel to v: cross product zero
      int cross = F.sub(F.mul(x, v[1]), F.mul(y, v[0]));
      if (cross != 0) inv = false;
    }
    if (inv) ++invariant_lines;
  }
  return (long long)q * q - 1 - (long long)invariant_lines * (q - 1);
}

}  // namespace

Int count_stable_framed(const FiniteField& F, const Quiver& q, const KClass& d,
                        const KClass& e, const WeakStability& mu,
                        const OracleBudget& budget) {
  if ((int)d.size() != q.rank() || (int)e.size() != q.rank())
    throw std::invalid_argument("count_stable_framed: rank mismatch");
  if (kclass_is_zero(d)) return 1;  // the empty representation

  EdgeMapLayout lay = layout_edges(q, d);
  double states = std::pow((double)F.q(), (double)lay.total);
  bool trivial = stability_is_trivial(mu);
  bool fast = trivial && q.rank() == 1 && e[0] == 1 && (d[0] == 1 || d[0] == 2);
  if (!fast) {
    long long sig_entries = 0;
    for (int v = 0; v < q.rank(); ++v) sig_entries += d[v] * e[v];
    states *= std::pow((double)F.q(), (double)sig_entries);
  }
  if (states > budget.max_states)
    throw std::domain_error("count_stable_framed: enumeration exceeds budget");

  // line representatives for the d=2 fast path
  std::vector<std::vector<int>> lines;
  if (fast && d[0] == 2) {
    for (int t = 0; t < F.q(); ++t) lines.push_back({1, t});
    lines.push_back({0, 1});
  }

  std::vector<int> entries((size_t)lay.total, 0);
  Int raw = 0;
  const int m_edges = (int)q.edges.size();
  while (true) {
    if (fast) {
      raw += cyclic_vector_count_fast(F, m_edges, (int)d[0], entries, lines);
    } else {
      std::vector<std::vector<int>> maps;
      long long off = 0;
      for (size_t ei = 0; ei < q.edges.size(); ++ei) {
        auto [t, h] = q.edges[ei];
        maps.emplace_back(entries.begin() + off,
                          entries.begin() + off + d[h] * d[t]);
        off += d[h] * d[t];
      }
      raw += count_stable_framings_direct(F, q, d, e, mu, maps);
    }
    long long t = lay.total - 1;
    while (t >= 0 && entries[(size_t)t] == F.q() - 1) entries[(size_t)t--] = 0;
    if (t < 0) break;
    ++entries[(size_t)t];
  }

  Int group = 1;
  for (int v = 0; v < q.rank(); ++v) group *= gl_order(F, d[v]);
  if (raw % group != 0)
    throw std::logic_error(
        "count_stable_framed: raw count not divisible by the group order");
  return raw / group;
}

namespace {

// Lagrange interpolation through (x_i, y_i), coefficients low-to-high.
std::vector<Rational> lagrange(const std::vector<std::pair<int, Int>>& pts) {
  const size_t n = pts.size();
  std::vector<Rational> acc(n, 0);
  for (size_t i = 0; i < n; ++i) {
    std::vector<Rational> basis = {1};
    Rational denom = 1;
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      // basis *= (x - x_j)
      std::vector<Rational> next(basis.size() + 1, 0);
      for (size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * pts[j].first;
      }
      basis = std::move(next);
      denom *= Rational(pts[i].first - pts[j].first);
    }
    Rational scale = Rational(pts[i].second) / denom;
    for (size_t k = 0; k < basis.size(); ++k) acc[k] += basis[k] * scale;
  }
  while (!acc.empty() && acc.back() == 0) acc.pop_back();
  return acc;
}

}  // namespace

CountResult euler_characteristic(const Quiver& q, const KClass& d,
                                 const KClass& e, const WeakStability& mu,
                                 const std::vector<int>& fields,
                                 const OracleBudget& budget, int threads) {
  CountResult res;
  res.quiver = q;
  res.d = d;
  res.e = e;
  res.mu_name = mu.name;
  res.chi_hat_dd = euler_hat(q, d, d);
  res.framing_pairing = 0;
  for (int v = 0; v < q.rank(); ++v) res.framing_pairing += e[v] * d[v];

  long long dim = -res.chi_hat_dd + res.framing_pairing;
  if (dim < 0) dim = 0;
  if ((long long)fields.size() < dim + 1)
    throw std::invalid_argument(
        "euler_characteristic: need at least dim+1 field samples");

  std::vector<Int> counts(fields.size());
  auto run = [&](size_t i) {
    FiniteField F = FiniteField::make(fields[i]);
    counts[i] = count_stable_framed(F, q, d, e, mu, budget);
  };
  if (threads <= 1) {
    for (size_t i = 0; i < fields.size(); ++i) run(i);
  } else {
    std::vector<std::future<void>> futs;
    for (size_t i = 0; i < fields.size(); ++i)
      futs.push_back(std::async(std::launch::async, run, i));
    for (auto& f : futs) f.get();
  }
  for (size_t i = 0; i < fields.size(); ++i)
    res.samples.push_back(CountSample{fields[i], counts[i]});

  std::vector<std::pair<int, Int>> pts;
  for (size_t i = 0; i <= (size_t)dim; ++i)
    pts.emplace_back(fields[i], counts[i]);
  auto coeffs = lagrange(pts);
  // remaining samples must agree with the interpolant
  for (size_t i = dim + 1; i < fields.size(); ++i) {
    Rational val = 0;
    for (size_t k = coeffs.size(); k-- > 0;)
      val = val * fields[i] + coeffs[k];
    if (val != Rational(counts[i]))
      throw std::logic_error(
          "euler_characteristic: samples inconsistent with a degree-" +
          std::to_string(dim) + " polynomial (enumeration bug?)");
  }
  for (const auto& c : coeffs) {
    if (!is_integer(c))
      throw std::logic_error(
          "euler_characteristic: interpolant has non-integer coefficients");
    res.poly.push_back(rat_num(c));
  }
  if (!res.poly.empty() && res.poly.back() < 0)
    throw std::logic_error(
        "euler_characteristic: negative leading coefficient");
  for (const auto& c : res.poly) res.euler += c;  // value at q = 1
  return res;
}

Rational ndt_from_count(const CountResult& r) {
  int sign = parity_sign(r.chi_hat_dd + r.framing_pairing);
  return Rational(r.euler) * sign;
}

std::string count_result_to_json(const CountResult& r) {
  nlohmann::ordered_json j;
  j["quiver"] = nlohmann::ordered_json::parse(quiver_to_json(r.quiver));
  j["d"] = r.d;
  j["e"] = r.e;
  j["mu"] = r.mu_name;
  auto samples = nlohmann::ordered_json::array();
  for (const auto& s : r.samples) {
    nlohmann::ordered_json o;
    o["q"] = s.q;
    o["count"] = s.count.str();
    samples.push_back(std::move(o));
  }
  j["samples"] = std::move(samples);
  auto poly = nlohmann::ordered_json::array();
  for (const auto& c : r.poly) poly.push_back(c.str());
  j["polynomial"] = std::move(poly);
  j["euler"] = r.euler.str();
  j["ndt"] = to_string(ndt_from_count(r));
  return j.dump();
}

}  // namespace dtwc
