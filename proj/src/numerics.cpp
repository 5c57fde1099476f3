#include "dtwc/numerics.hpp"

#include <stdexcept>

namespace dtwc {

int moebius(std::uint64_t m) {
  if (m == 0) throw std::domain_error("moebius: m must be >= 1");
  int d = 0;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return 0;  // square factor
      ++d;
    }
  }
  if (m > 1) ++d;
  return (d % 2 == 0) ? 1 : -1;
}

Int binomial(std::uint64_t n, std::int64_t k) {
  if (k < 0 || (std::uint64_t)k > n) return 0;
  std::uint64_t kk = (std::uint64_t)k;
  if (kk > n - kk) kk = n - kk;
  Int num = 1, den = 1;
  for (std::uint64_t i = 1; i <= kk; ++i) {
    num *= Int(n - kk + i);
    den *= Int(i);
  }
  return num / den;  // exact
}

void for_each_composition(int total,
                          const std::function<void(const std::vector<int>&)>& fn) {
  if (total < 1) throw std::domain_error("compositions: total must be >= 1");
  std::vector<int> parts;
  // Lexicographic: extend with the smallest part first.
  std::function<void(int)> rec = [&](int rest) {
    if (rest == 0) {
      fn(parts);
      return;
    }
    for (int p = 1; p <= rest; ++p) {
      parts.push_back(p);
      rec(rest - p);
      parts.pop_back();
    }
  };
  rec(total);
}

std::vector<Composition> enumerate_compositions(int total, const EnumLimits& lim) {
  if (total > lim.max_composition_total)
    throw std::domain_error("compositions: total exceeds configured bound");
  std::vector<Composition> out;
  for_each_composition(total, [&](const std::vector<int>& parts) {
    out.push_back(Composition{parts, total});
  });
  return out;
}

namespace {

OrientedTree tree_from_prufer(const std::vector<int>& code, int n) {
  // Standard Prufer decoding; vertices 1..n, code length n-2.
  std::vector<int> degree(n + 1, 1);
  for (int v : code) degree[v]++;
  OrientedTree t;
  t.vertex_count = n;
  std::vector<bool> used(n + 1, false);
  for (int v : code) {
    // smallest leaf
    int leaf = 0;
    for (int u = 1; u <= n; ++u)
      if (degree[u] == 1 && !used[u]) {
        leaf = u;
        break;
      }
    used[leaf] = true;
    degree[v]--;
    t.edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
  }
  // last two unused vertices
  int a = 0, b = 0;
  for (int u = 1; u <= n; ++u)
    if (!used[u] && degree[u] == 1) {
      if (!a)
        a = u;
      else
        b = u;
    }
  if (n >= 2) t.edges.emplace_back(a, b);
  return t;
}

}  // namespace

std::vector<OrientedTree> enumerate_oriented_trees(int n, const EnumLimits& lim) {
  if (n < 1) throw std::domain_error("trees: n must be >= 1");
  if (n > lim.max_tree_vertices)
    throw std::domain_error("trees: n exceeds configured bound");
  std::vector<OrientedTree> out;
  if (n == 1) {
    out.push_back(OrientedTree{1, {}});
    return out;
  }
  std::vector<int> code(n - 2, 1);
  while (true) {
    out.push_back(tree_from_prufer(code, n));
    int i = (int)code.size() - 1;
    while (i >= 0 && code[i] == n) {
      code[i] = 1;
      --i;
    }
    if (i < 0) break;
    code[i]++;
  }
  return out;
}

}  // namespace dtwc
