#include "dtwc/wallcross.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dtwc {

namespace {

std::vector<KClass> prefix_sums(const std::vector<KClass>& parts) {
  std::vector<KClass> pre;
  pre.reserve(parts.size() + 1);
  KClass acc(parts[0].size(), 0);
  pre.push_back(acc);
  for (const auto& p : parts) {
    acc = kclass_add(acc, p);
    pre.push_back(acc);
  }
  return pre;
}

}  // namespace

int coeff_S(const NumericalContext& ctx, const std::vector<KClass>& parts,
            const WeakStability& tau, const WeakStability& tau_tilde) {
  const int n = (int)parts.size();
  if (n == 0) throw std::invalid_argument("coeff_S: empty decomposition");
  for (const auto& p : parts)
    if (!ctx.in_cone(p)) throw std::domain_error("coeff_S: part outside cone");
  auto pre = prefix_sums(parts);  // pre[i] = a_1 + ... + a_i
  const KClass& total = pre[n];
  int a_count = 0;
  for (int i = 1; i <= n - 1; ++i) {
    StabValue ti = tau.value(ctx, parts[i - 1]);
    StabValue tn = tau.value(ctx, parts[i]);
    StabValue head = tau_tilde.value(ctx, pre[i]);
    StabValue tail = tau_tilde.value(ctx, kclass_sub(total, pre[i]));
    if (ti <= tn && head > tail) {
      ++a_count;  // clause (a)
    } else if (ti > tn && head <= tail) {
      // clause (b)
    } else {
      return 0;
    }
  }
  return (a_count % 2 == 0) ? 1 : -1;
}

Rational coeff_U(const NumericalContext& ctx, const std::vector<KClass>& parts,
                 const WeakStability& tau, const WeakStability& tau_tilde) {
  const int n = (int)parts.size();
  if (n == 0) throw std::invalid_argument("coeff_U: empty decomposition");
  for (const auto& p : parts)
    if (!ctx.in_cone(p)) throw std::domain_error("coeff_U: part outside cone");

  auto pre = prefix_sums(parts);
  const KClass& total = pre[n];
  StabValue tilde_total = tau_tilde.value(ctx, total);
  std::vector<StabValue> tau_parts;
  tau_parts.reserve(n);
  for (const auto& p : parts) tau_parts.push_back(tau.value(ctx, p));

  Rational result = 0;
  // Outer composition: group the n parts into m blocks beta_i.
  for_each_composition(n, [&](const std::vector<int>& agaps) {
    const int m = (int)agaps.size();
    // beta_i = sum of parts in block i; condition tau(beta_i) = tau(alpha_j)
    // for every j inside block i.
    std::vector<KClass> beta(m);
    std::vector<StabValue> tau_beta;
    tau_beta.reserve(m);
    int pos = 0;
    Rational fact_weight = 1;
    for (int i = 0; i < m; ++i) {
      beta[i] = kclass_sub(pre[pos + agaps[i]], pre[pos]);
      pos += agaps[i];
      fact_weight /= Rational(factorial((unsigned)agaps[i]));
    }
    pos = 0;
    for (int i = 0; i < m; ++i) {
      StabValue tb = tau.value(ctx, beta[i]);
      for (int j = pos; j < pos + agaps[i]; ++j)
        if (!(tb == tau_parts[j])) return;
      tau_beta.push_back(tb);
      pos += agaps[i];
    }
    // Inner composition: group the m blocks into l blocks gamma_i.
    auto beta_pre = prefix_sums(beta);
    for_each_composition(m, [&](const std::vector<int>& bgaps) {
      const int l = (int)bgaps.size();
      int bpos = 0;
      Rational s_prod = 1;
      for (int i = 0; i < l; ++i) {
        KClass gamma = kclass_sub(beta_pre[bpos + bgaps[i]], beta_pre[bpos]);
        if (!(tau_tilde.value(ctx, gamma) == tilde_total)) return;
        std::vector<KClass> block(beta.begin() + bpos,
                                  beta.begin() + bpos + bgaps[i]);
        int s = coeff_S(ctx, block, tau, tau_tilde);
        if (s == 0) {
          s_prod = 0;
          break;
        }
        s_prod *= s;
        bpos += bgaps[i];
      }
      if (s_prod == 0) return;
      Rational weight = Rational(((l - 1) % 2 == 0) ? 1 : -1, l);
      result += weight * s_prod * fact_weight;
    });
  });
  return result;
}

Rational coeff_V(const NumericalContext& ctx, int n,
                 const std::vector<std::pair<int, int>>& tree_edges,
                 const std::vector<KClass>& kappa, const WeakStability& tau,
                 const WeakStability& tau_tilde) {
  if ((int)kappa.size() != n)
    throw std::invalid_argument("coeff_V: kappa size mismatch");
  if ((int)tree_edges.size() != n - 1)
    throw std::invalid_argument("coeff_V: not a tree edge count");
  // Sum U over orderings (i_1..i_n) of {1..n} such that every edge u->v has
  // position(u) < position(v).
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  Rational sum = 0;
  std::vector<int> pos(n + 1);
  do {
    for (int i = 0; i < n; ++i) pos[perm[i]] = i;
    bool ok = true;
    for (auto [u, v] : tree_edges)
      if (pos[u] >= pos[v]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::vector<KClass> ordered(n);
    for (int i = 0; i < n; ++i) ordered[i] = kappa[perm[i] - 1];
    sum += coeff_U(ctx, ordered, tau, tau_tilde);
  } while (std::next_permutation(perm.begin(), perm.end()));
  Rational scale = Rational(1, int_pow(2, (unsigned long)(n - 1)) *
                                   factorial((unsigned)n));
  return scale * sum;
}

bool for_each_ordered_decomposition(
    const std::vector<KClass>& support, const KClass& target, int max_parts,
    const std::function<void(const std::vector<KClass>&)>& fn) {
  bool truncated = false;
  std::vector<KClass> parts;
  KClass remaining = target;
  auto fits = [&](const KClass& p) {
    for (size_t i = 0; i < p.size(); ++i)
      if (p[i] > remaining[i]) return false;
    return true;
  };
  std::function<void()> rec = [&]() {
    if (kclass_is_zero(remaining)) {
      if (!parts.empty()) fn(parts);
      return;
    }
    if ((int)parts.size() == max_parts) {
      for (const auto& p : support)
        if (fits(p)) {
          truncated = true;
          break;
        }
      return;
    }
    for (const auto& p : support) {
      if (!fits(p)) continue;
      parts.push_back(p);
      remaining = kclass_sub(remaining, p);
      rec();
      remaining = kclass_add(remaining, p);
      parts.pop_back();
    }
  };
  rec();
  return truncated;
}

namespace {

Rational table_value(const ClassMap& table, const KClass& c) {
  auto it = table.find(c);
  return it == table.end() ? Rational(0) : it->second;
}

// Sum over low-to-high oriented labelled trees on {1..n} of the product of
// chi(a_i, a_j) over edges (i, j).
Rational tree_sum(const NumericalContext& ctx, const std::vector<KClass>& parts) {
  const int n = (int)parts.size();
  auto trees = enumerate_oriented_trees(n);
  Rational total = 0;
  for (const auto& t : trees) {
    Int prod = 1;
    for (auto [i, j] : t.edges) {
      prod *= ctx.chi_bar(parts[i - 1], parts[j - 1]);
      if (prod == 0) break;
    }
    if (prod != 0) total += Rational(prod);
  }
  return total;
}

}  // namespace

TransformResult transform(const NumericalContext& ctx, const ClassMap& table,
                          const WeakStability& tau,
                          const WeakStability& tau_tilde, const KClass& target,
                          const TransformOptions& opt) {
  std::vector<KClass> support;
  for (const auto& [c, v] : table)
    if (v != 0) support.push_back(c);
  TransformResult res;
  res.value = 0;
  res.truncated = for_each_ordered_decomposition(
      support, target, opt.max_parts, [&](const std::vector<KClass>& parts) {
        const int n = (int)parts.size();
        Rational u = coeff_U(ctx, parts, tau, tau_tilde);
        if (u == 0) return;
        Rational chi_trees = tree_sum(ctx, parts);
        if (chi_trees == 0) return;
        Rational dt_prod = 1;
        for (const auto& p : parts) dt_prod *= table_value(table, p);
        Rational term = u * chi_trees * dt_prod /
                        Rational(int_pow(2, (unsigned long)(n - 1)));
        if (!opt.unsigned_mode) {
          long long chi_sum = 0;
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
              chi_sum += ctx.chi_bar(parts[i], parts[j]);
          int sign = parity_sign((long long)(n - 1) + chi_sum);
          term *= sign;
        }
        res.value += term;
      });
  return res;
}

TransformResult transform_vform(const NumericalContext& ctx,
                                const ClassMap& table, const WeakStability& tau,
                                const WeakStability& tau_tilde,
                                const KClass& target,
                                const TransformOptions& opt) {
  std::vector<KClass> support;
  for (const auto& [c, v] : table)
    if (v != 0) support.push_back(c);
  TransformResult res;
  res.value = 0;
  res.truncated = for_each_ordered_decomposition(
      support, target, opt.max_parts, [&](const std::vector<KClass>& kappa) {
        const int n = (int)kappa.size();
        Rational dt_prod = 1;
        for (const auto& p : kappa) dt_prod *= table_value(table, p);
        if (dt_prod == 0) return;
        long long abs_chi_sum = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            long long c = ctx.chi_bar(kappa[i], kappa[j]);
            abs_chi_sum += c < 0 ? -c : c;
          }
        Rational tuple_total = 0;
        auto trees = enumerate_oriented_trees(n);
        const int n_edges = n - 1;
        for (const auto& t : trees) {
          // all 2^(n-1) orientations of this labelled tree
          for (unsigned long mask = 0; mask < (1UL << n_edges); ++mask) {
            std::vector<std::pair<int, int>> edges = t.edges;
            for (int k = 0; k < n_edges; ++k)
              if (mask & (1UL << k)) std::swap(edges[k].first, edges[k].second);
            Int chi_prod = 1;
            for (auto [u, v] : edges) {
              chi_prod *= ctx.chi_bar(kappa[u - 1], kappa[v - 1]);
              if (chi_prod == 0) break;
            }
            if (chi_prod == 0) continue;
            Rational v = coeff_V(ctx, n, edges, kappa, tau, tau_tilde);
            if (v == 0) continue;
            tuple_total += v * Rational(chi_prod);
          }
        }
        if (tuple_total == 0) return;
        Rational term = tuple_total * dt_prod;
        if (!opt.unsigned_mode)
          term *= parity_sign((long long)(n - 1)) * parity_sign(abs_chi_sum);
        res.value += term;
      });
  return res;
}

LieElement lie_bracket(const LieElement& a, const LieElement& b,
                       const NumericalContext& ctx, const ClassSet& S) {
  LieElement out;
  for (const auto& [cb, vb] : b.support)
    if (!S.count(cb)) throw std::domain_error("lie_bracket: support outside S");
  for (const auto& [ca, va] : a.support) {
    if (!S.count(ca)) throw std::domain_error("lie_bracket: support outside S");
    for (const auto& [cb, vb] : b.support) {
      KClass sum = kclass_add(ca, cb);
      if (!S.count(sum)) continue;  // truncated to the nilpotent quotient
      long long chi = ctx.chi_bar(ca, cb);
      if (chi == 0) continue;
      Rational coef = va * vb * Rational(chi) * parity_sign(chi);
      auto [it, fresh] = out.support.emplace(sum, coef);
      if (!fresh) {
        it->second += coef;
        if (it->second == 0) out.support.erase(it);
      }
    }
  }
  return out;
}

Rational nested_bracket_pair_formula(const NumericalContext& ctx,
                                     const ClassMap& table,
                                     const WeakStability& tau,
                                     const KClass& target, int max_parts) {
  if (!ctx.has_framing())
    throw std::logic_error("nested_bracket_pair_formula: missing framing");
  NumericalContext ext = extend_by_framing(ctx);

  // Class set: (beta, d) with beta <= target coordinatewise, d in {0, 1}.
  ClassSet S;
  KClass cur(ctx.rank, 0);
  std::function<void(int)> gen = [&](int i) {
    if (i == ctx.rank) {
      for (long long d = 0; d <= 1; ++d) {
        KClass full = cur;
        full.push_back(d);
        if (!kclass_is_zero(full)) S.insert(full);
      }
      return;
    }
    for (long long v = 0; v <= target[i]; ++v) {
      cur[i] = v;
      gen(i + 1);
    }
    cur[i] = 0;
  };
  gen(0);

  StabValue t_target = tau.value(ctx, target);
  std::vector<KClass> support;
  for (const auto& [c, v] : table)
    if (v != 0 && tau.value(ctx, c) == t_target) support.push_back(c);

  KClass unit(ctx.rank + 1, 0);
  unit.back() = 1;  // (0,1)
  KClass target_ext = target;
  target_ext.push_back(1);  // (target, 1)

  Rational total = 0;
  bool truncated = for_each_ordered_decomposition(
      support, target, max_parts, [&](const std::vector<KClass>& parts) {
        const int l = (int)parts.size();
        LieElement el;
        el.support[unit] = Rational(-1);
        for (const auto& p : parts) {
          LieElement rhs;
          KClass pe = p;
          pe.push_back(0);
          rhs.support[pe] = -table.at(p);
          el = lie_bracket(el, rhs, ext, S);
          if (el.support.empty()) break;
        }
        auto it = el.support.find(target_ext);
        if (it == el.support.end()) return;
        Rational weight =
            Rational(parity_sign((long long)l)) / Rational(factorial((unsigned)l));
        total += weight * it->second;
      });
  if (truncated)
    throw std::domain_error("nested_bracket_pair_formula: part cap exceeded");
  return -total;
}

}  // namespace dtwc
