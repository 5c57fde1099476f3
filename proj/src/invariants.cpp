#include "dtwc/invariants.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace dtwc {

std::string table_kind_name(TableKind k) {
  switch (k) {
    case TableKind::DTbar: return "DTbar";
    case TableKind::DThat: return "DThat";
    case TableKind::PI_NDT: return "PI_NDT";
    case TableKind::J: return "J";
    case TableKind::ChiFramed: return "chi_framed";
  }
  return "?";
}

std::optional<TableKind> table_kind_from_name(const std::string& s) {
  if (s == "DTbar") return TableKind::DTbar;
  if (s == "DThat") return TableKind::DThat;
  if (s == "PI_NDT") return TableKind::PI_NDT;
  if (s == "J") return TableKind::J;
  if (s == "chi_framed") return TableKind::ChiFramed;
  return std::nullopt;
}

std::string table_to_json(const InvariantTable& t) {
  nlohmann::ordered_json j;
  j["kind"] = table_kind_name(t.kind);
  j["stability"] = t.stability;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [c, v] : t.entries) {
    nlohmann::ordered_json e;
    e["class"] = c;
    e["value"] = to_string(v);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j.dump();
}

std::optional<InvariantTable> table_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    InvariantTable t;
    auto kind = table_kind_from_name(j.at("kind").get<std::string>());
    if (!kind) return std::nullopt;
    t.kind = *kind;
    t.stability = j.value("stability", "mu0");
    for (const auto& e : j.at("entries")) {
      KClass c = e.at("class").get<KClass>();
      auto v = parse_rational(e.at("value").get<std::string>());
      if (!v) return std::nullopt;
      t.set(c, *v);
    }
    return t;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

namespace {

long long max_multiplicity(const KClass& c) {
  long long g = 0;
  for (long long x : c) g = std::max(g, x);
  return g;
}

InvariantTable moebius_convolve(const InvariantTable& in, TableKind out_kind,
                                bool use_moebius, MissingDivisor policy) {
  InvariantTable out;
  out.kind = out_kind;
  out.stability = in.stability;
  for (const auto& [c, v] : in.entries) {
    Rational sum = 0;
    for (long long m = 1; m <= max_multiplicity(c); ++m) {
      if (!kclass_divisible(c, m)) continue;
      KClass base = kclass_divide(c, m);
      auto it = in.entries.find(base);
      Rational val;
      if (it == in.entries.end()) {
        if (policy == MissingDivisor::Error && m > 1)
          throw std::domain_error("table not closed under division at " +
                                  kclass_to_string(base));
        val = 0;
      } else {
        val = it->second;
      }
      Rational w = use_moebius ? Rational(moebius((std::uint64_t)m)) : Rational(1);
      sum += w / Rational(m * m) * val;
    }
    out.set(c, sum);
  }
  return out;
}

}  // namespace

InvariantTable bps_from_dt(const InvariantTable& dtbar, MissingDivisor policy) {
  if (dtbar.kind != TableKind::DTbar)
    throw std::invalid_argument("bps_from_dt expects a DTbar table");
  return moebius_convolve(dtbar, TableKind::DThat, true, policy);
}

InvariantTable dt_from_bps(const InvariantTable& dthat, MissingDivisor policy) {
  if (dthat.kind != TableKind::DThat)
    throw std::invalid_argument("dt_from_bps expects a DThat table");
  return moebius_convolve(dthat, TableKind::DTbar, false, policy);
}

std::vector<std::pair<KClass, Rational>> nonintegral_entries(
    const InvariantTable& t) {
  std::vector<std::pair<KClass, Rational>> out;
  for (const auto& [c, v] : t.entries)
    if (!is_integer(v)) out.emplace_back(c, v);
  return out;
}

Rational pair_transform(const NumericalContext& ctx, const InvariantTable& table,
                        const WeakStability& tau, const KClass& target,
                        const PairTransformOptions& opt) {
  if (!ctx.has_framing())
    throw std::logic_error("pair_transform: context has no framing functional");
  StabValue t_target = tau.value(ctx, target);
  std::vector<KClass> support;
  for (const auto& [c, v] : table.entries)
    if (v != 0 && tau.value(ctx, c) == t_target) support.push_back(c);

  Rational total = 0;
  bool truncated = for_each_ordered_decomposition(
      support, target, opt.max_parts, [&](const std::vector<KClass>& parts) {
        const int l = (int)parts.size();
        KClass partial(ctx.rank, 0);
        Rational prod = 1;
        for (const auto& p : parts) {
          long long K = ctx.F(p) - ctx.chi_bar(partial, p);
          if (opt.signed_mode)
            prod *= Rational(K) * parity_sign(K);
          else
            prod *= Rational(K);
          prod *= table.value(p);
          if (prod == 0) break;
          partial = kclass_add(partial, p);
        }
        if (prod == 0) return;
        Rational weight = Rational(1) / Rational(factorial((unsigned)l));
        if (opt.signed_mode) weight *= parity_sign((long long)l);
        total += weight * prod;
      });
  if (truncated) throw std::domain_error("pair_transform: part cap exceeded");
  return total;
}

namespace {

void require_single_slope_zero_chi(const NumericalContext& ctx,
                                   const InvariantTable& table,
                                   const WeakStability& tau) {
  const KClass* first = nullptr;
  for (const auto& [c, v] : table.entries) {
    if (!first) {
      first = &c;
      continue;
    }
    if (!(tau.value(ctx, c) == tau.value(ctx, *first)))
      throw std::domain_error(
          "pair_series: table mixes stability values; filter to one slope");
  }
  for (const auto& [c1, v1] : table.entries)
    for (const auto& [c2, v2] : table.entries)
      if (ctx.chi_bar(c1, c2) != 0)
        throw std::domain_error(
            "pair_series: chi does not vanish on the slope class");
}

}  // namespace

TruncatedSeries pair_series(const NumericalContext& ctx,
                            const InvariantTable& dtbar,
                            const WeakStability& tau, TruncationBound bound) {
  if (!ctx.has_framing())
    throw std::logic_error("pair_series: context has no framing functional");
  require_single_slope_zero_chi(ctx, dtbar, tau);
  TruncatedSeries inner(ctx.rank, bound);
  for (const auto& [c, v] : dtbar.entries) {
    Monomial m{std::vector<int>(c.begin(), c.end())};
    if (!bound.contains(m)) continue;
    long long f = ctx.F(c);
    inner.add_term(m, Rational(-f) * parity_sign(f) * v);
  }
  return series_exp(inner);
}

InvariantTable dt_from_pair_series(const NumericalContext& ctx,
                                   const TruncatedSeries& series) {
  if (!ctx.has_framing())
    throw std::logic_error("dt_from_pair_series: context has no framing");
  if (series.arity() != ctx.rank)
    throw std::invalid_argument("dt_from_pair_series: arity mismatch");
  TruncatedSeries L = series_log(series);
  InvariantTable out;
  out.kind = TableKind::DTbar;
  for (const auto& [m, coef] : L.terms()) {
    KClass c(m.exps.begin(), m.exps.end());
    if (kclass_is_zero(c)) continue;
    long long f = ctx.F(c);
    if (f == 0)
      throw std::domain_error("dt_from_pair_series: F(d) = 0 at class " +
                              kclass_to_string(c));
    out.set(c, -coef / Rational(f) * parity_sign(f));
  }
  return out;
}

namespace {

// b_k from  log S = sum_i i b_i log(1 - T^i)  solved order by order, where
// T has the form t(1 + O(t)) so [t^k] log(1 - T^k) = -1.
std::vector<Rational> triangular_solve(const TruncatedSeries& S,
                                       const TruncatedSeries& T, int order) {
  TruncatedSeries residual = series_log(S);
  std::vector<Rational> b;
  auto coeff_at = [&](const TruncatedSeries& s, int k) {
    return s.coefficient(Monomial{{k}});
  };
  for (int k = 1; k <= order; ++k) {
    Rational bk = -coeff_at(residual, k) / Rational(k);
    b.push_back(bk);
    if (bk != 0) {
      TruncatedSeries lg = series_log(TruncatedSeries::one(1, S.bound()) -
                                      series_pow(T, k));
      residual = residual - lg * (Rational(k) * bk);
    }
  }
  return b;
}

}  // namespace

ReinekeReport reineke_check(const std::vector<Rational>& a, long long N,
                            int order) {
  TruncationBound bound = TruncationBound::degree(order);
  std::vector<ProductFactor> factors;
  for (int i = 1; i <= order && i <= (int)a.size(); ++i) {
    if (a[i - 1] == 0) continue;
    // (1 - ((-1)^N t)^i)^(-i a_i): the t^i coefficient of the base is
    // -(-1)^(N i)
    int sign_Ni = parity_sign(N * i);
    TruncatedSeries base = TruncatedSeries::one(1, bound);
    base.add_term(Monomial{{i}}, Rational(-sign_Ni));
    factors.push_back(ProductFactor{base, Rational(-i) * a[i - 1]});
  }
  ReinekeReport rep;
  rep.S = product_expand(factors, 1, bound);
  // T = t S(t)^N
  long long n_exp = N;
  TruncatedSeries SN = series_pow(rep.S, (long)n_exp);
  TruncatedSeries T = TruncatedSeries::var(1, bound, 0) * SN;
  rep.b = triangular_solve(rep.S, T, order);
  for (const auto& x : rep.b)
    if (!is_integer(x)) rep.all_b_integral = false;
  return rep;
}

std::vector<Rational> reineke_recover_a(const TruncatedSeries& S, long long N,
                                        int order) {
  // log S = sum_i (-i a_i) log(1 - ((-1)^N t)^i): triangular in the a_i.
  TruncatedSeries residual = series_log(S);
  std::vector<Rational> a;
  for (int k = 1; k <= order; ++k) {
    // [t^k] of log(1 - ((-1)^N t)^k) is -(-1)^(Nk)
    int lead = -parity_sign(N * k);
    Rational ck = residual.coefficient(Monomial{{k}});
    Rational ak = ck / Rational(-k * lead);
    a.push_back(ak);
    if (ak != 0) {
      TruncatedSeries base = TruncatedSeries::one(1, S.bound());
      base.add_term(Monomial{{k}}, Rational(lead));
      residual = residual - series_log(base) * (Rational(-k) * ak);
    }
  }
  return a;
}

Rational weighted_euler(
    const std::vector<std::pair<Rational, long long>>& points) {
  Rational s = 0;
  for (const auto& [coef, nu] : points) s += coef * Rational(nu);
  return -s;
}

}  // namespace dtwc
