#include "dtwc/lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dtwc {

namespace {

void check_rank(const KClass& a, const KClass& b) {
  if (a.size() != b.size()) throw std::invalid_argument("class rank mismatch");
}

}  // namespace

KClass kclass_add(const KClass& a, const KClass& b) {
  check_rank(a, b);
  KClass r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

KClass kclass_sub(const KClass& a, const KClass& b) {
  check_rank(a, b);
  KClass r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

KClass kclass_scale(const KClass& a, long long k) {
  KClass r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
  return r;
}

bool kclass_is_zero(const KClass& a) {
  return std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; });
}

bool kclass_divisible(const KClass& a, long long m) {
  if (m < 1) return false;
  return std::all_of(a.begin(), a.end(),
                     [m](long long x) { return x % m == 0; });
}

KClass kclass_divide(const KClass& a, long long m) {
  KClass r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] / m;
  return r;
}

long long kclass_coord_sum(const KClass& a) {
  return std::accumulate(a.begin(), a.end(), 0LL);
}

std::string kclass_to_string(const KClass& a) {
  std::string s = "[";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + "]";
}

bool kclass_grlex_less(const KClass& a, const KClass& b) {
  long long sa = kclass_coord_sum(a), sb = kclass_coord_sum(b);
  if (sa != sb) return sa < sb;
  return a < b;
}

Quiver Quiver::loops(int m) {
  Quiver q;
  q.vertices = {"v"};
  for (int i = 0; i < m; ++i) q.edges.emplace_back(0, 0);
  return q;
}

long long euler_hat(const Quiver& q, const KClass& d, const KClass& e) {
  if ((int)d.size() != q.rank() || (int)e.size() != q.rank())
    throw std::invalid_argument("euler_hat: rank mismatch");
  long long s = 0;
  for (int v = 0; v < q.rank(); ++v) s += d[v] * e[v];
  for (auto [t, h] : q.edges) s -= d[t] * e[h];
  return s;
}

long long euler_bar(const Quiver& q, const KClass& d, const KClass& e) {
  return euler_hat(q, d, e) - euler_hat(q, e, d);
}

EulerData EulerData::from_quiver(const Quiver& q) {
  EulerData ed;
  ed.rank = q.rank();
  std::vector<std::vector<long long>> hat(ed.rank,
                                          std::vector<long long>(ed.rank, 0));
  for (int i = 0; i < ed.rank; ++i) hat[i][i] = 1;
  for (auto [t, h] : q.edges) hat[t][h] -= 1;
  ed.chi_hat = hat;
  ed.chi_bar.assign(ed.rank, std::vector<long long>(ed.rank, 0));
  for (int i = 0; i < ed.rank; ++i)
    for (int j = 0; j < ed.rank; ++j) ed.chi_bar[i][j] = hat[i][j] - hat[j][i];
  ed.validate();
  return ed;
}

EulerData EulerData::zero(int rank) {
  EulerData ed;
  ed.rank = rank;
  ed.chi_bar.assign(rank, std::vector<long long>(rank, 0));
  return ed;
}

EulerData EulerData::from_chi_bar(std::vector<std::vector<long long>> m) {
  EulerData ed;
  ed.rank = (int)m.size();
  ed.chi_bar = std::move(m);
  ed.validate();
  return ed;
}

namespace {
long long bilinear(const std::vector<std::vector<long long>>& m,
                   const KClass& d, const KClass& e) {
  long long s = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    long long row = 0;
    for (size_t j = 0; j < e.size(); ++j) row += m[i][j] * e[j];
    s += d[i] * row;
  }
  return s;
}
}  // namespace

long long EulerData::hat(const KClass& d, const KClass& e) const {
  if (!chi_hat) throw std::logic_error("chi_hat not available");
  if ((int)d.size() != rank || (int)e.size() != rank)
    throw std::invalid_argument("euler form: rank mismatch");
  return bilinear(*chi_hat, d, e);
}

long long EulerData::bar(const KClass& d, const KClass& e) const {
  if ((int)d.size() != rank || (int)e.size() != rank)
    throw std::invalid_argument("euler form: rank mismatch");
  return bilinear(chi_bar, d, e);
}

void EulerData::validate() const {
  if ((int)chi_bar.size() != rank)
    throw std::invalid_argument("chi_bar dimension mismatch");
  for (int i = 0; i < rank; ++i) {
    if ((int)chi_bar[i].size() != rank)
      throw std::invalid_argument("chi_bar dimension mismatch");
    for (int j = 0; j < rank; ++j)
      if (chi_bar[i][j] != -chi_bar[j][i])
        throw std::invalid_argument("chi_bar is not antisymmetric");
  }
  if (chi_hat) {
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        if (chi_bar[i][j] != (*chi_hat)[i][j] - (*chi_hat)[j][i])
          throw std::invalid_argument("chi_bar != chi_hat - chi_hat^T");
  }
}

int Poly::deg() const {
  for (int i = (int)coeffs.size() - 1; i >= 0; --i)
    if (coeffs[i] != 0) return i;
  return -1;  // zero polynomial
}

Rational Poly::eval(const Rational& t) const {
  Rational r = 0;
  for (int i = (int)coeffs.size() - 1; i >= 0; --i) r = r * t + coeffs[i];
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs.size() > coeffs.size()) coeffs.resize(o.coeffs.size());
  for (size_t i = 0; i < o.coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r = *this;
  for (auto& x : r.coeffs) x *= c;
  return r;
}

Poly Poly::monic() const {
  int d = deg();
  if (d < 0) throw std::domain_error("monic: zero polynomial");
  return scaled(Rational(1) / coeffs[d]);
}

void Poly::trim() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

bool Poly::operator==(const Poly& o) const {
  Poly a = *this, b = o;
  a.trim();
  b.trim();
  return a.coeffs == b.coeffs;
}

std::string Poly::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (i) os << ",";
    os << to_string(coeffs[i]);
  }
  os << "]";
  return os.str();
}

namespace {

// The worked-example order on monic polynomials: p <= p' iff
//   (a) deg p > deg p', or
//   (b) deg p = deg p' and p(t) <= p'(t) for all t >> 0.
// (b) is lexicographic comparison of coefficients from the top down.
// Returns -1 / 0 / +1.
int gieseker_cmp(const Poly& p, const Poly& q) {
  int dp = p.deg(), dq = q.deg();
  if (dp != dq) return dp > dq ? -1 : 1;
  for (int i = dp; i >= 0; --i) {
    const Rational a = i < (int)p.coeffs.size() ? p.coeffs[i] : Rational(0);
    const Rational b = i < (int)q.coeffs.size() ? q.coeffs[i] : Rational(0);
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

}  // namespace

bool StabValue::operator==(const StabValue& o) const {
  if (v.index() != o.v.index())
    throw std::invalid_argument("comparing values of different stability kinds");
  if (auto* r = std::get_if<Rational>(&v))
    return *r == std::get<Rational>(o.v);
  if (auto* i = std::get_if<int>(&v)) return *i == std::get<int>(o.v);
  return gieseker_cmp(std::get<Poly>(v), std::get<Poly>(o.v)) == 0;
}

bool StabValue::operator<(const StabValue& o) const {
  if (v.index() != o.v.index())
    throw std::invalid_argument("comparing values of different stability kinds");
  if (auto* r = std::get_if<Rational>(&v)) return *r < std::get<Rational>(o.v);
  if (auto* i = std::get_if<int>(&v)) return *i < std::get<int>(o.v);
  return gieseker_cmp(std::get<Poly>(v), std::get<Poly>(o.v)) < 0;
}

std::string StabValue::str() const {
  if (auto* r = std::get_if<Rational>(&v)) return to_string(*r);
  if (auto* i = std::get_if<int>(&v)) return std::to_string(*i);
  return std::get<Poly>(v).str();
}

StabValue WeakStability::value(const NumericalContext& ctx,
                               const KClass& d) const {
  if (!ctx.in_cone(d))
    throw std::domain_error("stability value of a class outside the cone");
  if (auto* s = std::get_if<Slope>(&kind)) {
    Rational num = 0, den = 0;
    if (s->c.size() != d.size() || s->r.size() != d.size())
      throw std::invalid_argument("slope data rank mismatch");
    for (size_t i = 0; i < d.size(); ++i) {
      num += s->c[i] * d[i];
      den += s->r[i] * d[i];
    }
    return StabValue{num / den};
  }
  if (std::get_if<Trivial>(&kind)) return StabValue{Rational(0)};
  if (auto* t = std::get_if<TwoLevel>(&kind)) {
    long long dd = d.back();
    return StabValue{dd == 0 ? t->value_d0 : t->value_dpos};
  }
  // Gieseker
  if (!ctx.has_hilbert())
    throw std::logic_error("gieseker stability needs Hilbert data");
  return StabValue{ctx.hilbert_poly(d).monic()};
}

WeakStability WeakStability::trivial(std::string name) {
  return WeakStability{Trivial{}, std::move(name)};
}
WeakStability WeakStability::slope(std::vector<Rational> c,
                                   std::vector<Rational> r, std::string name) {
  for (const auto& x : r)
    if (x <= 0) throw std::invalid_argument("slope: r must be positive");
  return WeakStability{Slope{std::move(c), std::move(r)}, std::move(name)};
}
WeakStability WeakStability::gieseker(std::string name) {
  return WeakStability{Gieseker{}, std::move(name)};
}
WeakStability WeakStability::tau_dot() {
  return WeakStability{TwoLevel{0, -1}, "taudot"};
}
WeakStability WeakStability::tau_tilde() {
  return WeakStability{TwoLevel{0, 1}, "tautilde"};
}
WeakStability WeakStability::tau_hat() {
  return WeakStability{TwoLevel{0, 0}, "tauhat"};
}

Rational slope_value(const WeakStability& stab, const KClass& d) {
  if (std::get_if<WeakStability::Trivial>(&stab.kind)) return 0;
  auto* s = std::get_if<WeakStability::Slope>(&stab.kind);
  if (!s) throw std::invalid_argument("slope_value: not a slope stability");
  Rational num = 0, den = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    num += s->c[i] * d[i];
    den += s->r[i] * d[i];
  }
  if (den == 0) throw std::domain_error("slope_value: class outside cone");
  return num / den;
}

bool NumericalContext::in_cone(const KClass& d) const {
  if ((int)d.size() != rank) return false;
  if (cone) return cone(d);
  bool nonzero = false;
  for (long long x : d) {
    if (x < 0) return false;
    if (x > 0) nonzero = true;
  }
  return nonzero;
}

long long NumericalContext::F(const KClass& d) const {
  if (!framing) throw std::logic_error("context has no framing functional");
  long long s = 0;
  for (size_t i = 0; i < d.size(); ++i) s += (*framing)[i] * d[i];
  return s;
}

Poly NumericalContext::hilbert_poly(const KClass& d) const {
  if ((int)hilbert_basis.size() != rank)
    throw std::logic_error("hilbert basis incomplete");
  Poly p;
  for (int i = 0; i < rank; ++i)
    if (d[i] != 0) p += hilbert_basis[i].scaled(Rational(d[i]));
  p.trim();
  return p;
}

const WeakStability& NumericalContext::stability(const std::string& name) const {
  auto it = stabilities.find(name);
  if (it == stabilities.end())
    throw std::invalid_argument("unknown stability: " + name);
  return it->second;
}

void NumericalContext::validate() const {
  euler.validate();
  if (has_framing() && (int)framing->size() != rank)
    throw std::invalid_argument("framing rank mismatch");
  if (has_hilbert() && has_framing() && twist) {
    for (int i = 0; i < rank; ++i) {
      KClass e(rank, 0);
      e[i] = 1;
      if (hilbert_basis[i].eval(Rational(*twist)) != Rational(F(e)))
        throw std::invalid_argument(
            "framing and Hilbert data disagree at the configured twist");
    }
  }
}

NumericalContext NumericalContext::from_quiver(const Quiver& q) {
  NumericalContext ctx;
  ctx.rank = q.rank();
  ctx.euler = EulerData::from_quiver(q);
  ctx.stabilities["mu0"] = WeakStability::trivial();
  return ctx;
}

NumericalContext NumericalContext::abstract(
    int rank, std::vector<std::vector<long long>> chi_bar,
    std::optional<std::vector<long long>> framing) {
  NumericalContext ctx;
  ctx.rank = rank;
  ctx.euler = chi_bar.empty() ? EulerData::zero(rank)
                              : EulerData::from_chi_bar(std::move(chi_bar));
  ctx.framing = std::move(framing);
  ctx.stabilities["mu0"] = WeakStability::trivial();
  ctx.validate();
  return ctx;
}

namespace {

// Enumerate all classes with coordinates in [0, bound], excluding zero,
// in graded-lex order.
std::vector<KClass> boxed_classes(int rank, int bound) {
  std::vector<KClass> out;
  KClass cur(rank, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == rank) {
      if (!kclass_is_zero(cur)) out.push_back(cur);
      return;
    }
    for (int v = 0; v <= bound; ++v) {
      cur[i] = v;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end(), kclass_grlex_less);
  return out;
}

}  // namespace

GenericityReport is_generic(const NumericalContext& ctx,
                            const WeakStability& stab, int coord_bound) {
  auto classes = boxed_classes(ctx.rank, coord_bound);
  std::vector<KClass> cone;
  for (auto& c : classes)
    if (ctx.in_cone(c)) cone.push_back(c);
  for (const auto& d : cone)
    for (const auto& e : cone) {
      if (ctx.chi_bar(d, e) == 0) continue;
      if (stab.value(ctx, d) == stab.value(ctx, e))
        return GenericityReport{false, d, e};
    }
  return GenericityReport{};
}

SeesawReport validate_weak_stability(const NumericalContext& ctx,
                                     const WeakStability& stab, int bound) {
  SeesawReport rep;
  auto betas = boxed_classes(ctx.rank, bound);
  for (const auto& beta : betas) {
    if (!ctx.in_cone(beta)) continue;
    // all alpha + gamma = beta with both in cone
    std::vector<KClass> alphas;
    KClass cur(ctx.rank, 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == ctx.rank) {
        alphas.push_back(cur);
        return;
      }
      for (long long v = 0; v <= beta[i]; ++v) {
        cur[i] = v;
        rec(i + 1);
      }
      cur[i] = 0;
    };
    rec(0);
    for (const auto& alpha : alphas) {
      KClass gamma = kclass_sub(beta, alpha);
      if (!ctx.in_cone(alpha) || !ctx.in_cone(gamma)) continue;
      StabValue va = stab.value(ctx, alpha);
      StabValue vb = stab.value(ctx, beta);
      StabValue vc = stab.value(ctx, gamma);
      ++rep.checked;
      bool up = va <= vb && vb <= vc;
      bool down = va >= vb && vb >= vc;
      if (!up && !down) {
        rep.ok = false;
        rep.alpha = alpha;
        rep.gamma = gamma;
        return rep;
      }
    }
  }
  return rep;
}

NumericalContext extend_by_framing(const NumericalContext& ctx) {
  if (!ctx.has_framing())
    throw std::logic_error("extend_by_framing: missing framing functional");
  int r = ctx.rank;
  NumericalContext ext;
  ext.rank = r + 1;
  std::vector<std::vector<long long>> bar(r + 1,
                                          std::vector<long long>(r + 1, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) bar[i][j] = ctx.euler.chi_bar[i][j];
  for (int i = 0; i < r; ++i) {
    bar[i][r] = (*ctx.framing)[i];
    bar[r][i] = -(*ctx.framing)[i];
  }
  ext.euler = EulerData::from_chi_bar(std::move(bar));
  // C(B_p): beta in C(A) and d >= 0, or beta = 0 and d > 0.
  auto base_in_cone = [base = ctx](const KClass& full) {
    KClass beta(full.begin(), full.end() - 1);
    long long d = full.back();
    if (d < 0) return false;
    if (kclass_is_zero(beta)) return d > 0;
    return base.in_cone(beta);
  };
  ext.cone = base_in_cone;
  ext.stabilities["taudot"] = WeakStability::tau_dot();
  ext.stabilities["tautilde"] = WeakStability::tau_tilde();
  ext.stabilities["tauhat"] = WeakStability::tau_hat();
  return ext;
}

namespace {

std::optional<int> vertex_index(const std::vector<std::string>& vs,
                                const std::string& name) {
  for (size_t i = 0; i < vs.size(); ++i)
    if (vs[i] == name) return (int)i;
  return std::nullopt;
}

}  // namespace

std::optional<Quiver> quiver_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    Quiver q;
    q.vertices = j.at("vertices").get<std::vector<std::string>>();
    for (const auto& e : j.at("edges")) {
      auto t = vertex_index(q.vertices, e.at(0).get<std::string>());
      auto h = vertex_index(q.vertices, e.at(1).get<std::string>());
      if (!t || !h) return std::nullopt;
      q.edges.emplace_back(*t, *h);
    }
    return q;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string quiver_to_json(const Quiver& q) {
  nlohmann::ordered_json j;
  j["vertices"] = q.vertices;
  auto edges = nlohmann::ordered_json::array();
  for (auto [t, h] : q.edges)
    edges.push_back({q.vertices[t], q.vertices[h]});
  j["edges"] = std::move(edges);
  return j.dump();
}

namespace {

std::optional<WeakStability> stability_from_json(const nlohmann::json& j,
                                                 const std::string& name) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "trivial") return WeakStability::trivial(name);
  if (kind == "slope") {
    std::vector<Rational> c, r;
    for (const auto& x : j.at("c")) {
      auto v = parse_rational(x.get<std::string>());
      if (!v) return std::nullopt;
      c.push_back(*v);
    }
    for (const auto& x : j.at("r")) {
      auto v = parse_rational(x.get<std::string>());
      if (!v) return std::nullopt;
      r.push_back(*v);
    }
    return WeakStability::slope(std::move(c), std::move(r), name);
  }
  if (kind == "gieseker") return WeakStability::gieseker(name);
  if (kind == "twolevel") {
    WeakStability s{WeakStability::TwoLevel{j.at("d0").get<int>(),
                                            j.at("dpos").get<int>()},
                    name};
    return s;
  }
  return std::nullopt;
}

}  // namespace

std::optional<NumericalContext> context_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    NumericalContext ctx;
    if (j.contains("quiver")) {
      auto q = quiver_from_json(j["quiver"].dump());
      if (!q) return std::nullopt;
      ctx = NumericalContext::from_quiver(*q);
    } else {
      ctx.rank = j.at("rank").get<int>();
      if (j.contains("chi_bar")) {
        ctx.euler = EulerData::from_chi_bar(
            j["chi_bar"].get<std::vector<std::vector<long long>>>());
      } else {
        ctx.euler = EulerData::zero(ctx.rank);
      }
      if (j.contains("chi_hat")) {
        auto hat = j["chi_hat"].get<std::vector<std::vector<long long>>>();
        if (!j.contains("chi_bar")) {
          std::vector<std::vector<long long>> bar(
              ctx.rank, std::vector<long long>(ctx.rank, 0));
          for (int i = 0; i < ctx.rank; ++i)
            for (int k = 0; k < ctx.rank; ++k)
              bar[i][k] = hat[i][k] - hat[k][i];
          ctx.euler.chi_bar = std::move(bar);
        }
        ctx.euler.chi_hat = std::move(hat);
        ctx.euler.rank = ctx.rank;
        ctx.euler.validate();
      }
      ctx.stabilities["mu0"] = WeakStability::trivial();
    }
    if (j.contains("framing"))
      ctx.framing = j["framing"].get<std::vector<long long>>();
    if (j.contains("twist")) ctx.twist = j["twist"].get<long long>();
    if (j.contains("hilbert")) {
      for (const auto& row : j["hilbert"]) {
        Poly p;
        for (const auto& x : row) {
          auto v = parse_rational(x.get<std::string>());
          if (!v) return std::nullopt;
          p.coeffs.push_back(*v);
        }
        ctx.hilbert_basis.push_back(std::move(p));
      }
    }
    if (j.contains("framed") && j["framed"].get<bool>())
      ctx = extend_by_framing(ctx);
    if (j.contains("stabilities")) {
      for (auto it = j["stabilities"].begin(); it != j["stabilities"].end();
           ++it) {
        auto s = stability_from_json(it.value(), it.key());
        if (!s) return std::nullopt;
        ctx.stabilities[it.key()] = *s;
      }
    }
    ctx.validate();
    return ctx;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace dtwc
