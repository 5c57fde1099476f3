#include "dtwc/series.hpp"

#include <json.hpp>

#include <numeric>
#include <stdexcept>

namespace dtwc {

bool TruncationBound::contains(const Monomial& m) const {
  if (total_degree >= 0 && m.degree() > total_degree) return false;
  if (!per_var.empty()) {
    if (per_var.size() != m.exps.size())
      throw std::invalid_argument("bound arity mismatch");
    for (size_t i = 0; i < per_var.size(); ++i)
      if (m.exps[i] > per_var[i]) return false;
  }
  return true;
}

int TruncationBound::max_total_degree() const {
  if (per_var.empty()) {
    if (total_degree < 0)
      throw std::logic_error("unbounded truncation policy");
    return total_degree;
  }
  int caps_sum = std::accumulate(per_var.begin(), per_var.end(), 0);
  if (total_degree < 0) return caps_sum;
  return std::min(total_degree, caps_sum);
}

TruncatedSeries::TruncatedSeries(int arity, TruncationBound bound)
    : arity_(arity), bound_(std::move(bound)) {
  if (arity_ < 1) throw std::invalid_argument("arity must be >= 1");
  if (!bound_.per_var.empty() && (int)bound_.per_var.size() != arity_)
    throw std::invalid_argument("per-variable caps must match arity");
  bound_.max_total_degree();  // rejects the fully unbounded policy
}

TruncatedSeries TruncatedSeries::constant(int arity, TruncationBound bound,
                                          const Rational& c) {
  TruncatedSeries s(arity, std::move(bound));
  if (c != 0) s.terms_[Monomial{std::vector<int>(arity, 0)}] = c;
  return s;
}

TruncatedSeries TruncatedSeries::var(int arity, TruncationBound bound, int i,
                                     int power) {
  TruncatedSeries s(arity, std::move(bound));
  if (i < 0 || i >= arity) throw std::invalid_argument("variable index");
  Monomial m{std::vector<int>(arity, 0)};
  m.exps[i] = power;
  if (s.bound_.contains(m)) s.terms_[m] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::monomial_term(int arity, TruncationBound bound,
                                               const Monomial& m,
                                               const Rational& c) {
  TruncatedSeries s(arity, std::move(bound));
  s.set(m, c);
  return s;
}

Rational TruncatedSeries::constant_term() const {
  auto it = terms_.find(Monomial{std::vector<int>(arity_, 0)});
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational TruncatedSeries::coefficient(const Monomial& m) const {
  if ((int)m.exps.size() != arity_)
    throw std::invalid_argument("coefficient: arity mismatch");
  if (!bound_.contains(m))
    throw std::out_of_range("coefficient: monomial beyond truncation bound");
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::set(const Monomial& m, const Rational& c) {
  if ((int)m.exps.size() != arity_)
    throw std::invalid_argument("set: arity mismatch");
  if (!bound_.contains(m)) return;
  if (c == 0)
    terms_.erase(m);
  else
    terms_[m] = c;
}

void TruncatedSeries::add_term(const Monomial& m, const Rational& c) {
  if ((int)m.exps.size() != arity_)
    throw std::invalid_argument("add_term: arity mismatch");
  if (!bound_.contains(m) || c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
  if (arity_ != o.arity_ || !(bound_ == o.bound_))
    throw std::invalid_argument("series arity/bound mismatch");
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries r(arity_, bound_);
  Monomial sum{std::vector<int>(arity_, 0)};
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      for (int i = 0; i < arity_; ++i) sum.exps[i] = ma.exps[i] + mb.exps[i];
      if (!bound_.contains(sum)) continue;
      r.add_term(sum, ca * cb);
    }
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const Rational& c) const {
  TruncatedSeries r(arity_, bound_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

TruncatedSeries series_exp(const TruncatedSeries& a) {
  if (a.constant_term() != 0)
    throw std::invalid_argument("series_exp: nonzero constant term");
  int cutoff = a.bound().max_total_degree();
  TruncatedSeries result = TruncatedSeries::one(a.arity(), a.bound());
  TruncatedSeries power = result;
  Rational kfac = 1;
  for (int k = 1; k <= cutoff; ++k) {
    power = power * a;
    if (power.is_zero()) break;
    kfac *= k;
    result = result + power * (Rational(1) / kfac);
  }
  return result;
}

TruncatedSeries series_log(const TruncatedSeries& a) {
  if (a.constant_term() != 1)
    throw std::invalid_argument("series_log: constant term must be 1");
  TruncatedSeries x = a - TruncatedSeries::one(a.arity(), a.bound());
  int cutoff = a.bound().max_total_degree();
  TruncatedSeries result(a.arity(), a.bound());
  TruncatedSeries power = TruncatedSeries::one(a.arity(), a.bound());
  for (int k = 1; k <= cutoff; ++k) {
    power = power * x;
    if (power.is_zero()) break;
    Rational coef(Int((k % 2) ? 1 : -1), Int(k));
    result = result + power * coef;
  }
  return result;
}

TruncatedSeries series_inv_one(const TruncatedSeries& a) {
  if (a.constant_term() != 1)
    throw std::invalid_argument("series_inv_one: constant term must be 1");
  // 1/(1-y) = sum y^k with y = 1-a nilpotent within the bound.
  TruncatedSeries y = TruncatedSeries::one(a.arity(), a.bound()) - a;
  int cutoff = a.bound().max_total_degree();
  TruncatedSeries result = TruncatedSeries::one(a.arity(), a.bound());
  TruncatedSeries power = result;
  for (int k = 1; k <= cutoff; ++k) {
    power = power * y;
    if (power.is_zero()) break;
    result = result + power;
  }
  return result;
}

TruncatedSeries series_pow(const TruncatedSeries& a, long e) {
  TruncatedSeries base = a;
  unsigned long n;
  if (e < 0) {
    base = series_inv_one(a);
    n = (unsigned long)(-e);
  } else {
    n = (unsigned long)e;
  }
  TruncatedSeries result = TruncatedSeries::one(a.arity(), a.bound());
  while (n) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

TruncatedSeries product_expand(const std::vector<ProductFactor>& factors,
                               int arity, TruncationBound bound) {
  TruncatedSeries result = TruncatedSeries::one(arity, bound);
  for (const auto& f : factors) {
    if (f.base.constant_term() != 1)
      throw std::invalid_argument("product_expand: factor constant term != 1");
    if (is_integer(f.exponent)) {
      long e = (long)rat_num(f.exponent).convert_to<long long>();
      result = result * series_pow(f.base, e);
    } else {
      result = result * series_exp(series_log(f.base) * f.exponent);
    }
  }
  return result;
}

TruncatedSeries collapse_variables(const TruncatedSeries& s,
                                   const std::vector<int>& group,
                                   int result_arity, int result_degree) {
  if ((int)group.size() != s.arity())
    throw std::invalid_argument("collapse: group size mismatch");
  TruncatedSeries r(result_arity, TruncationBound::degree(result_degree));
  for (const auto& [m, c] : s.terms()) {
    Monomial t{std::vector<int>(result_arity, 0)};
    for (size_t i = 0; i < group.size(); ++i) {
      if (group[i] < 0 || group[i] >= result_arity)
        throw std::invalid_argument("collapse: bad target index");
      t.exps[group[i]] += m.exps[i];
    }
    r.add_term(t, c);
  }
  return r;
}

std::string series_to_json(const TruncatedSeries& s) {
  nlohmann::ordered_json j;
  j["arity"] = s.arity();
  if (s.bound().total_degree >= 0) j["bound"] = s.bound().total_degree;
  if (!s.bound().per_var.empty()) j["caps"] = s.bound().per_var;
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [m, c] : s.terms()) {
    nlohmann::ordered_json t;
    t["exp"] = m.exps;
    t["num"] = rat_num(c).str();
    t["den"] = rat_den(c).str();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j.dump();
}

std::optional<TruncatedSeries> series_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    int arity = j.at("arity").get<int>();
    TruncationBound b;
    if (j.contains("bound")) b.total_degree = j["bound"].get<int>();
    if (j.contains("caps")) b.per_var = j["caps"].get<std::vector<int>>();
    TruncatedSeries s(arity, b);
    for (const auto& t : j.at("terms")) {
      Monomial m{t.at("exp").get<std::vector<int>>()};
      Rational c(Int(t.at("num").get<std::string>()),
                 Int(t.at("den").get<std::string>()));
      s.set(m, c);
    }
    return s;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace dtwc
