#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dtwc/rational.hpp"

namespace dtwc {

// Exponent vector of fixed arity.
struct Monomial {
  std::vector<int> exps;

  int degree() const {
    int d = 0;
    for (int e : exps) d += e;
    return d;
  }
  bool operator==(const Monomial& o) const { return exps == o.exps; }
};

// Graded-lexicographic order: by total degree, then lexicographically on the
// exponent vector.  Deterministic iteration for output and golden tests.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.exps < b.exps;
  }
};

// Truncation policy: max total degree, per-variable caps, or both.
struct TruncationBound {
  int total_degree = -1;              // -1: no total-degree bound
  std::vector<int> per_var;           // empty: no per-variable caps

  static TruncationBound degree(int d) { return TruncationBound{d, {}}; }
  static TruncationBound caps(std::vector<int> c) {
    return TruncationBound{-1, std::move(c)};
  }

  bool contains(const Monomial& m) const;
  // Largest total degree any admissible monomial can have (for nilpotency
  // cutoffs in exp/log).
  int max_total_degree() const;
  bool operator==(const TruncationBound& o) const {
    return total_degree == o.total_degree && per_var == o.per_var;
  }
};

class TruncatedSeries {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  TruncatedSeries() = default;
  TruncatedSeries(int arity, TruncationBound bound);

  static TruncatedSeries constant(int arity, TruncationBound bound,
                                  const Rational& c);
  static TruncatedSeries one(int arity, TruncationBound bound) {
    return constant(arity, bound, 1);
  }
  // The variable q_i (zero if it lies outside the bound).
  static TruncatedSeries var(int arity, TruncationBound bound, int i,
                             int power = 1);
  static TruncatedSeries monomial_term(int arity, TruncationBound bound,
                                       const Monomial& m, const Rational& c);

  int arity() const { return arity_; }
  const TruncationBound& bound() const { return bound_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational constant_term() const;
  // Exact coefficient; throws if m lies outside the bound (it would be
  // silently wrong to answer).
  Rational coefficient(const Monomial& m) const;

  void set(const Monomial& m, const Rational& c);
  void add_term(const Monomial& m, const Rational& c);

  TruncatedSeries operator-() const;
  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const Rational& c) const;
  bool operator==(const TruncatedSeries& o) const {
    return arity_ == o.arity_ && bound_ == o.bound_ && terms_ == o.terms_;
  }

  friend TruncatedSeries series_mul(const TruncatedSeries& a,
                                    const TruncatedSeries& b) {
    return a * b;
  }

 private:
  int arity_ = 1;
  TruncationBound bound_ = TruncationBound::degree(0);
  TermMap terms_;
  void check_compatible(const TruncatedSeries& o) const;
};

// exp(a) for a with zero constant term.
TruncatedSeries series_exp(const TruncatedSeries& a);
// log(a) for a with constant term 1.
TruncatedSeries series_log(const TruncatedSeries& a);
// Multiplicative inverse for constant term 1 (geometric series, exact
// within the bound).
TruncatedSeries series_inv_one(const TruncatedSeries& a);
// Integer powers by repeated squaring (negative via series_inv_one).
TruncatedSeries series_pow(const TruncatedSeries& a, long e);

// One factor base^exponent of an infinite-product expansion.  The base must
// have constant term 1; the caller passes only the factors that contribute
// within the bound.
struct ProductFactor {
  TruncatedSeries base;
  Rational exponent;  // integer exponents take the fast path
};

TruncatedSeries product_expand(const std::vector<ProductFactor>& factors,
                               int arity, TruncationBound bound);

// Substitute q_i -> t_{group[i]}: collapses variables by summing exponents.
// The result is truncated by total degree `result_degree`.
TruncatedSeries collapse_variables(const TruncatedSeries& s,
                                   const std::vector<int>& group,
                                   int result_arity, int result_degree);

// JSON per the wire format: {"arity":r,"bound":...,"terms":[{"exp":[..],
// "num":"..","den":".."}]}, terms in graded-lex order.
std::string series_to_json(const TruncatedSeries& s);
std::optional<TruncatedSeries> series_from_json(const std::string& text);

}  // namespace dtwc
