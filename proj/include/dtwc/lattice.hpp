#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dtwc/rational.hpp"

namespace dtwc {

// Integer class vector: a numerical class alpha / dimension vector d.
using KClass = std::vector<long long>;

KClass kclass_add(const KClass& a, const KClass& b);
KClass kclass_sub(const KClass& a, const KClass& b);
KClass kclass_scale(const KClass& a, long long k);
bool kclass_is_zero(const KClass& a);
// m | alpha: m divides every coordinate.
bool kclass_divisible(const KClass& a, long long m);
KClass kclass_divide(const KClass& a, long long m);
long long kclass_coord_sum(const KClass& a);
std::string kclass_to_string(const KClass& a);
// Graded-lex order on classes (total, then lex); deterministic output order.
bool kclass_grlex_less(const KClass& a, const KClass& b);

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;  // (tail, head); loops/multi ok

  int rank() const { return (int)vertices.size(); }
  static Quiver loops(int m);  // one vertex, m loops
};

// chi_hat(d,e) = sum_v d(v)e(v) - sum_edges d(t(e)) e(h(e))
long long euler_hat(const Quiver& q, const KClass& d, const KClass& e);
// chi_bar(d,e) = chi_hat(d,e) - chi_hat(e,d)
long long euler_bar(const Quiver& q, const KClass& d, const KClass& e);

struct EulerData {
  int rank = 0;
  std::optional<std::vector<std::vector<long long>>> chi_hat;
  std::vector<std::vector<long long>> chi_bar;  // antisymmetric

  static EulerData from_quiver(const Quiver& q);
  static EulerData zero(int rank);
  static EulerData from_chi_bar(std::vector<std::vector<long long>> m);

  long long hat(const KClass& d, const KClass& e) const;
  long long bar(const KClass& d, const KClass& e) const;
  void validate() const;  // antisymmetry; chi_bar = chi_hat - chi_hat^T
};

// Rational polynomial, coefficients low-to-high.
struct Poly {
  std::vector<Rational> coeffs;

  int deg() const;
  Rational eval(const Rational& t) const;
  Poly& operator+=(const Poly& o);
  Poly scaled(const Rational& c) const;
  Poly monic() const;  // divide by leading coefficient (must be > 0 here)
  void trim();
  bool operator==(const Poly& o) const;
  std::string str() const;
};

// Total order on stability values.  Slope/Trivial compare as rationals,
// TwoLevel as small integers, Gieseker polynomials by the reversed-degree
// then large-t order of the worked example on monic rational polynomials.
struct StabValue {
  std::variant<Rational, int, Poly> v;
  bool operator==(const StabValue& o) const;
  bool operator<(const StabValue& o) const;
  bool operator<=(const StabValue& o) const { return *this < o || *this == o; }
  bool operator>(const StabValue& o) const { return !(*this <= o); }
  bool operator>=(const StabValue& o) const { return !(*this < o); }
  std::string str() const;
};

struct NumericalContext;

// Weak stability condition: an ordered-value assignment on the positive cone.
struct WeakStability {
  struct Slope {
    std::vector<Rational> c;
    std::vector<Rational> r;  // all > 0
  };
  struct Trivial {};
  // Order on reduced (monic) Hilbert polynomials; needs ctx Hilbert data.
  struct Gieseker {};
  // Two-level stabilities on a framed context: the value depends only on
  // whether the framing coordinate (last) vanishes.
  struct TwoLevel {
    int value_d0 = 0;
    int value_dpos = 0;
  };
  std::variant<Slope, Trivial, Gieseker, TwoLevel> kind;
  std::string name;

  StabValue value(const NumericalContext& ctx, const KClass& d) const;

  static WeakStability trivial(std::string name = "mu0");
  static WeakStability slope(std::vector<Rational> c, std::vector<Rational> r,
                             std::string name = "slope");
  static WeakStability gieseker(std::string name = "gieseker");
  static WeakStability tau_dot();    // 0 if d=0, -1 if d>0
  static WeakStability tau_tilde();  // 0 if d=0, +1 if d>0
  static WeakStability tau_hat();    // identically 0
};

// mu(d) = c.d / r.d for a Slope stability (Trivial gives 0).
Rational slope_value(const WeakStability& stab, const KClass& d);

struct NumericalContext {
  int rank = 0;
  EulerData euler;
  // Cone membership; empty means the default nonzero non-negative orthant.
  std::function<bool(const KClass&)> cone;
  // Optional Hilbert data: P for each basis class, additively extended.
  std::vector<Poly> hilbert_basis;
  std::optional<long long> twist;  // the twist n with F(alpha) = P_alpha(n)
  // Optional framing functional F(alpha) = framing . alpha.
  std::optional<std::vector<long long>> framing;
  std::map<std::string, WeakStability> stabilities;

  bool in_cone(const KClass& d) const;
  long long chi_bar(const KClass& d, const KClass& e) const {
    return euler.bar(d, e);
  }
  long long F(const KClass& d) const;
  bool has_framing() const { return framing.has_value(); }
  bool has_hilbert() const { return !hilbert_basis.empty(); }
  Poly hilbert_poly(const KClass& d) const;
  const WeakStability& stability(const std::string& name) const;

  // F(e_i) = P_{e_i}(twist) whenever framing, hilbert and twist are all set.
  void validate() const;

  static NumericalContext from_quiver(const Quiver& q);
  static NumericalContext abstract(int rank,
                                   std::vector<std::vector<long long>> chi_bar,
                                   std::optional<std::vector<long long>> framing);
};

// Generic-stability search: fails if some cone pair (d,e) with coordinates
// <= bound has equal stability value but chi_bar(d,e) != 0.
struct GenericityReport {
  bool generic = true;
  KClass witness_d, witness_e;
};
GenericityReport is_generic(const NumericalContext& ctx,
                            const WeakStability& stab, int coord_bound);

// Weak seesaw check on all cone triples beta = alpha + gamma with the
// coordinates of beta <= bound.
struct SeesawReport {
  bool ok = true;
  KClass alpha, gamma;  // first violation
  long long checked = 0;
};
SeesawReport validate_weak_stability(const NumericalContext& ctx,
                                     const WeakStability& stab, int bound);

// Rank-(r+1) framed extension: classes (beta, d), Euler form
// chi^B((beta,d),(gamma,e)) = chi(beta,gamma) - d F(gamma) + e F(beta),
// cone {(beta,d): beta in C or 0, d >= 0, (beta,d) != 0}, with
// taudot/tautilde/tauhat pre-registered.  Requires ctx.framing.
NumericalContext extend_by_framing(const NumericalContext& ctx);

// JSON formats documented in the README.
std::optional<Quiver> quiver_from_json(const std::string& text);
std::string quiver_to_json(const Quiver& q);
std::optional<NumericalContext> context_from_json(const std::string& text);

}  // namespace dtwc
