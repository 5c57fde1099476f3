#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtwc/lattice.hpp"
#include "dtwc/rational.hpp"

namespace dtwc {

// GF(p^k) with table-based arithmetic; the seven sample fields are
// GF(2,3,4,5,7,8,9).  Elements are 0..q-1 (base-p digit encoding of
// polynomial coefficients for k > 1).
class FiniteField {
 public:
  static FiniteField make(int q);  // throws on non prime powers

  int q() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return k_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int inv(int a) const;

 private:
  FiniteField() = default;
  void build_prime(int p);
  void build_extension(int p, int k, const std::vector<int>& irreducible);
  void spot_check() const;
  int q_ = 0, p_ = 0, k_ = 0;
  std::vector<int> add_, mul_, neg_, inv_;
};

struct OracleBudget {
  // Raw field elements touched per sample; cases above are out of scope.
  double max_states = 1e8;
};

// Exact number of F_q-points of the stable-framed moduli: stable framed
// tuples divided by |prod GL(d(v), F_q)|.  mu must be Trivial or Slope.
Int count_stable_framed(const FiniteField& F, const Quiver& q, const KClass& d,
                        const KClass& e, const WeakStability& mu,
                        const OracleBudget& budget = {});

struct CountSample {
  int q = 0;
  Int count;  // already divided by the group order
};

struct CountResult {
  Quiver quiver;
  KClass d, e;
  std::string mu_name;
  std::vector<CountSample> samples;
  std::vector<Int> poly;  // counting polynomial, coefficients low-to-high
  Int euler = 0;          // value at q = 1
  long long chi_hat_dd = 0;
  long long framing_pairing = 0;  // e . d
};

// Samples the fields, Lagrange-interpolates the counting polynomial of
// degree -chi_hat(d,d) + e.d, asserts integrality/consistency, evaluates at
// q=1.
CountResult euler_characteristic(const Quiver& q, const KClass& d,
                                 const KClass& e, const WeakStability& mu,
                                 const std::vector<int>& fields,
                                 const OracleBudget& budget = {},
                                 int threads = 1);

// NDT = (-1)^(chi_hat(d,d) + e.d) * chi.
Rational ndt_from_count(const CountResult& r);

std::string count_result_to_json(const CountResult& r);

// Test hook: per-tuple stable-framing counters computed two ways (direct
// vector scan with span closure vs invariant-subspace test); both exact.
Int count_stable_framings_direct(const FiniteField& F, const Quiver& q,
                                 const KClass& d, const KClass& e,
                                 const WeakStability& mu,
                                 const std::vector<std::vector<int>>& maps);
Int count_stable_framings_subspace(const FiniteField& F, const Quiver& q,
                                   const KClass& d, const KClass& e,
                                   const WeakStability& mu,
                                   const std::vector<std::vector<int>>& maps);

}  // namespace dtwc
