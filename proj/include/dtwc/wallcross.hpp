#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "dtwc/lattice.hpp"
#include "dtwc/numerics.hpp"
#include "dtwc/rational.hpp"

namespace dtwc {

struct KClassGrlexLess {
  bool operator()(const KClass& a, const KClass& b) const {
    return kclass_grlex_less(a, b);
  }
};

// Finite invariant data used by the transforms: class -> value, zero
// elsewhere.
using ClassMap = std::map<KClass, Rational, KClassGrlexLess>;

// Ordered splitting of a class into positive-cone parts.
struct Decomposition {
  std::vector<KClass> parts;
  KClass total;
};

// S coefficient: checks clauses (a)/(b) on tau of consecutive parts against
// tau_tilde of the complementary partial sums; (-1)^#a, or 0.
int coeff_S(const NumericalContext& ctx, const std::vector<KClass>& parts,
            const WeakStability& tau, const WeakStability& tau_tilde);

// U coefficient: the full double composition sum with its slope-equality
// side conditions, weights (-1)^(l-1)/l, products of S, and 1/(a_i-a_{i-1})!.
Rational coeff_U(const NumericalContext& ctx, const std::vector<KClass>& parts,
                 const WeakStability& tau, const WeakStability& tau_tilde);

// V coefficient on an oriented tree: 1/(2^(n-1) n!) times the sum of U over
// the orderings of the vertices compatible with the edge orientations.
Rational coeff_V(const NumericalContext& ctx, int n,
                 const std::vector<std::pair<int, int>>& tree_edges,
                 const std::vector<KClass>& kappa, const WeakStability& tau,
                 const WeakStability& tau_tilde);

struct TransformOptions {
  int max_parts = 6;
  bool unsigned_mode = false;  // drop both sign factors (J-invariant law)
};

struct TransformResult {
  Rational value;
  bool truncated = false;  // the part-count cap cut off live branches
};

// Wall-crossing transformation law in the ordered form: sum over ordered
// cone decompositions of the target and low-to-high oriented trees of
//   (-1)^(n-1+sum_{i<j} chi(a_i,a_j)) / 2^(n-1) * U * prod_edges chi * prod DT.
// Parts run over the support of `table`; absent classes count as zero.
TransformResult transform(const NumericalContext& ctx, const ClassMap& table,
                          const WeakStability& tau,
                          const WeakStability& tau_tilde, const KClass& target,
                          const TransformOptions& opt = {});

// The same law evaluated through V: one representative vertex set {1..n} per
// cardinality, all kappa maps, all labelled trees in all orientations.
// Used as a cross-check of the ordered form.
TransformResult transform_vform(const NumericalContext& ctx,
                                const ClassMap& table, const WeakStability& tau,
                                const WeakStability& tau_tilde,
                                const KClass& target,
                                const TransformOptions& opt = {});

// Element of the nilpotent Lie algebra on symbols lambda^alpha, alpha in a
// declared finite class set; products landing outside the set are dropped.
struct LieElement {
  ClassMap support;
};

using ClassSet = std::set<KClass, KClassGrlexLess>;

// [l^a, l^b] = (-1)^chi(a,b) chi(a,b) l^(a+b) when a+b stays in S, else 0,
// extended bilinearly.
LieElement lie_bracket(const LieElement& a, const LieElement& b,
                       const NumericalContext& ctx, const ClassSet& S);

// Pair invariant of `target` evaluated by nested Lie brackets in the framed
// extension: sum over ordered splittings of (-1)^l/l! applied to
// [[..[lambda^{(0,1)}*(-1), -DT^{a_1} lambda^{(a_1,0)}], ..], -DT^{a_l} ...],
// reading off minus the coefficient of lambda^{(target,1)}.
// `tau` is the stability the table is taken at (parts are filtered to the
// stability value of the target).
Rational nested_bracket_pair_formula(const NumericalContext& ctx,
                                     const ClassMap& table,
                                     const WeakStability& tau,
                                     const KClass& target,
                                     int max_parts = 16);

// Enumerates ordered tuples of support classes summing to `target`
// (coordinatewise non-negative remainders), up to max_parts parts.
// Returns true if some branch was cut off by the cap.
bool for_each_ordered_decomposition(
    const std::vector<KClass>& support, const KClass& target, int max_parts,
    const std::function<void(const std::vector<KClass>&)>& fn);

}  // namespace dtwc
