#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dtwc/lattice.hpp"
#include "dtwc/series.hpp"
#include "dtwc/wallcross.hpp"

namespace dtwc {

enum class TableKind { DTbar, DThat, PI_NDT, J, ChiFramed };

std::string table_kind_name(TableKind k);
std::optional<TableKind> table_kind_from_name(const std::string& s);

// Finite map class -> exact rational with a kind tag and the stability it is
// taken at.  Keys sorted graded-lex; all keys must lie in the positive cone.
struct InvariantTable {
  TableKind kind = TableKind::DTbar;
  std::string stability = "mu0";
  ClassMap entries;

  Rational value(const KClass& c) const {
    auto it = entries.find(c);
    return it == entries.end() ? Rational(0) : it->second;
  }
  // Zero values are stored explicitly: an entry records that the class lies
  // in the table's domain (the Mobius transforms need the domain to be
  // closed under division).
  void set(const KClass& c, const Rational& v) { entries[c] = v; }
};

std::string table_to_json(const InvariantTable& t);
std::optional<InvariantTable> table_from_json(const std::string& text);

// Absent divisor classes: reject (the caller promised closure under
// division) or read as the exact value zero (sound whenever the table was
// produced by an extraction that enumerated every class in a
// downward-closed bound).
enum class MissingDivisor { Error, Zero };

// DT-hat^a = sum_{m|a} Mo(m)/m^2 DT-bar^{a/m}  (Mobius direction).
InvariantTable bps_from_dt(const InvariantTable& dtbar,
                           MissingDivisor policy = MissingDivisor::Error);
// DT-bar^a = sum_{m|a} 1/m^2 DT-hat^{a/m}  (inverse direction).
InvariantTable dt_from_bps(const InvariantTable& dthat,
                           MissingDivisor policy = MissingDivisor::Error);

// Classes with non-integral values (the integrality property is reported,
// never assumed).
std::vector<std::pair<KClass, Rational>> nonintegral_entries(
    const InvariantTable& t);

// Signed pair/NDT transform (term form): sum over ordered splittings of
// `target` into classes of the same stability value, of
//   (-1)^l / l! prod_i (-1)^{K_i} K_i DT^{a_i},
//   K_i = F(a_i) - chi(a_1+..+a_{i-1}, a_i).
// Unsigned mode computes the Euler-characteristic form with J-values:
//   1/l! prod_i K_i J^{a_i}.
struct PairTransformOptions {
  bool signed_mode = true;
  int max_parts = 64;  // splittings are bounded by the coordinate sum anyway
};
Rational pair_transform(const NumericalContext& ctx, const InvariantTable& table,
                        const WeakStability& tau, const KClass& target,
                        const PairTransformOptions& opt = {});

// Generating-function form (valid only when chi vanishes on the slope
// class):  1 + sum NDT^d q^d = exp[-sum (-1)^{F(d)} F(d) DT^d q^d].
TruncatedSeries pair_series(const NumericalContext& ctx,
                            const InvariantTable& dtbar,
                            const WeakStability& tau, TruncationBound bound);

// Inverse: DT^d = -(-1)^{F(d)} / F(d) * [q^d] log(series).  Classes whose
// log-coefficient vanishes are omitted (the series does not determine them);
// a nonzero coefficient with F(d) = 0 is an error.
InvariantTable dt_from_pair_series(const NumericalContext& ctx,
                                   const TruncatedSeries& series);

// Reineke functional-equation machinery on a rank-1 lattice.
//   S(t) = prod_i (1 - ((-1)^N t)^i)^{-i a_i},
//   S(t) = prod_i (1 - (t S(t)^N)^i)^{i b_i}.
// Builds S from the a_i, solves for the b_i order by order, and reports
// integrality of the b_i.
struct ReinekeReport {
  std::vector<Rational> b;       // b_1 .. b_order
  bool all_b_integral = true;
  TruncatedSeries S;
};
ReinekeReport reineke_check(const std::vector<Rational>& a, long long N,
                            int order);
// Converse direction: recover the a_i of the first product from S.
std::vector<Rational> reineke_recover_a(const TruncatedSeries& S, long long N,
                                        int order);

// Weighted Euler characteristic shadow: -(sum coefficient * behrend value).
Rational weighted_euler(
    const std::vector<std::pair<Rational, long long>>& points);

}  // namespace dtwc
