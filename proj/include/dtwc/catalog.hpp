#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dtwc/invariants.hpp"
#include "dtwc/lattice.hpp"
#include "dtwc/series.hpp"

namespace dtwc {
namespace catalog {

struct VerifyReport {
  std::string entry;
  long long checked_classes = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

std::string report_to_json(const VerifyReport& r);

struct EntryInfo {
  std::string name;
  std::string source;  // where the closed forms come from
};

// Stable names: c3, conifold, c3z2z2, c3zn:<n>, mloop:<m>, grassmann,
// dim0[:chi].
std::vector<EntryInfo> list();

// Expands the entry's generating function to the given order, re-derives the
// invariant tables through the series/Mobius transforms, and compares them
// against the entry's closed forms.  Unknown names throw.
VerifyReport verify(const std::string& name, int order);

// Internals reused by tests and the acceptance suite -------------------

// Conifold data: 2 variables, chi = 0, framing (1,0).
NumericalContext conifold_context();
TruncatedSeries conifold_ndt_series(int order, bool swap_vertices = false);
Rational conifold_dtbar(const KClass& c);
Rational conifold_dthat(const KClass& c);

// One-vertex m-loop quiver data.
TruncatedSeries mloop_ndt_binomial_series(int m, int order);
TruncatedSeries mloop_ndt_exp_series(int m, int order);
Rational mloop_dtbar(int m, long long d);
Rational mloop_dthat(int m, long long d);

// MacMahon M(-s)^chi to the given order (1 variable).
TruncatedSeries macmahon_signed_power(int chi, int order);

// C3/Zn cyclic orbifold data (n >= 2).
NumericalContext c3zn_context(int n);
TruncatedSeries c3zn_ndt_series(int n, int order);
Rational c3zn_dthat(int n, const KClass& c);

// C3/Z2xZ2 data: 4 variables, per-variable caps.
NumericalContext c3z2z2_context();
TruncatedSeries c3z2z2_ndt_series(int cap);
Rational c3z2z2_dthat(const KClass& c);
// The published four-case table; classes of the shape (one k, three k-1)
// are not covered by it (the completed table assigns them +1).
std::optional<Rational> c3z2z2_dthat_published(const KClass& c);

}  // namespace catalog
}  // namespace dtwc
