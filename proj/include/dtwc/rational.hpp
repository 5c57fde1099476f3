#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace dtwc {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// cpp_rational is kept in lowest terms with positive denominator by
// construction, which is exactly the contract the rest of the library
// assumes.

inline Int rat_num(const Rational& r) { return numerator(r); }
inline Int rat_den(const Rational& r) { return denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// "3", "-3", "1/4", "-7/2".  Whitespace is not accepted.
inline std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) return std::nullopt;
    return Rational(num, den);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Canonical form used everywhere in output: "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& r) {
  std::string s = rat_num(r).str();
  if (!is_integer(r)) {
    s += '/';
    s += rat_den(r).str();
  }
  return s;
}

inline Int int_pow(Int base, unsigned long e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Rational rat_pow(const Rational& base, long e) {
  if (e >= 0)
    return Rational(int_pow(rat_num(base), (unsigned long)e),
                    int_pow(rat_den(base), (unsigned long)e));
  if (base == 0) throw std::domain_error("rat_pow: 0 to negative power");
  return Rational(int_pow(rat_den(base), (unsigned long)(-e)),
                  int_pow(rat_num(base), (unsigned long)(-e)));
}

inline Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// -1 or +1 depending on the parity of an arbitrary integer.
inline int parity_sign(const Int& k) { return (k % 2) == 0 ? 1 : -1; }
inline int parity_sign(long long k) { return (k % 2) == 0 ? 1 : -1; }

}  // namespace dtwc
