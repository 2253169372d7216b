#pragma once

#include <gmpxx.h>

#include <string>

namespace taut {

/// Exact arbitrary-precision rational; every coefficient in the library is one of these.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "a" or "a/b" (optionally signed). Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace taut
