#pragma once

#include <gmpxx.h>

#include <string>

namespace invgh {

// Exact rational scalar used throughout the core.  GMP keeps values
// canonical: positive denominator, fully reduced fraction.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool rat_is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

}  // namespace invgh
