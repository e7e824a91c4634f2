#pragma once

#include <gmpxx.h>

#include <string>

namespace kreweras {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

// Rounds through a 128-bit float so the result carries full long double
// precision, not just the 53 bits of get_d().
inline long double to_long_double(const Rational& r) {
  mpf_class f(r, 128);
  const double hi = f.get_d();
  f -= hi;
  return static_cast<long double>(hi) + static_cast<long double>(f.get_d());
}

// 3^n as an exact integer.
inline Integer pow3(unsigned long n) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 3, n);
  return out;
}

// r / 3^n rounded to double; used to compare exponentially growing counts
// with power-law predictions without overflowing.
inline double scaled_by_pow3(const Rational& r, unsigned long n) {
  Rational q = r / Rational(pow3(n));
  return q.get_d();
}

}  // namespace kreweras
