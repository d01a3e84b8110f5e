#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hecke {

// Canonical (reduced, positive denominator) arbitrary-precision rational.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
// Canonical num/den for counts (den > 0).
Rational ratio(unsigned long num, unsigned long den);

// Always renders "num/den", including "/1" for integers.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Accepts "n", "n/d", optional leading sign and surrounding blanks.
Rational parse_rational(std::string_view text);

Integer floor(const Rational& r);
// r - floor(r), always in [0, 1).
Rational frac(const Rational& r);
bool is_integer(const Rational& r);

// v_p(r) for r != 0.
long valuation(const Rational& r, unsigned long prime);

}  // namespace hecke
