#pragma once

#include <gmpxx.h>

#include <string>

namespace wcop {

/// Exact rational, always canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Natural log of |q| without overflowing for huge numerators/denominators.
/// Returns -inf for q == 0.
double log_abs(const Rational& q);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);
Rational rational_pow(const Rational& base, unsigned exponent);
Integer ceil_rational(const Rational& q);

}  // namespace wcop
