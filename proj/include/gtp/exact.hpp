#pragma once

#include <gmpxx.h>

#include <string>

namespace gtp {

// All exact computation runs on GMP arbitrary-precision values. Rationals
// are kept canonical: lowest terms, positive denominator, so value equality
// is plain operator==.
using ExactInt = mpz_class;
using Rational = mpq_class;

// num/den as a canonical rational. Throws std::invalid_argument when den == 0.
Rational make_rational(const ExactInt& num, const ExactInt& den);
Rational make_rational(long num, long den);

inline double to_double(const Rational& q) {
    return q.get_d();
}

// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Parses "p" or "p/q". Throws std::invalid_argument on malformed input.
Rational rational_from_string(const std::string& text);

// Nearest integer (ties rounded up) and ceiling, used by CLI rounding modes.
ExactInt round_nearest(const Rational& q);
ExactInt round_ceil(const Rational& q);

} // namespace gtp
