#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace zec {

// All arithmetic in this library is exact. Rationals are kept in canonical
// form (gcd 1, positive denominator) by GMP.
using Int = mpz_class;
using Rational = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "p/q", plain integers, and finite decimal strings ("0.25", "-1.5").
// Decimals are converted exactly, never through floating point.
Rational parse_rational(const std::string& text);

// Canonical rendering: "p/q" with q > 1, plain integer otherwise.
std::string to_string(const Rational& value);

std::string to_string(const Int& value);

// value^exponent for nonnegative integer exponents.
Rational pow(const Rational& value, unsigned exponent);

Int pow(const Int& value, unsigned exponent);

// Rough log2, good enough for diagnostics on arbitrarily large rationals.
// Requires value > 0.
double log2_approx(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace zec
