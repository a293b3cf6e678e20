#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qdutch {

/// Exact arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q" or a bare integer "p". Decimal notation is refused.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering; integers render as "p/1".
std::string format_rational(const Rational& value);

/// Decimal rendering rounded to `digits` significant digits, trailing zeros dropped.
std::string format_decimal(const Rational& value, int digits = 12);

double to_double(const Rational& value);

/// num/den in canonical form. Throws InputError on a zero denominator.
Rational ratio(const BigInt& num, const BigInt& den);

}  // namespace qdutch
