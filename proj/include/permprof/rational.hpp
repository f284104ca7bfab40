#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace permprof {

using Rational = mpq_class;
using BigInt = mpz_class;

/// num/den reduced to lowest terms, den > 0.
Rational make_rational(const BigInt& num, const BigInt& den);
Rational make_rational(long num, long den);

/// Parses "p/q" or "p" (optional leading '-'). Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Renders in lowest terms, always with an explicit denominator: 3 -> "3/1".
std::string format_rational(const Rational& q);

/// Shortest decimal form of the value rounded to 17 significant digits.
std::string format_double17(double x);

/// Nearest double to q (round half to even).  mpq_get_d alone truncates.
double to_double_nearest(const Rational& q);

BigInt factorial(unsigned long n);

/// n!! = n(n-2)(n-4)...; 0!! = (-1)!! = 1.
BigInt double_factorial(long n);

/// hi * (hi-2) * (hi-4) * ... * lo', where lo' >= lo and lo' == hi (mod 2).
/// Empty product (hi < lo) is 1.
BigInt descending_step2_product(long hi, long lo);

/// q^e for integer e >= 0.
Rational rational_pow(const Rational& q, unsigned long e);

/// Rising factorial x(x+1)...(x+n-1) over the rationals.
Rational rising_factorial(const Rational& x, unsigned long n);

/// Falling factorial x(x-1)...(x-n+1) over the rationals.
Rational falling_factorial(const Rational& x, unsigned long n);

}  // namespace permprof
