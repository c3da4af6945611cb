#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace dsscap {

// All quantities in the core are exact rationals. Capacities like 10/3 must
// round-trip through every formula without drift, so there is no floating
// point anywhere on the computation path; doubles appear only in display code.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return numerator(r); }
inline BigInt rat_den(const Rational& r) { return denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& r);

/// Table rendering: exact form plus a rounded decimal hint for non-integers,
/// e.g. "10/3 (~3.333)".
std::string format_rational_approx(const Rational& r);

/// Accepts an optionally signed integer literal or "p/q" with positive q.
/// Throws DssError(ParseError) on anything else.
Rational parse_rational(std::string_view text);

BigInt factorial(int n);
BigInt binomial(int n, int k);

}  // namespace dsscap
