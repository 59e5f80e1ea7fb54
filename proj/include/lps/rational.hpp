#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace lps {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

/// Parses "123", "-4", "1.25", "7/3" into an exact rational.
/// Throws InputError on anything else (including empty strings).
Rational parse_rational(const std::string& text);

/// Exact textual form that parse_rational reads back: plain integer,
/// finite decimal when the denominator is 2^a*5^b, otherwise "num/den".
std::string to_string(const Rational& q);

/// floor(q) as an integer (works for negative values too).
BigInt floor_rat(const Rational& q);
/// ceil(q) as an integer.
BigInt ceil_rat(const Rational& q);

/// base^exp for integer exp (negative allowed); base != 0 when exp < 0.
Rational pow_rat(const Rational& base, long long exp);

/// base^exp for non-negative big exponents.
Rational pow_rat_big(const Rational& base, const BigInt& exp);

/// Smallest integer j with base^j >= x. Requires base > 1, x > 0.
long long ceil_log(const Rational& base, const Rational& x);
/// Largest integer j with base^j <= x. Requires base > 1, x > 0.
long long floor_log(const Rational& base, const Rational& x);

/// Largest multiple of step that is <= q (step > 0).
Rational floor_to_multiple(const Rational& q, const Rational& step);
/// Smallest multiple of step that is >= q (step > 0).
Rational ceil_to_multiple(const Rational& q, const Rational& step);

} // namespace lps
