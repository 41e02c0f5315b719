#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace pou {

// All weights, distances and coordinates in this library are exact rationals.
// No floating point is used anywhere in the computational core, so every
// equality test in the API is a true equality, not a tolerance check.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p" or "p/q" with optional leading '-' on p; q must be positive.
// Throws ParseError on anything else (including floats and empty strings).
Rational parse_rational(const std::string& text);

// Lowest terms, positive denominator; integers render without the "/1".
std::string format_rational(const Rational& value);

} // namespace pou
