#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace morsekit {

// Exact rational scalar. Quasi-homogeneity checks and term cancellation
// must not round, so germ coefficients and weights live in this type and
// convert to double only at evaluation boundaries.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Parses "p/q", "p", "-p/q", or a plain integer. Throws ParseError on junk.
Rational parse_rational(const std::string& text);

// Canonical "p/q" (or "p" when the denominator is 1).
std::string rational_to_string(const Rational& q);

}  // namespace morsekit
