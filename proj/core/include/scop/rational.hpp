#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace scop {

// Exact arbitrary-precision rational. All probability endpoints in the
// library are Rationals so that equalities like "= {0}" and "= {1}" are
// decidable without tolerances.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "num/den", an integer literal, or a decimal literal with at most
// 12 fractional digits. Parsing is exact; throws errc::parse_error.
Rational rational_from_string(const std::string& text);

// Canonical text: "num" when the denominator is 1, otherwise "num/den".
std::string rational_to_string(const Rational& value);

// Exact conversion; every finite double is a dyadic rational.
// Throws errc::parse_error on NaN/inf.
Rational rational_from_double(double value);

double rational_to_double(const Rational& value);

} // namespace scop
