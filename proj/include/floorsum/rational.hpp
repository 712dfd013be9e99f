#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace floorsum {

// Exact rational in lowest terms; all exponent arithmetic goes through this.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p", "p/q", "-p/q" with optional surrounding whitespace.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);
std::string numerator_string(const Rational& r);
std::string denominator_string(const Rational& r);
double to_double(const Rational& r);

}  // namespace floorsum
