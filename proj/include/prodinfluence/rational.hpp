#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace prodinfluence {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational carrier for every probability in the library. The backing
/// bigint rational is kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Renders a rational with an explicit denominator, e.g. "0/1", "-3/4".
std::string to_fraction_string(const Rational& value);

/// Parses "p/q" or a bare integer "p". The denominator must be positive.
/// Throws InputError on anything else.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);
long double to_long_double(const Rational& value);

} // namespace prodinfluence
