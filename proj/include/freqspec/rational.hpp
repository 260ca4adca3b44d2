#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace freqspec {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Prints `p/q` in lowest terms, or `p` when the denominator is one.
std::string to_string(const Rational& value);

/// Accepts `p`, `-p`, `p/q` and `-p/q` with decimal digits.
Rational parse_rational(std::string_view text);

Integer lcm(const Integer& a, const Integer& b);

}  // namespace freqspec
