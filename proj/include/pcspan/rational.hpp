#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pcspan {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

// Accepts "num/den" or a plain integer, optionally signed. Throws ParseError.
Rational parse_rational(std::string_view text);

// Always "num/den" in lowest terms, denominator positive.
std::string to_string(const Rational& value);

int sign(const Rational& value);
std::int64_t floor_to_int(const Rational& value);
std::int64_t ceil_to_int(const Rational& value);
double to_double(const Rational& value);

// Exact value of a double.
Rational from_double(double value);

// Closest fraction with denominator <= max_den if it lies within tol of value.
std::optional<Rational> snap_double(double value, std::int64_t max_den, double tol);

Rational pow2(int exponent);

}  // namespace pcspan
