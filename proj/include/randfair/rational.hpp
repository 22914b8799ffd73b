#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace randfair {

// Every mass, score, rate and loss in the library is an exact GMP rational.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "num/den", plain integers and finite decimals ("0.375", "-2.5").
// Throws Error{ParseError} on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// Lowest-terms "num/den"; integers are written with denominator 1 ("0/1").
std::string format_rational(const Rational& value);

inline bool in_unit_interval(const Rational& value) { return value >= 0 && value <= 1; }
inline bool is_integral(const Rational& value) { return value.get_den() == 1; }

// Common scale for a batch of rationals: values[i] * scale is an integer for
// every i, and scale is the least such positive integer.
struct ScaledIntegers {
  std::vector<Integer> values;
  Integer scale;
};
ScaledIntegers scale_to_integers(std::span<const Rational> values);

}  // namespace randfair
