#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace scoreforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Largest integer <= r.
BigInt rat_floor(const Rational& r);
// Smallest integer >= r.
BigInt rat_ceil(const Rational& r);

bool is_integer(const Rational& r);

// 10^k as a rational; k may be negative.
Rational pow10(int k);

// Nearest integer, ties to even.
BigInt round_to_integer(const Rational& r);
// Round to k decimal places, ties to even.
Rational round_decimals(const Rational& r, int k);

struct ParsedDecimal {
  Rational value;
  // Number of decimal places the literal carries ("0.6801" -> 4, "2.5e-3" -> 4,
  // "12" -> 0). Drives the default numerical-uncertainty inference.
  int decimals = 0;
};

// Exact parse of a plain or scientific decimal literal. No rounding ever
// happens: "0.6801" becomes 6801/10000. Returns nullopt on malformed input.
std::optional<ParsedDecimal> parse_decimal(std::string_view text);

// "371/502" or "12" when the denominator is one.
std::string rat_to_string(const Rational& r);

// Fixed-point decimal rendering with the given number of fraction digits,
// rounded ties-to-even. Used for diagnostics only.
std::string rat_to_decimal_string(const Rational& r, int digits);

// Exact finite decimal rendering; empty when the denominator has prime
// factors other than 2 and 5.
std::optional<std::string> rat_to_exact_decimal(const Rational& r);

double rat_to_double(const Rational& r);

}  // namespace scoreforge
