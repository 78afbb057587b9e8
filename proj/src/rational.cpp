#include "rational.hpp"

#include <cctype>
#include <stdexcept>

namespace scoreforge {

BigInt rat_floor(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  BigInt q = num / den;
  if (q * den > num) --q;
  return q;
}

BigInt rat_ceil(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  BigInt q = num / den;
  if (q * den < num) ++q;
  return q;
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

Rational pow10(int k) {
  BigInt p = 1;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) p *= 10;
  return k >= 0 ? Rational(p) : Rational(1, p);
}

BigInt round_to_integer(const Rational& r) {
  BigInt f = rat_floor(r);
  Rational frac = r - Rational(f);
  Rational half(1, 2);
  if (frac > half) return f + 1;
  if (frac < half) return f;
  return (f % 2 == 0) ? f : f + 1;
}

Rational round_decimals(const Rational& r, int k) {
  Rational scale = pow10(k);
  return Rational(round_to_integer(r * scale)) / scale;
}

std::optional<ParsedDecimal> parse_decimal(std::string_view text) {
  size_t i = 0;
  const size_t n = text.size();
  if (n == 0) return std::nullopt;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = (text[i] == '-');
    ++i;
  }
  BigInt mantissa = 0;
  int frac_digits = 0;
  bool any_digit = false;
  for (; i < n && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    mantissa = mantissa * 10 + (text[i] - '0');
    any_digit = true;
  }
  if (i < n && text[i] == '.') {
    ++i;
    for (; i < n && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      mantissa = mantissa * 10 + (text[i] - '0');
      ++frac_digits;
      any_digit = true;
    }
  }
  if (!any_digit) return std::nullopt;
  int exponent = 0;
  if (i < n && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_neg = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
      exp_neg = (text[i] == '-');
      ++i;
    }
    if (i == n || !std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    long ev = 0;
    for (; i < n && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      ev = ev * 10 + (text[i] - '0');
      if (ev > 100000) return std::nullopt;
    }
    exponent = static_cast<int>(exp_neg ? -ev : ev);
  }
  if (i != n) return std::nullopt;

  ParsedDecimal out;
  int shift = frac_digits - exponent;  // value = mantissa * 10^-shift
  Rational v(mantissa);
  v *= pow10(-shift);
  out.value = negative ? -v : v;
  out.decimals = shift > 0 ? shift : 0;
  return out;
}

std::string rat_to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string rat_to_decimal_string(const Rational& r, int digits) {
  Rational scaled = r * pow10(digits);
  BigInt q = round_to_integer(scaled);
  bool neg = q < 0;
  if (neg) q = -q;
  std::string s = q.str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return neg ? "-" + s : s;
}

std::optional<std::string> rat_to_exact_decimal(const Rational& r) {
  BigInt den = denominator(r);
  int twos = 0, fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return std::nullopt;
  int digits = std::max(twos, fives);
  BigInt scaled = numerator(r);
  for (int i = 0; i < digits - twos; ++i) scaled *= 2;
  for (int i = 0; i < digits - fives; ++i) scaled *= 5;
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return neg ? "-" + s : s;
}

double rat_to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace scoreforge
