#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace pfa {

/// Exact probability value. Always kept canonical (lowest terms, positive denominator).
using Rational = mpq_class;

/// Parses `N/D` or a plain integer. Returns nullopt on malformed text or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical `N/D` form, or `N` when the denominator is 1.
std::string to_string(const Rational& value);

/// Display-only decimal rendering with 6 significant digits.
std::string to_decimal(const Rational& value);

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace pfa
