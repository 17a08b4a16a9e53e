#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fpi {

/// Arbitrary-precision rational backed by GMP.
using Rational = mpq_class;

/// Parses "p/q", "p", or a plain decimal such as "-0.125" into an exact,
/// canonicalized rational. Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" or "p" (when the denominator is 1).
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

std::size_t hash_value(const Rational& q) noexcept;

/// True if q is an integer; writes it to *out when it fits in a long.
bool as_integer(const Rational& q, long* out);

}  // namespace fpi
