#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace landflow {

using Rational = mpq_class;

/// "3", "-1/2"; canonical (reduced, positive denominator).
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace landflow
