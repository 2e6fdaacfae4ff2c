#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace metlie {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator.
using Rational = mpq_class;

/// Parses "p", "p/q" or "-p/q". Throws InputError on malformed text or a
/// zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace metlie
