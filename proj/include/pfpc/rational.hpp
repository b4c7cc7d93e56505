#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pfpc {

// Exact probabilities and weights. Always spell the type out: mpq_class
// arithmetic returns expression templates, so `auto` would capture those.
using Rational = mpq_class;

/// Serializes as "num/den" (integers included, e.g. "1/1").
std::string to_string(const Rational& r);

/// Accepts "n/d", "n", or a decimal literal such as "0.125"; the result is
/// the exact rational the text denotes.
Rational parse_rational(std::string_view text);

/// Closest double, for human-readable output only.
double to_double(const Rational& r);

inline bool is_probability(const Rational& r) { return r >= 0 && r <= 1; }

/// 2^-k as an exact rational.
Rational pow2_inverse(unsigned k);

}  // namespace pfpc
