#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace vdf {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical "p/q" form with q > 0 and gcd(p, q) = 1; integers print as "p".
std::string to_string(const Rational& q);

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input or q = 0.
Rational parse_rational(std::string_view text);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace vdf
