#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace btt {

using Integer = mpz_class;
using Rational = mpq_class;

Integer floor_q(const Rational& q);
Integer ceil_q(const Rational& q);
/// Fractional part in [0, 1).
Rational frac_q(const Rational& q);

/// "a" or "a/b" with b > 0, always reduced.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Accepts "a", "-a", "a/b"; surrounding whitespace is ignored.
Rational parse_rational(std::string_view text);

/// Exponent of p in q; q must be nonzero.
long padic_order(const Rational& q, const Integer& p);

long to_long(const Integer& z);

Integer lcm_of_denominators(const std::vector<Rational>& xs);

}  // namespace btt
