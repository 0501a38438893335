#pragma once

#include <gmpxx.h>
#include <string>

namespace hyparr {

using Int = mpz_class;
using Rat = mpq_class;

/// Rational from numerator/denominator, reduced to lowest terms with
/// positive denominator. Throws std::invalid_argument on zero denominator.
Rat make_rat(const Int& num, const Int& den);
inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

/// Parses "p/q" or "p" with optional sign. Throws std::invalid_argument.
Rat parse_rat(const std::string& s);

std::string to_string(const Rat& q);
std::string to_string(const Int& z);

}  // namespace hyparr
