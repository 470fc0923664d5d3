#pragma once
#include <gmpxx.h>
#include <string>

#include "hc/errors.hpp"

namespace hc {

// Exact rationals back every piece of grading/degeneracy arithmetic; floats are
// reserved for dynamics. GMP keeps floor/divisibility decisions overflow-free.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "-p", "p/q" (q > 0 after canonicalization). Anything else is a ParseError.
Rational parse_rational(const std::string& s);

// Canonical form: "p" when the denominator is 1, else "p/q".
std::string rational_str(const Rational& q);

bool rational_is_integer(const Rational& q);

// floor(q) as a bignum; callers needing machine ints go through floor_long.
Integer rational_floor(const Rational& q);
long long floor_long(const Rational& q);

// gmpxx has no long long constructors; on this LP64 target long is as wide.
inline Integer make_integer(long long v) { return Integer(static_cast<long>(v)); }
inline Rational make_rational(long long v) { return Rational(static_cast<long>(v)); }

double rational_double(const Rational& q);

} // namespace hc
