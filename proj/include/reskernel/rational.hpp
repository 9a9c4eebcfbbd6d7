#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace resk {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Canonical construction: lowest terms, positive denominator. The two-argument
// mpq constructor canonicalizes; the string constructor does not, so fraction
// parsing must go through this function, never through Rational("a/b").
Rational make_rational(const Int& num, const Int& den);

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Int(num), Int(den));
}

bool is_integer(const Rational& q);

// "0", "7", "-3/2"; denominator omitted when 1.
std::string rational_to_string(const Rational& q);

}  // namespace resk
