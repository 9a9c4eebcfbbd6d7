#include "reskernel/rational.hpp"

namespace resk {

Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  return Rational(num, den);
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

std::string rational_to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (!is_integer(q)) {
    s += "/";
    s += denominator(q).str();
  }
  return s;
}

}  // namespace resk
