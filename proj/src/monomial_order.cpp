#include "reskernel/monomial_order.hpp"

#include <stdexcept>

namespace resk {
namespace {

int block_degree(const Monomial& m, std::size_t lo, std::size_t hi) {
  int d = 0;
  for (std::size_t i = lo; i < hi; ++i) d += m.e[i];
  return d;
}

// 1 if a > b, -1 if a < b, 0 if equal — pure lex on [lo, hi).
int cmp_lex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo; i < hi; ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
  }
  return 0;
}

// Graded revlex on [lo, hi): higher degree wins; on ties the *last* position
// where the exponents differ decides, and the smaller exponent there wins.
int cmp_grevlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  int da = block_degree(a, lo, hi);
  int db = block_degree(b, lo, hi);
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

bool MonomialOrder::greater(const Monomial& a, const Monomial& b) const {
  if (a.nvars() != b.nvars())
    throw std::invalid_argument("monomial order: mismatched variable counts");
  std::size_t n = a.nvars();
  switch (kind) {
    case OrderKind::Lex:
      return cmp_lex(a, b, 0, n) > 0;
    case OrderKind::GradedLex: {
      int da = a.degree(), db = b.degree();
      if (da != db) return da > db;
      return cmp_lex(a, b, 0, n) > 0;
    }
    case OrderKind::GradedRevLex:
      return cmp_grevlex(a, b, 0, n) > 0;
    case OrderKind::BlockElim: {
      std::size_t k = static_cast<std::size_t>(block);
      if (k > n) throw std::invalid_argument("monomial order: block exceeds variable count");
      int front = cmp_grevlex(a, b, 0, k);
      if (front != 0) return front > 0;
      return cmp_grevlex(a, b, k, n) > 0;
    }
  }
  throw std::logic_error("monomial order: unknown kind");
}

}  // namespace resk
