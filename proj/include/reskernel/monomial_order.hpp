#pragma once

#include "reskernel/polynomial.hpp"

namespace resk {

// Term orders used by the basis engine. All are total orders on monomials of a
// fixed ring; `greater(a, b)` means a is ranked above b.
//
//   Lex          pure lexicographic (earlier variable dominates)
//   GradedLex    total degree, ties by lex
//   GradedRevLex total degree, ties by reverse lexicographic
//   BlockElim    product order: graded revlex on the first `block` variables,
//                ties by graded revlex on the rest. Any monomial involving a
//                front-block variable outranks every monomial free of them,
//                which is what variable elimination needs.
enum class OrderKind { Lex, GradedLex, GradedRevLex, BlockElim };

struct MonomialOrder {
  OrderKind kind = OrderKind::GradedLex;
  int block = 0;  // size of the leading block (BlockElim only)

  bool greater(const Monomial& a, const Monomial& b) const;
  bool operator()(const Monomial& a, const Monomial& b) const { return greater(a, b); }

  static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
  static MonomialOrder graded_lex() { return {OrderKind::GradedLex, 0}; }
  static MonomialOrder graded_revlex() { return {OrderKind::GradedRevLex, 0}; }
  static MonomialOrder block_elim(int leading_block) {
    return {OrderKind::BlockElim, leading_block};
  }
};

}  // namespace resk
