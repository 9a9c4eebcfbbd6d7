#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "reskernel/ideal.hpp"

namespace resk {

// An ideal together with the order it is being reduced against, plus the
// exceptional variables of the host chart (with the multiplicities carried by
// the accumulated monomial factor).
struct MarkedIdeal {
  Ideal ideal;
  int mark = 1;
  std::vector<std::pair<std::string, int>> exceptional;
};

// Ideal generated by all partial derivatives of total differentiation order
// <= k of the generators (the generators themselves included); k = 0 is the
// ideal unchanged.
Ideal derivative_ideal(const Ideal& ideal, int k);

// D^{<= mark-1} of the marked ideal: the ideal cutting out the locus where
// the order is still >= mark.
Ideal t_ideal(const MarkedIdeal& marked);

// Vanishing order at a rational point: translate the point to the origin and
// take the minimum order over the generators. nullopt means infinite (the
// zero ideal).
std::optional<int> ord_at_point(const Ideal& ideal, const std::vector<Rational>& point);

// Largest vanishing order attained anywhere: the smallest a for which the
// order-a derivative ideal is the unit ideal. nullopt means infinite (zero
// ideal); 0 means the ideal is already the unit ideal.
std::optional<int> max_order(const Ideal& ideal, const GroebnerOptions& opt = {});

// Split off the largest monomial in the given variables dividing every
// generator; returns that monomial and the ideal of cofactors. The minimum
// exponent is taken per variable across the generators.
std::pair<Monomial, Ideal> monomial_part(const Ideal& ideal,
                                         const std::vector<std::string>& exceptional);

}  // namespace resk
