#pragma once

#include <random>
#include <string>
#include <vector>

#include "reskernel/parser.hpp"
#include "reskernel/polynomial.hpp"

namespace resk::testing {

using Rng = std::mt19937_64;

// Random monomial with total degree <= max_degree (degree chosen uniformly,
// then distributed over the variables one unit at a time).
Monomial random_monomial(std::size_t nvars, int max_degree, Rng& rng);

// Random polynomial: up to max_terms random monomials with nonzero integer
// coefficients in [-coeff_bound, coeff_bound]. May collapse to fewer terms
// (or to zero) when monomials collide.
Polynomial random_polynomial(const VarList& vars, int max_degree, int max_terms,
                             int coeff_bound, Rng& rng);

}  // namespace resk::testing
