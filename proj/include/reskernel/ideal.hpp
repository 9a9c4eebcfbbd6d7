#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reskernel/monomial_order.hpp"
#include "reskernel/polynomial.hpp"

namespace resk {

struct GroebnerOptions {
  // Maximum number of S-pairs popped from the queue across one basis
  // computation; guards against runaway examples.
  long spair_cap = 200000;
};

// Thrown when a basis computation exceeds its configured resource budget.
class ResourceCapExceeded : public std::runtime_error {
 public:
  explicit ResourceCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// An ideal of Q[vars], kept as the generators it was built from plus a cached
// reduced Groebner basis (graded lex) computed on demand. The reduced basis is
// a canonical form: two ideals are equal iff their bases match.
class Ideal {
 public:
  Ideal() = default;
  Ideal(VarList vars, std::vector<Polynomial> gens);

  static Ideal zero(VarList vars);
  static Ideal unit(VarList vars);

  // Accessors are ref-qualified so that iterating over a temporary's parts
  // (e.g. range-for over f(I).generators()) copies instead of dangling.
  const VarList& vars() const& { return vars_; }
  VarList vars() const&& { return vars_; }
  const std::vector<Polynomial>& generators() const& { return gens_; }
  std::vector<Polynomial> generators() const&& { return gens_; }

  // Reduced monic basis, sorted ascending by leading monomial. Cached.
  const std::vector<Polynomial>& groebner_basis(const GroebnerOptions& opt = {}) const&;
  std::vector<Polynomial> groebner_basis(const GroebnerOptions& opt = {}) const&& {
    return groebner_basis(opt);
  }

  Polynomial normal_form(const Polynomial& p, const GroebnerOptions& opt = {}) const;
  bool contains(const Polynomial& p, const GroebnerOptions& opt = {}) const;
  bool is_zero_ideal(const GroebnerOptions& opt = {}) const;
  bool is_unit_ideal(const GroebnerOptions& opt = {}) const;

 private:
  VarList vars_;
  std::vector<Polynomial> gens_;
  mutable std::optional<std::vector<Polynomial>> gb_;
};

bool equal_ideals(const Ideal& a, const Ideal& b, const GroebnerOptions& opt = {});

// Ring operations (arguments must share one variable list).
Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_power(const Ideal& a, int k);  // k = 0 gives the unit ideal

// Rewrite p in a larger ring that contains every variable of p by name.
Polynomial embed(const Polynomial& p, const VarList& ring);
Ideal embed_ideal(const Ideal& ideal, const VarList& ring);

// Basis engine entry points with an explicit term order (the Ideal cache always
// uses graded lex). Input polynomials must share one ring.
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens,
                                       const MonomialOrder& order,
                                       const GroebnerOptions& opt = {});
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order);

// Intersection with the subring on the remaining variables: generators of
// I \cap Q[vars minus drop_vars], in that smaller ring (original order kept).
Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop_vars,
                const GroebnerOptions& opt = {});

// Saturation I : f^infinity via a fresh inverse variable and elimination.
Ideal saturate(const Ideal& ideal, const Polynomial& f, const GroebnerOptions& opt = {});
Ideal saturate(const Ideal& ideal, const std::vector<Polynomial>& fs,
               const GroebnerOptions& opt = {});

}  // namespace resk
