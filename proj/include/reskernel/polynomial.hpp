#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reskernel/rational.hpp"

namespace resk {

using VarList = std::vector<std::string>;

// Exponent vector over a fixed variable list (positional).
struct Monomial {
  std::vector<int> e;

  Monomial() = default;
  explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}
  static Monomial one(std::size_t nvars) { return Monomial(std::vector<int>(nvars, 0)); }

  std::size_t nvars() const { return e.size(); }
  int degree() const;
  bool is_one() const;
  bool divides(const Monomial& m) const;
  Monomial times(const Monomial& m) const;
  Monomial divide_by(const Monomial& m) const;  // requires m.divides(*this)
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static Monomial gcd(const Monomial& a, const Monomial& b);
  bool coprime(const Monomial& m) const;

  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }
};

// Canonical storage order for terms: graded, then lexicographic by variable
// position (earlier variable wins), larger first.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Exact multivariate polynomial over the rationals. Immutable in spirit: all
// operations return new values. Terms never store a zero coefficient, so
// structural equality is semantic equality.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GradedLexGreater>;

  Polynomial() = default;  // zero polynomial over the empty variable list
  explicit Polynomial(VarList vars) : vars_(std::move(vars)) {}

  static Polynomial constant(VarList vars, const Rational& c);
  static Polynomial variable(const VarList& vars, std::size_t index);
  static Polynomial variable(const VarList& vars, const std::string& name);
  static Polynomial from_terms(VarList vars, TermMap terms);
  static Polynomial monomial_term(VarList vars, Monomial m, const Rational& c);

  // Accessors are ref-qualified so that iterating over a temporary's parts
  // (e.g. range-for over f(x).terms()) copies instead of dangling.
  const VarList& vars() const& { return vars_; }
  VarList vars() const&& { return vars_; }
  const TermMap& terms() const& { return terms_; }
  TermMap terms() const&& { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }

  Rational coeff(const Monomial& m) const;
  Rational constant_term() const;
  // Total degree; nullopt for the zero polynomial.
  std::optional<int> total_degree() const;
  // Minimum total degree over terms; nullopt (infinite) for zero.
  std::optional<int> order_at_origin() const;
  // Max exponent of one variable; 0 if the variable does not occur.
  int degree_in(std::size_t var_index) const;
  bool depends_on(std::size_t var_index) const;
  // Min exponent of the variable across all terms (0 for the zero polynomial).
  int min_exponent(std::size_t var_index) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(int k) const;

  Polynomial differentiate(std::size_t var_index) const;

  // Simultaneous substitution: images[i] replaces variable i; all images must
  // share one target variable list, which becomes the result's list.
  Polynomial substitute(const std::vector<Polynomial>& images) const;

  // Coefficient of var^k viewed as a polynomial in `var` (result does not
  // depend on `var`; same variable list).
  Polynomial coefficient_of_power(std::size_t var_index, int k) const;

  // Exact division by var^k; throws std::domain_error if any term has a
  // smaller exponent.
  Polynomial divide_by_variable_power(std::size_t var_index, int k) const;

  // Set one variable to zero and drop it from the ring.
  Polynomial restrict_zero(std::size_t var_index) const;

  // Same exponents, new names (size must match).
  Polynomial with_vars(VarList vars) const;

  std::size_t var_index(const std::string& name) const;  // throws if absent

  // Leading monomial under an external comparator (largest term). The
  // comparator receives (a, b) and returns true when a is ranked above b.
  template <class Greater>
  const std::pair<const Monomial, Rational>* leading_term(Greater&& gt) const {
    const std::pair<const Monomial, Rational>* best = nullptr;
    for (const auto& t : terms_)
      if (!best || gt(t.first, best->first)) best = &t;
    return best;
  }

  std::string to_string() const;

  bool operator==(const Polynomial& o) const {
    return vars_ == o.vars_ && terms_ == o.terms_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

 private:
  VarList vars_;
  TermMap terms_;

  void add_term(const Monomial& m, const Rational& c);
  void check_same_ring(const Polynomial& o) const;
};

// Identity substitution images for a ring (used as a base when building maps).
std::vector<Polynomial> identity_images(const VarList& vars);

}  // namespace resk
