#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "reskernel/chart.hpp"
#include "reskernel/order_calculus.hpp"

namespace resk {

// Thrown when no generator of the order-drop locus ideal has the affine-linear
// shape c*x_j + (terms free of x_j) required to carve out a smooth hypersurface
// by a coordinate straightening.
class NoAlgebraicContact : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A hypersurface of maximal contact, presented by an order-one element h of
// the locus ideal together with the data needed to straighten it into a
// coordinate: h = lead_coefficient * hypersurface_var + tail, where tail does
// not involve hypersurface_var.  When tail is zero the hypersurface already is
// the coordinate hyperplane and no straightening is needed.
struct ContactDatum {
  Polynomial h;
  std::string hypersurface_var;
  Rational lead_coefficient;
  Polynomial tail;
  bool needs_straightening = false;
};

// Predicate consulted during the contact scan: return false to veto choosing
// `var_index` (whose candidate element is `h`).  Used by the resolution driver
// to refuse straightenings that would wreck normal crossings bookkeeping.
using ContactFilter = std::function<bool(std::size_t var_index, const Polynomial& h)>;

// Scans the reduced Groebner basis of t_ideal(marked) from the largest leading
// monomial downward, and within each element the variables in ring order, for
// the first admissible shape c*x_j + tail with c a nonzero scalar and tail
// free of x_j.  Returns nullopt when no candidate passes.
std::optional<ContactDatum> scan_maximal_contact(const MarkedIdeal& marked,
                                                 const ContactFilter& filter,
                                                 const GroebnerOptions& opt = {});

// As scan_maximal_contact with no veto; throws NoAlgebraicContact when the
// locus ideal has no generator of the required shape.
ContactDatum find_maximal_contact(const MarkedIdeal& marked, const GroebnerOptions& opt = {});

// Builds the coordinate change that renames hypersurface_var to `fresh` and
// absorbs the tail, so that h becomes (a scalar times) the new coordinate:
// the replaced variable maps to fresh - tail / lead_coefficient.
SubstitutionRecord make_straightening(const ContactDatum& datum, const VarList& ring,
                                      const std::string& fresh);

// Recentering substitution killing the subleading coefficient: for f monic of
// degree a in variable v, returns the simultaneous substitution images of the
// ring map v -> v - coeff(f, v^(a-1)) / a (identity on the other variables).
// Throws std::invalid_argument unless f is monic of degree exactly a in v.
std::vector<Polynomial> tschirnhaus(const Polynomial& f, std::size_t v, int a);

// Sets the named variable to zero in every generator and removes it from the
// ring, yielding the restriction of the ideal to the coordinate hypersurface.
Ideal restrict_to_hypersurface(const Ideal& ideal, const std::string& var);

// The coefficient ideal of a marked ideal (I, a): the sum over i = 0..a-1 of
// (D^{<=i} I)^(a!/(a-i)), carrying the mark a!.  Restricting it to a maximal
// contact hypersurface captures everything of I not already visible there.
// The mark must satisfy 1 <= a <= 8 so that a! stays within desk scale.
MarkedIdeal coefficient_ideal(const MarkedIdeal& marked, const GroebnerOptions& opt = {});

// The order-a homogenized companion ideal: sum over i = 0..a of
// D^{<=i}(I) * T^i with T = t_ideal(marked).  Contains I, has the same
// order-a locus, and behaves equivariantly under contact choices.
Ideal homogenization(const MarkedIdeal& marked, const GroebnerOptions& opt = {});

}  // namespace resk
