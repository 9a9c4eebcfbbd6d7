#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "reskernel/rational.hpp"

namespace resk {

// Lattice vector in N = Z^d. All fan arithmetic is arbitrary-precision.
using RayVector = std::vector<Int>;

// Thrown for violated cone/fan preconditions (dependent rays where a
// simplicial cone is required, a subdivision ray outside the support, a
// non-2D fan handed to the 2D resolver, ...).
class FanError : public std::runtime_error {
 public:
  explicit FanError(const std::string& what) : std::runtime_error(what) {}
};

// Divide by the gcd of the entries (sign preserved); throws FanError on the
// zero vector, which generates no ray.
RayVector primitive(RayVector v);

// A strongly convex rational polyhedral cone, presented by the primitive
// generators of its edges. Only simplicial presentations are accepted: the
// rays must be linearly independent, which makes strong convexity and
// pairwise non-parallelism automatic. The empty ray list is the origin cone.
struct Cone {
  std::vector<RayVector> rays;  // primitive, sorted, linearly independent
};

// Validates and canonicalizes: normalizes every ray to its primitive vector,
// deduplicates, sorts, and checks linear independence against `dimension`.
Cone make_cone(int dimension, std::vector<RayVector> rays);

// A fan: a set of cones closed under taking faces, meeting along common
// faces. Cones are kept in a canonical order (ray count, then lexicographic)
// so equal fans compare equal structurally.
struct Fan {
  int dimension = 0;
  std::vector<Cone> cones;  // every face present, canonical order

  bool operator==(const Fan& o) const;
};

// Builds the face closure of the given cones, deduplicates, and verifies the
// fan axioms. Interior overlap of distinct cones is detected exactly in
// dimension 2; in higher dimensions only the combinatorial conditions are
// checked (simplicial building blocks, per the module contract).
Fan make_fan(int dimension, const std::vector<Cone>& cones);

// Membership of a lattice point in a (simplicial) cone: the unique rational
// combination over the rays exists and has nonnegative coordinates.
bool cone_contains(const Cone& c, const RayVector& v);

// True iff the rays extend to a basis of the lattice: every invariant factor
// of the ray matrix is 1. The origin cone is smooth.
bool cone_is_smooth(const Cone& c);

// Index of the lattice spanned by the rays inside its saturation: the product
// of the invariant factors of the ray matrix. 1 iff the cone is smooth; for a
// full-dimensional simplicial cone this is |det|. The origin cone has
// multiplicity 1.
Int multiplicity(const Cone& c);

// Stellar subdivision at a ray inside the support: every cone containing the
// ray is replaced by the joins of the ray with the cone's faces that do not
// contain it; all other cones are kept. Subdividing at an existing ray
// returns the fan unchanged. Throws FanError when the ray misses the support.
Fan stellar_subdivide(const Fan& fan, const RayVector& ray);

// True iff every cone of the fan is smooth.
bool is_regular_fan(const Fan& fan);

// Minimal resolution of a 2D fan: inserts, into each singular cone, the rays
// of the continued-fraction chain between its two edges, so that consecutive
// rays always span a lattice basis. The result refines the input, is regular,
// and is minimal among such refinements. Throws FanError unless dimension is 2.
Fan resolve_fan_2d(const Fan& fan);

// Text format: first line "dim d"; then one maximal cone per line, rays
// separated by ';', ray entries separated by ','. Blank lines are skipped.
//   dim 2
//   1,0;1,2
Fan parse_fan(const std::string& text);
std::string fan_to_string(const Fan& fan);

}  // namespace resk
