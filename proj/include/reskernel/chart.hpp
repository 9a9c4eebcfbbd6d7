#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "reskernel/order_calculus.hpp"

namespace resk {

// Thrown when a controlled transform is requested for a center the marked
// ideal does not actually vanish on to full order (division by the required
// exceptional power is inexact).
class InadmissibleCenter : public std::runtime_error {
 public:
  explicit InadmissibleCenter(const std::string& what) : std::runtime_error(what) {}
};

// One variable change: `replaced` disappears from the ring, `fresh` takes its
// position, and `image` expresses the old variable in the new ring.
struct SubstitutionRecord {
  enum class Kind { BlowUpSubstitution, Translation, Straightening };
  Kind kind = Kind::BlowUpSubstitution;
  std::string replaced;
  std::string fresh;
  Polynomial image;
};

// A coordinate subspace V(vars) of the current chart.
struct Center {
  std::vector<std::string> vars;
};

// One affine patch in the blow-up tree. Everything needed to interpret an
// ideal here is carried along: the variables, which of them cut out
// exceptional divisors (with the stage that created each), the local units
// that translations have inverted, and the full substitution history.
struct Chart {
  std::string id = "root";
  VarList variables;
  std::vector<std::pair<std::string, int>> exceptional;  // (variable, birth stage)
  std::vector<Polynomial> inverted_units;                // units on this patch
  std::vector<SubstitutionRecord> birth_substitutions;   // parent vars -> this ring
  std::vector<SubstitutionRecord> coordinate_change_log;  // in-chart changes
  Center birth_center;        // center whose blow-up created this chart
  std::string birth_variable;  // the center variable this patch kept
  std::vector<std::string> used_names;  // every name ever live in this lineage
  int depth = 0;
};

Chart make_root_chart(VarList vars);

// First name from the reserved pool (z, w, v, u, t, ... then z1, w1, ...)
// not yet present in `used`.
std::string fresh_name(const std::vector<std::string>& used);

// One patch per center variable x_i: every other center variable x_j is
// replaced by a fresh name n_j with x_j = x_i * n_j, and x_i becomes a new
// exceptional variable. A one-variable center changes no coordinates and only
// marks its variable exceptional.
std::vector<Chart> blow_up_charts(const Chart& chart, const Center& center);

// For each parent variable, its polynomial in the child ring.
std::vector<Polynomial> substitution_images(const Chart& parent, const Chart& child);

// Pullback of the ideal along the blow-up map into the child patch.
Ideal total_transform(const Ideal& ideal, const Chart& parent, const Chart& child);

// Total transform divided by (new exceptional variable)^mark, exactly on
// every generator; inexact division throws InadmissibleCenter.
Ideal controlled_transform(const MarkedIdeal& marked, const Chart& parent, const Chart& child);

// Total transform saturated by the new exceptional variable: the ideal of the
// closure of the preimage away from the center.
Ideal strict_transform(const Ideal& ideal, const Chart& parent, const Chart& child,
                       const GroebnerOptions& opt = {});

// Every generator of the order locus D^{<= mark-1}(I) lies in the ideal
// generated by the center variables, i.e. the center sits inside the locus of
// full order.
bool is_admissible_center(const MarkedIdeal& marked, const Center& center,
                          const GroebnerOptions& opt = {});

// An invertible in-chart change of one variable. The record's image must be
// (fresh) + terms free of (fresh) so the change is a polynomial automorphism.
// The replaced variable may not cut an exceptional divisor unless
// drop_exceptional_status is set (used for translations off the divisor).
struct ChangeResult {
  Chart chart;
  std::vector<Polynomial> images;  // old-chart variable -> polynomial in new ring
};
ChangeResult apply_coordinate_change(const Chart& chart, const SubstitutionRecord& record,
                                     bool drop_exceptional_status = false);

}  // namespace resk
