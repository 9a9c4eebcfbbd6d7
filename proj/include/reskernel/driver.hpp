#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reskernel/chart.hpp"
#include "reskernel/contact.hpp"
#include "reskernel/order_calculus.hpp"

namespace resk {

// Thrown when a run would need more blow-ups than the step budget allows.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DriverOptions {
  // Maximum number of blow-up events in one run. Termination is enforced by
  // this budget; hitting it is reported, never silent.
  int budget = 64;
  GroebnerOptions gb;
  // Test hook: return false to forbid a variable as the contact hypersurface
  // in the given chart (used to exercise independence of the contact choice).
  std::function<bool(const Chart&, const std::string&)> allow_contact;
};

enum class NodeStatus { Internal, Done, Failed };

// How a chart's tracked ideal arose from its parent at birth. The ideals are
// expressed in the chart's birth ring (before any in-chart changes).
struct BlowUpEdge {
  Center center;     // the center blown up in the parent
  int mark = 0;      // the order being reduced at the parent
  Ideal total;       // pullback of the parent's tracked ideal
  Ideal controlled;  // total / (new exceptional variable)^mark, generator-wise
};

struct TreeNode {
  std::size_t index = 0;
  std::optional<std::size_t> parent;
  int stage = 0;  // blow-up event that created this chart; 0 for the root
  Chart chart;    // final presentation, after any in-chart coordinate changes
  // Tracked ideal in the final presentation: the composed total transform for
  // principalization, the composed controlled transform for order reduction.
  Ideal state;
  Monomial monomial;         // exceptional monomial factor split off the state
  Ideal residual;            // state = monomial * residual
  Ideal localized_residual;  // residual saturated by the chart's inverted units
  std::optional<int> residual_order;  // its maximal order, when computed
  int mark = 0;  // order being reduced when a center was chosen here
  NodeStatus status = NodeStatus::Internal;
  std::optional<Center> center;  // center blown up at this node
  std::vector<std::size_t> children;
  std::optional<BlowUpEdge> edge;
  // Substitution images tracing the parent's final ring into this node's
  // birth ring, and one image set per in-chart coordinate change applied
  // afterwards. Together they transport any ideal along the tree.
  std::vector<Polynomial> birth_images;
  std::vector<std::vector<Polynomial>> change_images;
  std::string note;  // failure reason, or the unit-convention remark
};

struct BlowUpTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root; parents precede children
  int blow_up_count = 0;        // number of blow-up events performed
};

enum class Outcome { Principalized, EmbeddedResolution, Failed };
enum class FailureKind { None, BudgetExhausted, NoAlgebraicContact, InadmissibleCenter, ResourceCap };

struct ResolutionResult {
  BlowUpTree tree;
  Outcome outcome = Outcome::Failed;
  FailureKind failure_kind = FailureKind::None;
  std::string failure;               // human-readable reason when failed
  std::optional<int> embedded_stage; // set when an embedded resolution was detected
};

// Reduces the order of the marked ideal below its mark everywhere: blows up
// admissible centers, transporting the state by controlled transforms, until
// every leaf's localized state has maximal order < mark. Throws
// BudgetExhausted, NoAlgebraicContact, or InadmissibleCenter on failure.
BlowUpTree order_reduce(const MarkedIdeal& marked, const Chart& chart,
                        const DriverOptions& opt = {});

// Principalizes the ideal: repeatedly splits off the exceptional monomial
// factor and reduces the order of the residual, transporting the state by
// total transforms, until on every leaf the residual is the unit ideal (possibly
// after localizing away translated-off divisors). Failures are captured in
// the result rather than thrown.
ResolutionResult principalize(const Ideal& ideal, const Chart& chart,
                              const DriverOptions& opt = {});

// Earliest blow-up stage whose center contains the strict transform of the
// given hypersurface ideal in that chart; nullopt when no stage does.
std::optional<int> detect_embedded_resolution(const ResolutionResult& result,
                                              const Ideal& x_ideal,
                                              const GroebnerOptions& opt = {});

// True iff the hypersurface f = 0 is smooth: f together with all its partial
// derivatives generates the unit ideal.
bool is_smooth_hypersurface(const Polynomial& f, const GroebnerOptions& opt = {});

}  // namespace resk
