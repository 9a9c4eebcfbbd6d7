#include "reskernel/driver.hpp"

#include <algorithm>
#include <utility>

namespace resk {

namespace {

// Beyond this mark the factorial-weighted coefficient ideal is out of desk
// scale; the chooser then tests for the pure-power case directly and
// otherwise falls back to the coordinate-subset search.
constexpr int kCoefficientDescentMaxMark = 3;

// In-chart coordinate changes per node before the driver gives up; each
// translation removes a divisor record and each straightening is followed by
// a bare-coordinate step, so real runs stay far below this.
constexpr int kChangeCap = 16;

bool is_exceptional_name(const std::vector<std::pair<std::string, int>>& exceptional,
                         const std::string& name) {
  for (const auto& entry : exceptional)
    if (entry.first == name) return true;
  return false;
}

std::vector<std::pair<std::string, int>> exceptional_in_ring(
    const std::vector<std::pair<std::string, int>>& exceptional, const VarList& ring) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& entry : exceptional)
    if (std::find(ring.begin(), ring.end(), entry.first) != ring.end()) out.push_back(entry);
  return out;
}

std::vector<std::string> exceptional_names(
    const std::vector<std::pair<std::string, int>>& exceptional) {
  std::vector<std::string> out;
  for (const auto& entry : exceptional) out.push_back(entry.first);
  return out;
}

Ideal saturate_by_units(const Ideal& ideal, const std::vector<Polynomial>& units,
                        const GroebnerOptions& opt) {
  if (units.empty()) return ideal;
  return saturate(ideal, units, opt);
}

// Membership in the coordinate ideal spanned by the given variable positions:
// every term must be divisible by one of them. Exact for coordinate ideals.
bool in_coordinate_ideal(const Polynomial& p, const std::vector<std::size_t>& positions) {
  for (const auto& term : p.terms()) {
    bool covered = false;
    for (std::size_t j : positions)
      if (term.first.e[j] > 0) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

Ideal substitute_ideal(const Ideal& ideal, const std::vector<Polynomial>& images,
                       const VarList& target) {
  std::vector<Polynomial> gens;
  for (const Polynomial& g : ideal.generators()) gens.push_back(g.substitute(images));
  return Ideal(target, std::move(gens));
}

// ---------------------------------------------------------------------------
// Center selection.
//
// The chooser works on the localized residual at the current mark. It scans
// the order locus for a variable realizing maximal contact; an exceptional
// variable may only be chosen when the change is a genuine translation
// (nonzero constant displacement), since anything else would curve the
// divisor out of coordinate form. A bare coordinate contact descends to the
// hypersurface section of the coefficient ideal, one dimension down; when no
// contact is available the smallest coordinate subspace containing the order
// locus is used. The result is either a center to blow up or an in-chart
// coordinate change to apply first.
// ---------------------------------------------------------------------------

struct ChooserOutcome {
  enum class Kind { Center, Change } kind = Kind::Center;
  std::vector<std::string> center_vars;
  SubstitutionRecord record;
  bool drop_divisor = false;
};

struct Chooser {
  const Chart& chart;
  const DriverOptions& opt;

  // First size-k subset of variable positions (earliest first) whose
  // coordinate ideal contains every basis element; appended to `acc`.
  bool find_covering_subset(const std::vector<Polynomial>& basis, std::size_t n, std::size_t k,
                            std::size_t start, std::vector<std::size_t>& acc) const {
    if (acc.size() == k) {
      for (const Polynomial& g : basis)
        if (!in_coordinate_ideal(g, acc)) return false;
      return true;
    }
    for (std::size_t j = start; j < n; ++j) {
      acc.push_back(j);
      if (find_covering_subset(basis, n, k, j + 1, acc)) return true;
      acc.pop_back();
    }
    return false;
  }

  // Doneness with re-embedding delegation, applied by the principalization
  // loop once the direct unit checks on the ambient residual fail. A residual
  // of maximal order one that contains a bare, non-exceptional coordinate is
  // the transform of an ideal re-embedded with that coordinate as an extra
  // generator; it is finished exactly when its hypersurface section — with
  // the section's own monomial factor stripped and the local units restricted
  // — is finished. This makes a run on I + (z) stop in exactly the charts
  // where the run on I does.
  bool resolved(const Ideal& localized,
                const std::vector<std::pair<std::string, int>>& exceptional,
                const std::vector<Polynomial>& units) const {
    if (localized.is_unit_ideal(opt.gb)) return true;
    const VarList& ring = localized.vars();
    auto exc = exceptional_in_ring(exceptional, ring);
    if (!exc.empty()) {
      bool off_divisors = true;
      for (const auto& entry : exc) {
        Ideal along =
            ideal_sum(localized, Ideal(ring, {Polynomial::variable(ring, entry.first)}));
        if (!saturate_by_units(along, units, opt.gb).is_unit_ideal(opt.gb)) {
          off_divisors = false;
          break;
        }
      }
      if (off_divisors) return true;
    }

    std::optional<int> ord = max_order(localized, opt.gb);
    if (!ord || *ord != 1) return false;

    MarkedIdeal marked;
    marked.ideal = localized;
    marked.mark = 1;
    marked.exceptional = exc;
    ContactFilter bare_only = [&](std::size_t j, const Polynomial& h) {
      const std::string& name = ring[j];
      if (opt.allow_contact && !opt.allow_contact(chart, name)) return false;
      if (is_exceptional_name(exc, name)) return false;
      return h == Polynomial::variable(ring, j);
    };
    std::optional<ContactDatum> datum = scan_maximal_contact(marked, bare_only, opt.gb);
    if (!datum) return false;

    Ideal section = restrict_to_hypersurface(localized, datum->hypersurface_var);
    // A zero section means the residual is the coordinate itself, which still
    // has its own blow-up to perform.
    if (section.is_zero_ideal(opt.gb)) return false;
    Ideal stripped = monomial_part(section, exceptional_names(exc)).second;
    std::size_t pos = static_cast<std::size_t>(
        std::find(ring.begin(), ring.end(), datum->hypersurface_var) - ring.begin());
    std::vector<Polynomial> section_units;
    for (const Polynomial& u : units) {
      Polynomial r = u.restrict_zero(pos);
      if (!r.is_constant()) section_units.push_back(r);
    }
    return resolved(saturate_by_units(stripped, section_units, opt.gb),
                    exceptional_in_ring(exc, stripped.vars()), section_units);
  }

  ChooserOutcome choose(const Ideal& ideal, int mark,
                        const std::vector<std::pair<std::string, int>>& exceptional,
                        const std::vector<Polynomial>& units, int depth) const {
    // Hypersurface sections of transported ideals can carry an exceptional
    // monomial factor; the selection must see through it. (Top-level callers
    // track the factor as part of the node state instead.) The
    // lower-dimensional problem then starts at its own maximal order whenever
    // that exceeds the inherited mark, exactly as a fresh root would.
    Ideal working = ideal;
    Monomial carried = Monomial::one(ideal.vars().size());
    if (depth > 0) {
      auto split = monomial_part(ideal, exceptional_names(exceptional));
      carried = split.first;
      working = split.second;
      std::optional<int> ord = max_order(working, opt.gb);
      if (ord && *ord > mark) mark = *ord;
    }

    if (depth > 0 && working.is_unit_ideal(opt.gb)) {
      // The section is a pure exceptional monomial, so its order locus at the
      // mark is cut out by divisor variables alone. Take the fewest divisors
      // whose exponents reach the mark, preferring the largest exponents.
      const VarList& section_ring = working.vars();
      std::vector<std::pair<int, std::size_t>> weights;
      for (std::size_t j = 0; j < section_ring.size(); ++j)
        if (carried.e[j] > 0 && is_exceptional_name(exceptional, section_ring[j]))
          weights.emplace_back(carried.e[j], j);
      std::sort(weights.begin(), weights.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      int total = 0;
      ChooserOutcome out;
      out.kind = ChooserOutcome::Kind::Center;
      for (const auto& [weight, j] : weights) {
        total += weight;
        out.center_vars.push_back(section_ring[j]);
        if (total >= mark) return out;
      }
      // The monomial never reaches the mark on the section; fall through to
      // the subset search, which reports the failure.
    }

    MarkedIdeal marked;
    marked.ideal = working;
    marked.mark = mark;
    marked.exceptional = exceptional;

    const VarList& ring = working.vars();

    ContactFilter filter = [&](std::size_t j, const Polynomial& h) {
      const std::string& name = ring[j];
      if (opt.allow_contact && !opt.allow_contact(chart, name)) return false;
      if (is_exceptional_name(exceptional, name)) {
        Polynomial lead = h.coefficient_of_power(j, 1);
        Polynomial tail = h - Polynomial::variable(ring, j).scaled(lead.constant_term());
        if (tail.constant_term() == Rational(0)) return false;
      }
      return true;
    };

    std::optional<ContactDatum> datum = scan_maximal_contact(marked, filter, opt.gb);
    if (datum) {
      const std::string& name = datum->hypersurface_var;
      bool on_divisor = is_exceptional_name(exceptional, name);
      if (on_divisor || datum->needs_straightening) {
        std::string fresh = fresh_name(chart.used_names);
        ChooserOutcome out;
        out.kind = ChooserOutcome::Kind::Change;
        out.record = make_straightening(*datum, chart.variables, fresh);
        out.record.kind = on_divisor ? SubstitutionRecord::Kind::Translation
                                     : SubstitutionRecord::Kind::Straightening;
        out.drop_divisor = on_divisor;
        return out;
      }

      std::size_t pos =
          static_cast<std::size_t>(std::find(ring.begin(), ring.end(), name) - ring.begin());

      if (mark <= kCoefficientDescentMaxMark) {
        MarkedIdeal coeff = coefficient_ideal(marked, opt.gb);
        Ideal section = restrict_to_hypersurface(coeff.ideal, name);
        std::vector<Polynomial> section_units;
        for (const Polynomial& u : units) {
          Polynomial r = u.restrict_zero(pos);
          if (!r.is_constant()) section_units.push_back(r);
        }
        Ideal localized = saturate_by_units(section, section_units, opt.gb);
        if (localized.is_zero_ideal(opt.gb)) {
          ChooserOutcome out;
          out.kind = ChooserOutcome::Kind::Center;
          out.center_vars = {name};
          return out;
        }
        ChooserOutcome inner = choose(localized, coeff.mark,
                                      exceptional_in_ring(exceptional, localized.vars()),
                                      section_units, depth + 1);
        if (inner.kind == ChooserOutcome::Kind::Center) inner.center_vars.push_back(name);
        return inner;
      }

      // Factorial weights beyond this mark are out of desk scale; recognize
      // the pure-power case directly and otherwise use the subset search.
      Ideal pure = ideal_power(Ideal(ring, {Polynomial::variable(ring, pos)}), mark);
      if (equal_ideals(working, pure, opt.gb)) {
        ChooserOutcome out;
        out.kind = ChooserOutcome::Kind::Center;
        out.center_vars = {name};
        return out;
      }
    }

    Ideal locus = t_ideal(marked);
    const std::vector<Polynomial>& basis = locus.groebner_basis(opt.gb);
    std::size_t n = ring.size();
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<std::size_t> acc;
      if (find_covering_subset(basis, n, k, 0, acc)) {
        ChooserOutcome out;
        out.kind = ChooserOutcome::Kind::Center;
        for (std::size_t j : acc) out.center_vars.push_back(ring[j]);
        return out;
      }
    }
    throw NoAlgebraicContact(
        "order locus admits neither a contact hypersurface nor a coordinate center in chart " +
        chart.id);
  }
};

// ---------------------------------------------------------------------------
// The shared driver loop.
// ---------------------------------------------------------------------------

struct Driver {
  enum class Mode { Principalize, OrderReduce };

  Mode mode;
  const DriverOptions& opt;
  int fixed_mark = 0;  // order reduction only
  BlowUpTree tree;

  // Outcome of processing one node: either it finished (Done/Failed) or it
  // blew up a center and pushed children.
  void process(std::size_t u) {
    int changes = 0;
    for (;;) {
      Chart chart = tree.nodes[u].chart;
      Ideal state = tree.nodes[u].state;

      auto split = monomial_part(state, exceptional_names(chart.exceptional));
      Ideal localized_residual = saturate_by_units(split.second, chart.inverted_units, opt.gb);
      tree.nodes[u].monomial = split.first;
      tree.nodes[u].residual = split.second;
      tree.nodes[u].localized_residual = localized_residual;

      int mark = 0;
      Ideal decision_ideal;  // what the chooser and admissibility check see

      if (mode == Mode::Principalize) {
        decision_ideal = localized_residual;
        if (decision_ideal.is_unit_ideal(opt.gb)) {
          tree.nodes[u].status = NodeStatus::Done;
          tree.nodes[u].note = "residual is the unit ideal";
          tree.nodes[u].residual_order = 0;
          return;
        }
        std::optional<int> ord = max_order(decision_ideal, opt.gb);
        tree.nodes[u].residual_order = ord;
        if (!chart.exceptional.empty()) {
          bool off_divisors = true;
          for (const auto& entry : chart.exceptional) {
            Ideal with_divisor = ideal_sum(
                decision_ideal,
                Ideal(chart.variables, {Polynomial::variable(chart.variables, entry.first)}));
            if (!saturate_by_units(with_divisor, chart.inverted_units, opt.gb)
                     .is_unit_ideal(opt.gb)) {
              off_divisors = false;
              break;
            }
          }
          if (off_divisors) {
            tree.nodes[u].status = NodeStatus::Done;
            bool convention = false;
            for (const Polynomial& g : decision_ideal.groebner_basis(opt.gb))
              if (g.constant_term() != Rational(0)) convention = true;
            tree.nodes[u].note =
                convention ? "residual is a unit along the exceptional locus "
                             "(nonzero constant term)"
                           : "residual vanishes nowhere on the exceptional locus";
            return;
          }
        }
        if (!ord) throw std::logic_error("residual of a nonzero ideal has infinite order");
        if (*ord == 1) {
          Chooser probe{chart, opt};
          if (probe.resolved(decision_ideal, chart.exceptional, chart.inverted_units)) {
            tree.nodes[u].status = NodeStatus::Done;
            tree.nodes[u].note = "residual resolves on its contact hypersurface section";
            return;
          }
        }
        mark = *ord;
      } else {
        Ideal localized_state = saturate_by_units(state, chart.inverted_units, opt.gb);
        std::optional<int> ord = max_order(localized_state, opt.gb);
        tree.nodes[u].residual_order = ord;
        if (!ord) throw std::logic_error("controlled transform of a nonzero ideal is zero");
        if (*ord < fixed_mark) {
          tree.nodes[u].status = NodeStatus::Done;
          tree.nodes[u].note = "maximal order reduced below the mark";
          return;
        }
        if (*ord > fixed_mark)
          throw std::logic_error("controlled transform exceeded the mark being reduced");
        mark = fixed_mark;
        decision_ideal = localized_state;
      }

      Chooser chooser{chart, opt};
      ChooserOutcome choice =
          chooser.choose(decision_ideal, mark, chart.exceptional, chart.inverted_units, 0);

      if (choice.kind == ChooserOutcome::Kind::Change) {
        if (++changes > kChangeCap)
          throw std::logic_error("in-chart coordinate changes did not stabilize");
        ChangeResult changed = apply_coordinate_change(chart, choice.record, choice.drop_divisor);
        if (choice.drop_divisor) changed.chart.inverted_units.push_back(choice.record.image);
        tree.nodes[u].state = substitute_ideal(state, changed.images, changed.chart.variables);
        tree.nodes[u].chart = changed.chart;
        tree.nodes[u].change_images.push_back(changed.images);
        continue;
      }

      // The chooser's descent builds the center innermost-first; present it in
      // ring order so chart enumeration is deterministic.
      const VarList& ring_order = chart.variables;
      std::sort(choice.center_vars.begin(), choice.center_vars.end(),
                [&ring_order](const std::string& a, const std::string& b) {
                  return std::find(ring_order.begin(), ring_order.end(), a) <
                         std::find(ring_order.begin(), ring_order.end(), b);
                });
      Center center{choice.center_vars};
      MarkedIdeal decision;
      decision.ideal = decision_ideal;
      decision.mark = mark;
      decision.exceptional = chart.exceptional;
      if (!is_admissible_center(decision, center, opt.gb)) {
        std::string what = "center {";
        for (std::size_t i = 0; i < center.vars.size(); ++i)
          what += (i ? ", " : "") + center.vars[i];
        what += "} is not contained in the order-" + std::to_string(mark) +
                " locus in chart " + chart.id;
        throw InadmissibleCenter(what);
      }
      if (tree.blow_up_count >= opt.budget)
        throw BudgetExhausted("step budget (" + std::to_string(opt.budget) +
                              " blow-ups) exhausted in chart " + chart.id);

      ++tree.blow_up_count;
      int stage = tree.blow_up_count;
      tree.nodes[u].center = center;
      tree.nodes[u].mark = mark;

      std::vector<Chart> kids = blow_up_charts(chart, center);
      for (Chart& kid : kids) {
        BlowUpEdge edge;
        edge.center = center;
        edge.mark = mark;
        edge.total = total_transform(state, chart, kid);
        MarkedIdeal for_control;
        for_control.ideal = state;
        for_control.mark = mark;
        for_control.exceptional = chart.exceptional;
        edge.controlled = controlled_transform(for_control, chart, kid);

        TreeNode child;
        child.index = tree.nodes.size();
        child.parent = u;
        child.stage = stage;
        child.birth_images = substitution_images(chart, kid);
        child.state = mode == Mode::Principalize ? edge.total : edge.controlled;
        // Birth presentation of the derived fields, so a node left unprocessed
        // (budget stop, failure elsewhere) still carries coherent data.
        child.monomial = Monomial::one(kid.variables.size());
        child.residual = child.state;
        child.localized_residual = saturate_by_units(child.state, kid.inverted_units, opt.gb);
        child.edge = std::move(edge);
        child.chart = std::move(kid);
        tree.nodes[u].children.push_back(child.index);
        tree.nodes.push_back(std::move(child));
      }
      return;
    }
  }
};

}  // namespace

BlowUpTree order_reduce(const MarkedIdeal& marked, const Chart& chart, const DriverOptions& opt) {
  if (marked.ideal.is_zero_ideal())
    throw std::invalid_argument("order_reduce: the zero ideal has infinite order");
  if (marked.mark < 1) throw std::invalid_argument("order_reduce: mark must be positive");
  if (marked.ideal.vars() != chart.variables)
    throw std::invalid_argument("order_reduce: ideal ring does not match the chart");
  std::optional<int> ord = max_order(marked.ideal, opt.gb);
  if (ord && *ord > marked.mark)
    throw std::invalid_argument("order_reduce: maximal order exceeds the mark");

  Driver driver{Driver::Mode::OrderReduce, opt, marked.mark, {}};
  TreeNode root;
  root.chart = chart;
  root.state = marked.ideal;
  root.monomial = Monomial::one(chart.variables.size());
  root.residual = root.state;
  root.localized_residual = saturate_by_units(root.state, chart.inverted_units, opt.gb);
  driver.tree.nodes.push_back(std::move(root));

  std::vector<std::size_t> work{0};
  while (!work.empty()) {
    std::size_t u = work.back();
    work.pop_back();
    driver.process(u);
    const TreeNode& node = driver.tree.nodes[u];
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) work.push_back(*it);
  }
  return std::move(driver.tree);
}

ResolutionResult principalize(const Ideal& ideal, const Chart& chart, const DriverOptions& opt) {
  if (ideal.is_zero_ideal())
    throw std::invalid_argument("principalize: input ideal must be nonzero");
  if (ideal.vars() != chart.variables)
    throw std::invalid_argument("principalize: ideal ring does not match the chart");

  Driver driver{Driver::Mode::Principalize, opt, 0, {}};
  TreeNode root;
  root.chart = chart;
  root.state = ideal;
  root.monomial = Monomial::one(chart.variables.size());
  root.residual = root.state;
  root.localized_residual = saturate_by_units(root.state, chart.inverted_units, opt.gb);
  driver.tree.nodes.push_back(std::move(root));

  ResolutionResult result;
  std::vector<std::size_t> work{0};
  while (!work.empty()) {
    std::size_t u = work.back();
    work.pop_back();
    try {
      driver.process(u);
    } catch (const BudgetExhausted& e) {
      result.failure_kind = FailureKind::BudgetExhausted;
      result.failure = e.what();
    } catch (const NoAlgebraicContact& e) {
      result.failure_kind = FailureKind::NoAlgebraicContact;
      result.failure = e.what();
    } catch (const InadmissibleCenter& e) {
      result.failure_kind = FailureKind::InadmissibleCenter;
      result.failure = e.what();
    } catch (const ResourceCapExceeded& e) {
      result.failure_kind = FailureKind::ResourceCap;
      result.failure = e.what();
    }
    if (result.failure_kind != FailureKind::None) {
      driver.tree.nodes[u].status = NodeStatus::Failed;
      driver.tree.nodes[u].note = result.failure;
      break;
    }
    const TreeNode& node = driver.tree.nodes[u];
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) work.push_back(*it);
  }

  result.tree = std::move(driver.tree);
  result.outcome =
      result.failure_kind == FailureKind::None ? Outcome::Principalized : Outcome::Failed;
  return result;
}

std::optional<int> detect_embedded_resolution(const ResolutionResult& result,
                                              const Ideal& x_ideal, const GroebnerOptions& opt) {
  const BlowUpTree& tree = result.tree;
  if (tree.nodes.empty()) return std::nullopt;

  // Transport the hypersurface ideal by iterated strict transforms into every
  // node's final presentation (parents precede children in the node list).
  std::vector<Ideal> transported(tree.nodes.size());
  for (std::size_t u = 0; u < tree.nodes.size(); ++u) {
    const TreeNode& node = tree.nodes[u];
    Ideal current;
    if (!node.parent) {
      current = x_ideal;
    } else {
      const Ideal& above = transported[*node.parent];
      // Total transform into the birth ring, then remove the exceptional
      // component.
      VarList birth_ring = node.birth_images.empty() ? node.chart.variables
                                                     : node.birth_images.front().vars();
      current = substitute_ideal(above, node.birth_images, birth_ring);
      current = saturate(current, Polynomial::variable(birth_ring, node.chart.birth_variable),
                         opt);
    }
    for (const std::vector<Polynomial>& images : node.change_images) {
      VarList target = images.empty() ? current.vars() : images.front().vars();
      current = substitute_ideal(current, images, target);
    }
    transported[u] = std::move(current);
  }

  // Visit blow-up events in stage order; report the first whose center
  // contains the transported hypersurface as a subvariety, i.e. every center
  // variable is a member of the strict transform's ideal (containment is
  // checked one way only).
  std::vector<std::pair<int, std::size_t>> events;
  for (std::size_t u = 0; u < tree.nodes.size(); ++u) {
    const TreeNode& node = tree.nodes[u];
    if (node.center && !node.children.empty())
      events.emplace_back(tree.nodes[node.children.front()].stage, u);
  }
  std::sort(events.begin(), events.end());
  for (const auto& event : events) {
    const TreeNode& node = tree.nodes[event.second];
    const Ideal& x_here = transported[event.second];
    if (x_here.generators().empty()) continue;
    // Unit ideal: the transform misses this patch entirely, so the (nonempty)
    // center cannot lie on it.
    if (x_here.is_unit_ideal(opt)) continue;
    bool contained = true;
    for (const std::string& v : node.center->vars)
      if (!x_here.contains(Polynomial::variable(node.chart.variables, v), opt)) {
        contained = false;
        break;
      }
    if (contained) return event.first;
  }
  return std::nullopt;
}

bool is_smooth_hypersurface(const Polynomial& f, const GroebnerOptions& opt) {
  if (f.is_zero()) throw std::invalid_argument("is_smooth_hypersurface: zero polynomial");
  Ideal jacobian = derivative_ideal(Ideal(f.vars(), {f}), 1);
  return jacobian.is_unit_ideal(opt);
}

}  // namespace resk
