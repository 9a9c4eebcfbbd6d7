#include "reskernel/trace.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <utility>

#include "reskernel/parser.hpp"

namespace resk {
namespace {

const char* kFormatTag = "reskernel-trace/1";

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Principalized: return "principalized";
    case Outcome::EmbeddedResolution: return "embedded-resolution";
    case Outcome::Failed: return "failed";
  }
  return "failed";
}

std::string failure_name(FailureKind k) {
  switch (k) {
    case FailureKind::None: return "none";
    case FailureKind::BudgetExhausted: return "budget-exhausted";
    case FailureKind::NoAlgebraicContact: return "no-algebraic-contact";
    case FailureKind::InadmissibleCenter: return "inadmissible-center";
    case FailureKind::ResourceCap: return "resource-cap";
  }
  return "none";
}

std::string status_name(NodeStatus s) {
  switch (s) {
    case NodeStatus::Internal: return "internal";
    case NodeStatus::Done: return "done";
    case NodeStatus::Failed: return "failed";
  }
  return "internal";
}

std::string kind_name(SubstitutionRecord::Kind k) {
  switch (k) {
    case SubstitutionRecord::Kind::BlowUpSubstitution: return "blow-up";
    case SubstitutionRecord::Kind::Translation: return "translation";
    case SubstitutionRecord::Kind::Straightening: return "straightening";
  }
  return "blow-up";
}

TraceDocument ideal_strings(const Ideal& ideal) {
  TraceDocument arr = TraceDocument::array();
  for (const Polynomial& g : ideal.generators()) arr.push_back(g.to_string());
  return arr;
}

TraceDocument record_json(const SubstitutionRecord& r) {
  TraceDocument j = TraceDocument::object();
  j["kind"] = kind_name(r.kind);
  j["replaced"] = r.replaced;
  j["fresh"] = r.fresh;
  j["image"] = r.image.to_string();
  return j;
}

// ---------------------------------------------------------------------------
// Verification.
// ---------------------------------------------------------------------------

struct Checker {
  const TraceDocument& doc;
  const GroebnerOptions& opt;
  CheckReport report;

  void problem(const std::string& where, const std::string& what) {
    report.ok = false;
    report.problems.push_back(where + ": " + what);
  }

  // Wrappers that turn schema violations into problems instead of exceptions.
  bool is_string_array(const TraceDocument& j) {
    if (!j.is_array()) return false;
    for (const auto& x : j) {
      if (!x.is_string()) return false;
    }
    return true;
  }

  std::optional<VarList> var_list(const TraceDocument& node, const char* key,
                                  const std::string& where) {
    if (!node.contains(key) || !is_string_array(node[key])) {
      problem(where, std::string("missing or malformed \"") + key + "\"");
      return std::nullopt;
    }
    VarList vars;
    for (const auto& x : node[key]) vars.push_back(x.get<std::string>());
    return vars;
  }

  std::optional<std::vector<Polynomial>> parse_all(const TraceDocument& arr,
                                                   const VarList& ring,
                                                   const std::string& where) {
    if (!is_string_array(arr)) {
      problem(where, "expected an array of polynomial strings");
      return std::nullopt;
    }
    std::vector<Polynomial> out;
    for (const auto& x : arr) {
      try {
        out.push_back(parse_polynomial(x.get<std::string>(), ring));
      } catch (const ParseError& e) {
        problem(where, "unparsable polynomial \"" + x.get<std::string>() + "\": " + e.what());
        return std::nullopt;
      }
    }
    return out;
  }

  void check_node(std::size_t i);
  void run();
};

void Checker::check_node(std::size_t i) {
  const TraceDocument& nodes = doc["nodes"];
  const TraceDocument& n = nodes[i];
  const std::string where = "node " + std::to_string(i);
  if (!n.is_object()) {
    problem(where, "not an object");
    return;
  }
  for (const char* key :
       {"id", "index", "parent", "stage", "birth_variable", "variables", "exceptional",
        "inverted_units", "birth_substitutions", "coordinate_changes", "state", "monomial",
        "residual", "localized_residual", "residual_order", "mark", "status", "center",
        "children", "edge", "note"})
    if (!n.contains(key)) {
      problem(where, std::string("missing field \"") + key + "\"");
      return;
    }
  if (!n["index"].is_number_integer() || n["index"].get<std::size_t>() != i) {
    problem(where, "index does not match its position");
    return;
  }

  auto ring_opt = var_list(n, "variables", where);
  if (!ring_opt) return;
  const VarList& ring = *ring_opt;
  if (std::set<std::string>(ring.begin(), ring.end()).size() != ring.size())
    problem(where, "duplicate chart variables");

  // Parent / child structure.
  bool is_root = n["parent"].is_null();
  if (is_root) {
    if (i != 0) problem(where, "only the first node may be the root");
    if (!n["edge"].is_null()) problem(where, "root must not carry an edge");
    if (n["stage"].get<int>() != 0) problem(where, "root stage must be 0");
  } else {
    std::size_t p = n["parent"].get<std::size_t>();
    if (p >= i) {
      problem(where, "parent must precede the node");
      return;
    }
    bool listed = false;
    for (const auto& c : nodes[p]["children"])
      if (c.get<std::size_t>() == i) listed = true;
    if (!listed) problem(where, "not listed among its parent's children");
    if (n["stage"].get<int>() < 1) problem(where, "blow-up stage must be at least 1");
  }
  for (const auto& c : n["children"]) {
    std::size_t ci = c.get<std::size_t>();
    if (ci <= i || ci >= nodes.size()) {
      problem(where, "child index out of range");
      return;
    }
    if (nodes[ci]["parent"].get<std::size_t>() != i)
      problem(where, "child does not point back to this node");
  }

  // Exceptional bookkeeping and units.
  std::vector<std::pair<std::string, int>> exceptional;
  for (const auto& e : n["exceptional"]) {
    std::string v = e["variable"].get<std::string>();
    int stage = e["stage"].get<int>();
    if (std::find(ring.begin(), ring.end(), v) == ring.end())
      problem(where, "exceptional variable " + v + " is not a chart variable");
    if (stage < 1) problem(where, "exceptional stage must be at least 1");
    exceptional.emplace_back(v, stage);
  }
  auto units = parse_all(n["inverted_units"], ring, where + " inverted_units");

  // The monomial/residual split of the state.
  auto state = parse_all(n["state"], ring, where + " state");
  auto residual = parse_all(n["residual"], ring, where + " residual");
  auto localized = parse_all(n["localized_residual"], ring, where + " localized_residual");
  if (state && residual && localized && units) {
    Polynomial mono;
    try {
      mono = parse_polynomial(n["monomial"].get<std::string>(), ring);
    } catch (const ParseError& e) {
      problem(where, std::string("unparsable monomial: ") + e.what());
      return;
    }
    if (!mono.is_monomial() || mono.terms().begin()->second != Rational(1))
      problem(where, "monomial field is not a monic monomial");
    else {
      const Monomial& m = mono.terms().begin()->first;
      for (std::size_t j = 0; j < ring.size(); ++j) {
        bool exc = false;
        for (const auto& [v, stage] : exceptional) exc |= (v == ring[j]);
        if (m.e[j] > 0 && !exc)
          problem(where, "monomial factor uses non-exceptional variable " + ring[j]);
      }
    }
    if (state->size() != residual->size())
      problem(where, "state and residual have different generator counts");
    else
      for (std::size_t j = 0; j < state->size(); ++j)
        if ((*state)[j] != mono * (*residual)[j])
          problem(where, "state generator " + std::to_string(j) +
                             " is not monomial * residual");
    Ideal res_ideal(ring, *residual);
    Ideal loc_ideal(ring, *localized);
    try {
      if (!equal_ideals(saturate(res_ideal, *units, opt), loc_ideal, opt))
        problem(where, "localized residual is not the residual with units inverted");
      if (n["residual_order"].is_null()) {
        // Legal without an order: a chart the run never reached (left internal
        // with no center after a failure elsewhere), or the failing chart of a
        // resource-capped run. Everywhere else the order must be recorded.
        bool unreached =
            n["status"] == "internal" && n["center"].is_null() && n["children"].empty();
        if (!unreached && n["status"] != "failed" && max_order(loc_ideal, opt))
          problem(where, "residual order missing on a processed chart");
      } else if (max_order(loc_ideal, opt) !=
                 std::optional<int>(n["residual_order"].get<int>())) {
        problem(where, "residual order does not match the localized residual");
      }
    } catch (const ResourceCapExceeded& e) {
      problem(where, std::string("resource cap while re-verifying: ") + e.what());
    }

    // Admissibility of the blown-up center against the recomputed order locus.
    if (!n["center"].is_null()) {
      auto center_vars = var_list(n, "center", where + " center");
      if (center_vars) {
        for (const auto& v : *center_vars)
          if (std::find(ring.begin(), ring.end(), v) == ring.end())
            problem(where, "center variable " + v + " is not a chart variable");
        int mark = n["mark"].get<int>();
        if (mark < 1) problem(where, "a blown-up center needs a positive mark");
        MarkedIdeal marked{loc_ideal, std::max(mark, 1), exceptional};
        try {
          if (!is_admissible_center(marked, Center{*center_vars}, opt))
            problem(where, "center is not contained in the order-" + std::to_string(mark) +
                               " locus of the localized residual");
        } catch (const ResourceCapExceeded& e) {
          problem(where, std::string("resource cap while re-verifying: ") + e.what());
        }
      }
      if (n["children"].empty())
        problem(where, "a blown-up center must have child charts");
    } else if (!n["children"].empty()) {
      problem(where, "children without a recorded center");
    }
  }

  // Edge identities: the birth of this chart from its parent.
  if (!is_root && n["edge"].is_object()) {
    const TraceDocument& edge = n["edge"];
    const std::string ewhere = where + " edge";
    for (const char* key : {"variables", "center", "mark", "total", "controlled"})
      if (!edge.contains(key)) {
        problem(ewhere, std::string("missing field \"") + key + "\"");
        return;
      }
    auto birth_ring = var_list(edge, "variables", ewhere);
    if (!birth_ring) return;
    auto total = parse_all(edge["total"], *birth_ring, ewhere + " total");
    auto controlled = parse_all(edge["controlled"], *birth_ring, ewhere + " controlled");
    std::size_t p = n["parent"].get<std::size_t>();
    const TraceDocument& parent = nodes[p];

    if (edge["center"] != parent["center"])
      problem(ewhere, "center differs from the parent's recorded center");
    if (edge["mark"] != parent["mark"])
      problem(ewhere, "mark differs from the parent's recorded mark");
    std::string kept = n["birth_variable"].get<std::string>();
    bool kept_in_center = false;
    if (parent["center"].is_array())
      for (const auto& v : parent["center"])
        kept_in_center |= (v.get<std::string>() == kept);
    if (!kept_in_center)
      problem(where, "birth variable " + kept + " is not a variable of the parent's center");

    if (total && controlled) {
      // total = e^mark * controlled, generator by generator.
      if (std::find(birth_ring->begin(), birth_ring->end(), kept) == birth_ring->end()) {
        problem(ewhere, "birth variable missing from the birth ring");
        return;
      }
      Polynomial e = Polynomial::variable(*birth_ring, kept);
      int mark = edge["mark"].is_number_integer() ? edge["mark"].get<int>() : 0;
      if (total->size() != controlled->size())
        problem(ewhere, "total and controlled have different generator counts");
      else
        for (std::size_t j = 0; j < total->size(); ++j)
          if ((*total)[j] != e.pow(mark) * (*controlled)[j])
            problem(ewhere, "generator " + std::to_string(j) +
                                " violates total = exceptional^mark * controlled");

      // Replay the birth substitution on the parent's state.
      auto parent_ring = var_list(parent, "variables", "node " + std::to_string(p));
      auto parent_state =
          parse_all(parent["state"], parent_ring ? *parent_ring : VarList{}, ewhere);
      if (parent_ring && parent_state) {
        std::vector<Polynomial> images;
        bool images_ok = true;
        for (const std::string& v : *parent_ring) {
          std::string target = v;
          const TraceDocument* found = nullptr;
          for (const auto& r : n["birth_substitutions"])
            if (r["replaced"].get<std::string>() == v) found = &r;
          if (found) {
            try {
              images.push_back(
                  parse_polynomial((*found)["image"].get<std::string>(), *birth_ring));
              continue;
            } catch (const ParseError& ex) {
              problem(ewhere, std::string("unparsable substitution image: ") + ex.what());
              images_ok = false;
              break;
            }
          }
          if (std::find(birth_ring->begin(), birth_ring->end(), target) ==
              birth_ring->end()) {
            problem(ewhere, "parent variable " + v + " has no image in the birth ring");
            images_ok = false;
            break;
          }
          images.push_back(Polynomial::variable(*birth_ring, target));
        }
        if (images_ok && total && parent_state->size() == total->size()) {
          for (std::size_t j = 0; j < total->size(); ++j)
            if ((*parent_state)[j].substitute(images) != (*total)[j])
              problem(ewhere, "total generator " + std::to_string(j) +
                                  " is not the substituted parent state");
        }
      }
    }
  }

  // Replay the in-chart coordinate changes from the birth state.
  std::optional<std::vector<Polynomial>> replay;
  VarList replay_ring;
  if (is_root) {
    auto input_vars = var_list(doc["input"], "variables", "input");
    if (input_vars) {
      replay = parse_all(doc["input"]["generators"], *input_vars, "input generators");
      replay_ring = *input_vars;
    }
  } else if (n["edge"].is_object() && n["edge"].contains("variables")) {
    auto birth_ring = var_list(n["edge"], "variables", where + " edge");
    if (birth_ring) {
      replay = parse_all(n["edge"]["total"], *birth_ring, where + " edge total");
      replay_ring = *birth_ring;
    }
  }
  if (replay) {
    bool ok = true;
    for (const auto& r : n["coordinate_changes"]) {
      std::string replaced = r["replaced"].get<std::string>();
      std::string fresh = r["fresh"].get<std::string>();
      auto it = std::find(replay_ring.begin(), replay_ring.end(), replaced);
      if (it == replay_ring.end()) {
        problem(where, "coordinate change replaces unknown variable " + replaced);
        ok = false;
        break;
      }
      VarList next_ring = replay_ring;
      next_ring[static_cast<std::size_t>(it - replay_ring.begin())] = fresh;
      std::vector<Polynomial> images;
      bool parsed = true;
      for (const std::string& v : replay_ring) {
        if (v == replaced) {
          try {
            images.push_back(parse_polynomial(r["image"].get<std::string>(), next_ring));
          } catch (const ParseError& ex) {
            problem(where, std::string("unparsable change image: ") + ex.what());
            parsed = false;
            break;
          }
        } else {
          images.push_back(Polynomial::variable(next_ring, v));
        }
      }
      if (!parsed) {
        ok = false;
        break;
      }
      for (Polynomial& g : *replay) g = g.substitute(images);
      replay_ring = next_ring;
    }
    if (ok) {
      if (replay_ring != ring) {
        problem(where, "coordinate changes do not lead to the chart's variables");
      } else if (state && replay->size() == state->size()) {
        for (std::size_t j = 0; j < state->size(); ++j)
          if ((*replay)[j] != (*state)[j])
            problem(where, "state generator " + std::to_string(j) +
                               " does not replay from its birth");
      } else if (state) {
        problem(where, "state generator count does not replay from its birth");
      }
    }
  }
}

void Checker::run() {
  if (!doc.is_object() || doc.value("format", "") != kFormatTag) {
    problem("document", std::string("missing format tag \"") + kFormatTag + "\"");
    return;
  }
  for (const char* key : {"input", "outcome", "failure_kind", "failure", "embedded_stage",
                          "blow_up_count", "nodes"})
    if (!doc.contains(key)) {
      problem("document", std::string("missing field \"") + key + "\"");
      return;
    }
  const TraceDocument& input = doc["input"];
  if (!input.is_object() || !input.contains("mode") || !input.contains("variables") ||
      !input.contains("generators")) {
    problem("input", "echo must carry mode, variables, and generators");
    return;
  }
  std::string mode = input["mode"].get<std::string>();
  if (mode != "principalize" && mode != "resolve-curve")
    problem("input", "unknown mode \"" + mode + "\"");

  std::string outcome = doc["outcome"].get<std::string>();
  if (outcome != "principalized" && outcome != "embedded-resolution" && outcome != "failed")
    problem("document", "unknown outcome \"" + outcome + "\"");
  std::string failure_kind = doc["failure_kind"].get<std::string>();
  if (outcome == "failed" && failure_kind == "none")
    problem("document", "failed outcome needs a failure kind");
  if (outcome != "failed" && failure_kind != "none")
    problem("document", "non-failed outcome with failure kind " + failure_kind);
  if (outcome == "embedded-resolution" && !doc["embedded_stage"].is_number_integer())
    problem("document", "embedded resolution without its stage");

  const TraceDocument& nodes = doc["nodes"];
  if (!nodes.is_array() || nodes.empty()) {
    problem("document", "empty node list");
    return;
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) check_node(i);

  int events = 0;
  int done = 0, failed = 0, internal_leaves = 0;
  for (const auto& n : nodes) {
    if (!n.is_object() || !n.contains("center") || !n.contains("status")) continue;
    if (!n["center"].is_null()) ++events;
    std::string status = n["status"].get<std::string>();
    if (status == "done") ++done;
    if (status == "failed") ++failed;
    if (status == "internal" && n["children"].empty()) ++internal_leaves;
  }
  if (doc["blow_up_count"].get<int>() != events)
    problem("document", "blow_up_count disagrees with the recorded centers");
  if (outcome != "failed" && (failed > 0 || internal_leaves > 0))
    problem("document", "successful outcome with failed or unprocessed charts");
  if (outcome == "failed" && failed == 0)
    problem("document", "failed outcome with no failed chart");
}

}  // namespace

TraceDocument emit_trace(const ResolutionResult& result, const TraceInput& input) {
  TraceDocument doc = TraceDocument::object();
  doc["format"] = kFormatTag;
  TraceDocument in = TraceDocument::object();
  in["mode"] = input.mode;
  in["variables"] = input.variables;
  in["generators"] = input.generators;
  in["budget"] = input.budget;
  doc["input"] = std::move(in);
  doc["outcome"] = outcome_name(result.outcome);
  doc["failure_kind"] = failure_name(result.failure_kind);
  doc["failure"] = result.failure;
  if (result.embedded_stage)
    doc["embedded_stage"] = *result.embedded_stage;
  else
    doc["embedded_stage"] = nullptr;
  doc["blow_up_count"] = result.tree.blow_up_count;

  TraceDocument nodes = TraceDocument::array();
  for (const TreeNode& node : result.tree.nodes) {
    TraceDocument j = TraceDocument::object();
    j["id"] = node.chart.id;
    j["index"] = node.index;
    if (node.parent)
      j["parent"] = *node.parent;
    else
      j["parent"] = nullptr;
    j["stage"] = node.stage;
    j["birth_variable"] = node.chart.birth_variable;
    j["variables"] = node.chart.variables;
    TraceDocument exc = TraceDocument::array();
    for (const auto& [v, stage] : node.chart.exceptional) {
      TraceDocument e = TraceDocument::object();
      e["variable"] = v;
      e["stage"] = stage;
      exc.push_back(std::move(e));
    }
    j["exceptional"] = std::move(exc);
    TraceDocument units = TraceDocument::array();
    for (const Polynomial& u : node.chart.inverted_units) units.push_back(u.to_string());
    j["inverted_units"] = std::move(units);
    TraceDocument births = TraceDocument::array();
    for (const SubstitutionRecord& r : node.chart.birth_substitutions)
      births.push_back(record_json(r));
    j["birth_substitutions"] = std::move(births);
    TraceDocument changes = TraceDocument::array();
    for (const SubstitutionRecord& r : node.chart.coordinate_change_log)
      changes.push_back(record_json(r));
    j["coordinate_changes"] = std::move(changes);
    j["state"] = ideal_strings(node.state);
    j["monomial"] =
        Polynomial::monomial_term(node.chart.variables, node.monomial, Rational(1))
            .to_string();
    j["residual"] = ideal_strings(node.residual);
    j["localized_residual"] = ideal_strings(node.localized_residual);
    if (node.residual_order)
      j["residual_order"] = *node.residual_order;
    else
      j["residual_order"] = nullptr;
    j["mark"] = node.mark;
    j["status"] = status_name(node.status);
    if (node.center)
      j["center"] = node.center->vars;
    else
      j["center"] = nullptr;
    j["children"] = node.children;
    if (node.edge) {
      TraceDocument e = TraceDocument::object();
      e["variables"] = node.edge->total.vars();
      e["center"] = node.edge->center.vars;
      e["mark"] = node.edge->mark;
      e["total"] = ideal_strings(node.edge->total);
      e["controlled"] = ideal_strings(node.edge->controlled);
      j["edge"] = std::move(e);
    } else {
      j["edge"] = nullptr;
    }
    j["note"] = node.note;
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);
  return doc;
}

std::string trace_to_string(const TraceDocument& doc) { return doc.dump(2) + "\n"; }

TraceDocument parse_trace(const std::string& text) {
  TraceDocument doc = TraceDocument::parse(text, nullptr, false);
  if (doc.is_discarded()) throw TraceError("malformed JSON");
  if (!doc.is_object() || doc.value("format", "") != kFormatTag)
    throw TraceError(std::string("missing format tag \"") + kFormatTag + "\"");
  return doc;
}

CheckReport check_trace(const TraceDocument& doc, const GroebnerOptions& opt) {
  Checker checker{doc, opt, {}};
  try {
    checker.run();
  } catch (const std::exception& e) {
    checker.problem("document", std::string("malformed field: ") + e.what());
  }
  return checker.report;
}

}  // namespace resk
