#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "reskernel/driver.hpp"

namespace resk {

// A blow-up run serialized as one JSON document with a version tag, an echo
// of the input, the full tree, and the outcome. Field order is fixed at
// emission, so identical runs produce byte-identical text.
using TraceDocument = nlohmann::ordered_json;

class TraceError : public std::runtime_error {
 public:
  explicit TraceError(const std::string& what) : std::runtime_error(what) {}
};

// What the run was asked to do, echoed into the document so re-verification
// needs no outside context.
struct TraceInput {
  VarList variables;
  std::vector<std::string> generators;  // the ideal's generators, as given
  std::string mode;                     // "principalize" or "resolve-curve"
  int budget = 0;
};

TraceDocument emit_trace(const ResolutionResult& result, const TraceInput& input);

// dump with two-space indent and a trailing newline; deterministic.
std::string trace_to_string(const TraceDocument& doc);

// Parses and checks the version tag; throws TraceError on malformed input.
TraceDocument parse_trace(const std::string& text);

struct CheckReport {
  bool ok = true;
  std::vector<std::string> problems;
};

// Independent re-verification of a trace document: structural integrity, the
// monomial/residual split, admissibility of every blown-up center against the
// recomputed order locus, the controlled/total transform identity on every
// edge, and the full replay of each chart's birth substitution and in-chart
// coordinate changes. A report listing problems (empty iff the document
// passes) is returned rather than thrown so a CLI can print all of them.
CheckReport check_trace(const TraceDocument& doc, const GroebnerOptions& opt = {});

}  // namespace resk
