// Command-line front end: parse rings, ideals, and fans from flags and files,
// run the drivers, and emit deterministic text or JSON documents.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "reskernel/driver.hpp"
#include "reskernel/fan.hpp"
#include "reskernel/order_calculus.hpp"
#include "reskernel/parser.hpp"
#include "reskernel/trace.hpp"

namespace {

using namespace resk;

// Exit codes: 0 success, 1 input/parse error, 2 driver failure or trace
// rejection, 3 budget exhausted.
struct CommandError {
  int code;
  std::string message;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

VarList split_vars(const std::string& text) {
  VarList vars;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::string name = trim(item);
    if (name.empty()) throw CommandError{1, "empty variable name in --vars"};
    for (const auto& seen : vars)
      if (seen == name) throw CommandError{1, "duplicate variable '" + name + "' in --vars"};
    vars.push_back(name);
  }
  if (vars.empty()) throw CommandError{1, "--vars names no variables"};
  return vars;
}

Ideal parse_ideal(const std::vector<std::string>& texts, const VarList& vars) {
  std::vector<Polynomial> gens;
  for (const auto& t : texts) gens.push_back(parse_polynomial(t, vars));
  return Ideal(vars, std::move(gens));
}

GroebnerOptions groebner_from_env() {
  GroebnerOptions gb;
  if (const char* cap = std::getenv("RES_KERNEL_SPAIR_CAP")) {
    char* end = nullptr;
    long value = std::strtol(cap, &end, 10);
    if (end == cap || *end != '\0' || value <= 0)
      throw CommandError{1, std::string("RES_KERNEL_SPAIR_CAP must be a positive integer, got '") +
                                cap + "'"};
    gb.spair_cap = value;
  }
  return gb;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string ideal_text(const std::vector<Polynomial>& polys) {
  std::vector<std::string> parts;
  for (const auto& p : polys) parts.push_back(p.to_string());
  return "(" + join(parts, ", ") + ")";
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out.good()) throw CommandError{1, "cannot open output file '" + out_path + "'"};
  out << text;
  if (!out.good()) throw CommandError{1, "failed writing output file '" + out_path + "'"};
}

std::string read_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw CommandError{1, "cannot read input file '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string json_strings(const TraceDocument& array, const std::string& sep) {
  std::vector<std::string> parts;
  for (const auto& item : array) parts.push_back(item.get<std::string>());
  return join(parts, sep);
}

// Human-readable rendering of a trace document. Derived from the JSON form so
// both formats always describe the same run.
std::string render_text(const TraceDocument& doc) {
  std::ostringstream out;
  out << "outcome: " << doc["outcome"].get<std::string>() << "\n";
  if (doc["failure_kind"].get<std::string>() != "none")
    out << "failure: " << doc["failure_kind"].get<std::string>() << " ("
        << doc["failure"].get<std::string>() << ")\n";
  if (!doc["embedded_stage"].is_null())
    out << "embedded stage: " << doc["embedded_stage"].get<int>() << "\n";
  out << "blow-ups: " << doc["blow_up_count"].get<int>() << "\n";
  for (const auto& node : doc["nodes"]) {
    out << "\nchart " << node["id"].get<std::string>() << " (stage "
        << node["stage"].get<int>() << ")\n";
    out << "  variables: " << json_strings(node["variables"], ", ") << "\n";
    if (!node["exceptional"].empty()) {
      out << "  exceptional:";
      for (const auto& e : node["exceptional"])
        out << " " << e["variable"].get<std::string>() << "@" << e["stage"].get<int>();
      out << "\n";
    }
    out << "  state: (" << json_strings(node["state"], ", ") << ")\n";
    out << "  monomial: " << node["monomial"].get<std::string>() << "\n";
    out << "  residual: (" << json_strings(node["residual"], ", ") << ")\n";
    out << "  order: ";
    if (node["residual_order"].is_null())
      out << "unbounded";
    else
      out << node["residual_order"].get<int>();
    out << "  mark: " << node["mark"].get<int>() << "\n";
    if (!node["center"].is_null())
      out << "  center: (" << json_strings(node["center"], ", ") << ")\n";
    else
      out << "  status: " << node["status"].get<std::string>() << "\n";
    if (!node["note"].get<std::string>().empty())
      out << "  note: " << node["note"].get<std::string>() << "\n";
  }
  return out.str();
}

int run_order(const VarList& vars, const std::vector<std::string>& ideal_texts,
              const GroebnerOptions& gb) {
  Ideal ideal = parse_ideal(ideal_texts, vars);
  std::optional<int> ord = max_order(ideal, gb);
  std::ostringstream out;
  if (!ord) {
    out << "maxord: unbounded\n";
    out << "t_ideal: (0)\n";
  } else {
    out << "maxord: " << *ord << "\n";
    MarkedIdeal marked{ideal, std::max(*ord, 1), {}};
    out << "t_ideal: " << ideal_text(t_ideal(marked).groebner_basis(gb)) << "\n";
  }
  std::cout << out.str();
  return 0;
}

int run_driver(const std::string& mode, const VarList& vars,
               const std::vector<std::string>& ideal_texts, int budget,
               const std::string& out_path, const std::string& format,
               const GroebnerOptions& gb) {
  Ideal ideal = parse_ideal(ideal_texts, vars);
  DriverOptions opt;
  opt.budget = budget;
  opt.gb = gb;
  ResolutionResult result = principalize(ideal, make_root_chart(vars), opt);
  if (mode == "resolve-curve" && result.outcome == Outcome::Principalized) {
    result.embedded_stage = detect_embedded_resolution(result, ideal, gb);
    if (result.embedded_stage) result.outcome = Outcome::EmbeddedResolution;
  }
  TraceDocument doc = emit_trace(result, TraceInput{vars, ideal_texts, mode, budget});
  write_output(out_path, format == "text" ? render_text(doc) : trace_to_string(doc));
  if (result.outcome == Outcome::Failed) {
    std::cerr << "error: " << result.failure << "\n";
    return result.failure_kind == FailureKind::BudgetExhausted ? 3 : 2;
  }
  return 0;
}

int run_toric(const std::string& file_path, const std::string& out_path) {
  Fan fan = parse_fan(read_input_file(file_path));
  Fan resolved = resolve_fan_2d(fan);
  write_output(out_path, fan_to_string(resolved));
  return 0;
}

int run_check(const std::string& file_path, const GroebnerOptions& gb) {
  TraceDocument doc = parse_trace(read_input_file(file_path));
  CheckReport report = check_trace(doc, gb);
  if (report.ok) {
    std::cout << "ok: " << doc["nodes"].size() << " charts, "
              << doc["blow_up_count"].get<int>() << " blow-ups verified\n";
    return 0;
  }
  std::cerr << "rejected: " << report.problems.size() << " problem(s)\n";
  for (const auto& p : report.problems) std::cerr << "  - " << p << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blow-up kernel: order calculus, principalization, curve resolution, 2D toric fans"};
  app.require_subcommand(1);

  std::string vars_text;
  std::vector<std::string> ideal_texts;
  int budget = 64;
  std::string out_path;
  std::string format = "json";
  std::string file_path;

  auto add_ring_flags = [&](CLI::App* sub) {
    sub->add_option("--vars", vars_text, "comma-separated variable names, e.g. x,y")
        ->required();
    sub->add_option("--ideal", ideal_texts, "ideal generator (repeat for several)")
        ->required();
  };
  auto add_output_flags = [&](CLI::App* sub) {
    sub->add_option("--budget", budget, "maximum number of blow-up events");
    sub->add_option("--out", out_path, "write the document here instead of stdout");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* order_cmd = app.add_subcommand("order", "print maxord and t_ideal of an ideal");
  add_ring_flags(order_cmd);

  CLI::App* prin_cmd =
      app.add_subcommand("principalize", "run the blow-up driver and emit its trace");
  add_ring_flags(prin_cmd);
  add_output_flags(prin_cmd);

  CLI::App* curve_cmd = app.add_subcommand(
      "resolve-curve", "principalize and report the embedded-resolution stage");
  add_ring_flags(curve_cmd);
  add_output_flags(curve_cmd);

  CLI::App* toric_cmd =
      app.add_subcommand("toric-resolve", "resolve a two-dimensional fan");
  toric_cmd->add_option("file", file_path, "fan description file")->required();
  toric_cmd->add_option("--out", out_path, "write the resolved fan here instead of stdout");

  CLI::App* check_cmd =
      app.add_subcommand("check-trace", "independently re-verify a trace document");
  check_cmd->add_option("file", file_path, "trace JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    GroebnerOptions gb = groebner_from_env();
    if (order_cmd->parsed()) return run_order(split_vars(vars_text), ideal_texts, gb);
    if (prin_cmd->parsed())
      return run_driver("principalize", split_vars(vars_text), ideal_texts, budget,
                        out_path, format, gb);
    if (curve_cmd->parsed())
      return run_driver("resolve-curve", split_vars(vars_text), ideal_texts, budget,
                        out_path, format, gb);
    if (toric_cmd->parsed()) return run_toric(file_path, out_path);
    if (check_cmd->parsed()) return run_check(file_path, gb);
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const FanError& e) {
    std::cerr << "fan error: " << e.what() << "\n";
    return 1;
  } catch (const TraceError& e) {
    std::cerr << "trace error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceCapExceeded& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
