#include "support/tree_compare.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace resk {
namespace testing {
namespace {

std::string join(const std::set<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ",";
    out += n;
  }
  return out.empty() ? "-" : out;
}

struct Walker {
  const BlowUpTree& base;
  const BlowUpTree& other;
  std::string why;

  bool fail(const TreeNode& b, const TreeNode& o, const std::string& message) {
    std::ostringstream os;
    os << "at '" << b.chart.id << "' vs '" << o.chart.id << "': " << message;
    why = os.str();
    return false;
  }

  // dict: base-tree variable name -> other-tree variable name.
  // embed: current name of the embedding variable in the other tree ("" if none).
  bool node(std::size_t bi, std::size_t oi, std::map<std::string, std::string> dict,
            std::string embed) {
    const TreeNode& b = base.nodes[bi];
    const TreeNode& o = other.nodes[oi];

    // In-chart coordinate changes must pair up one for one.
    const auto& lb = b.chart.coordinate_change_log;
    const auto& lo = o.chart.coordinate_change_log;
    if (lb.size() != lo.size()) {
      std::ostringstream os;
      os << "coordinate change counts differ (" << lb.size() << " vs " << lo.size() << ")";
      return fail(b, o, os.str());
    }
    for (std::size_t i = 0; i < lb.size(); ++i) {
      if (lb[i].kind != lo[i].kind) return fail(b, o, "coordinate change kinds differ");
      auto it = dict.find(lb[i].replaced);
      if (it == dict.end() || it->second != lo[i].replaced) {
        return fail(b, o, "coordinate changes target different variables ('" + lb[i].replaced +
                              "' vs '" + lo[i].replaced + "')");
      }
      dict[lb[i].fresh] = lo[i].fresh;
    }

    // Center presence and content.
    if (!b.center.has_value()) {
      if (o.center.has_value()) {
        return fail(b, o, "extra blow-up (center " + join({o.center->vars.begin(),
                                                           o.center->vars.end()}) +
                              ") where the base run stops");
      }
      return true;
    }
    if (!o.center.has_value()) return fail(b, o, "missing blow-up");

    std::set<std::string> expect;
    for (const auto& v : b.center->vars) {
      auto it = dict.find(v);
      if (it == dict.end()) return fail(b, o, "center variable '" + v + "' has no translation");
      expect.insert(it->second);
    }
    if (!embed.empty()) expect.insert(embed);
    std::set<std::string> got(o.center->vars.begin(), o.center->vars.end());
    if (expect != got) {
      return fail(b, o, "centers differ: expected {" + join(expect) + "}, got {" + join(got) + "}");
    }

    // Pair children by kept variable and recurse.
    for (std::size_t ci : b.children) {
      const TreeNode& cb = base.nodes[ci];
      const std::string want = dict.at(cb.chart.birth_variable);
      std::optional<std::size_t> match;
      for (std::size_t cj : o.children) {
        if (other.nodes[cj].chart.birth_variable == want) match = cj;
      }
      if (!match) return fail(b, o, "no patch keeping '" + want + "' in the other run");

      std::map<std::string, std::string> cdict = dict;
      std::string cembed = embed;
      const auto& rb = cb.chart.birth_substitutions;
      const auto& ro = other.nodes[*match].chart.birth_substitutions;
      for (const auto& rec : rb) {
        const std::string want_replaced = cdict.at(rec.replaced);
        bool found = false;
        for (const auto& orec : ro) {
          if (orec.replaced == want_replaced) {
            cdict[rec.fresh] = orec.fresh;
            found = true;
            break;
          }
        }
        if (!found) {
          return fail(b, o, "blow-up rename of '" + rec.replaced + "' has no counterpart");
        }
      }
      if (!embed.empty()) {
        for (const auto& orec : ro) {
          if (orec.replaced == embed) cembed = orec.fresh;
        }
      }
      if (!node(ci, *match, std::move(cdict), std::move(cembed))) return false;
    }

    // The patch keeping the embedding variable must not blow up anything.
    if (!embed.empty()) {
      for (std::size_t cj : o.children) {
        const TreeNode& co = other.nodes[cj];
        if (co.chart.birth_variable == embed && co.center.has_value()) {
          return fail(b, co, "the patch keeping the embedding variable blew up a center");
        }
      }
    }
    return true;
  }
};

}  // namespace

bool center_trees_match(const BlowUpTree& base, const BlowUpTree& other,
                        const std::string& embed_var, std::string& why) {
  if (base.nodes.empty() || other.nodes.empty()) {
    why = "empty tree";
    return false;
  }
  // Identity dictionary over the base input ring: unwind the root chart's
  // in-chart changes, which the walk below replays forward.
  VarList birth = base.nodes.front().chart.variables;
  const auto& root_log = base.nodes.front().chart.coordinate_change_log;
  for (auto it = root_log.rbegin(); it != root_log.rend(); ++it)
    std::replace(birth.begin(), birth.end(), it->fresh, it->replaced);
  std::map<std::string, std::string> dict;
  for (const auto& v : birth) dict[v] = v;
  Walker w{base, other, {}};
  bool ok = w.node(0, 0, std::move(dict), embed_var);
  why = w.why;
  return ok;
}

}  // namespace testing
}  // namespace resk
