#include "reskernel/chart.hpp"

#include <algorithm>

namespace resk {
namespace {

bool name_used(const std::vector<std::string>& used, const std::string& name) {
  return std::find(used.begin(), used.end(), name) != used.end();
}

std::size_t index_of(const VarList& vars, const std::string& name) {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end())
    throw std::invalid_argument("chart: variable '" + name + "' not in chart");
  return static_cast<std::size_t>(it - vars.begin());
}

}  // namespace

Chart make_root_chart(VarList vars) {
  Chart c;
  c.variables = vars;
  c.used_names = vars;
  return c;
}

std::string fresh_name(const std::vector<std::string>& used) {
  static const char* pool = "zwvutsrqponmlkjihgfedcba";
  for (int round = 0;; ++round) {
    for (const char* p = pool; *p; ++p) {
      std::string candidate(1, *p);
      if (round > 0) candidate += std::to_string(round);
      if (!name_used(used, candidate)) return candidate;
    }
  }
}

std::vector<Chart> blow_up_charts(const Chart& chart, const Center& center) {
  if (center.vars.empty()) throw std::invalid_argument("blow_up_charts: empty center");
  for (const auto& v : center.vars) index_of(chart.variables, v);  // validates

  // Process center variables in chart order for deterministic naming.
  std::vector<std::string> ordered;
  for (const auto& v : chart.variables)
    if (std::find(center.vars.begin(), center.vars.end(), v) != center.vars.end())
      ordered.push_back(v);
  if (ordered.size() != center.vars.size())
    throw std::invalid_argument("blow_up_charts: duplicate center variable");

  std::vector<Chart> children;
  for (const auto& kept : ordered) {
    Chart child;
    child.id = chart.id + "/" + kept + "-chart";
    child.depth = chart.depth + 1;
    child.birth_center = Center{ordered};
    child.birth_variable = kept;
    child.used_names = chart.used_names;
    child.variables = chart.variables;

    // Replace every other center variable by a fresh name; x_j = kept * n_j.
    std::vector<std::pair<std::string, std::string>> renames;  // old -> fresh
    for (const auto& other : ordered) {
      if (other == kept) continue;
      std::string n = fresh_name(child.used_names);
      child.used_names.push_back(n);
      child.variables[index_of(chart.variables, other)] = n;
      renames.emplace_back(other, n);
    }
    for (const auto& [old_name, new_name] : renames) {
      SubstitutionRecord rec;
      rec.kind = SubstitutionRecord::Kind::BlowUpSubstitution;
      rec.replaced = old_name;
      rec.fresh = new_name;
      rec.image = Polynomial::variable(child.variables, kept) *
                  Polynomial::variable(child.variables, new_name);
      child.birth_substitutions.push_back(std::move(rec));
    }

    // Old exceptional divisors persist; a replaced variable's divisor
    // continues as the fresh variable's hyperplane with the same birth stage.
    for (const auto& [name, birth] : chart.exceptional) {
      std::string renamed = name;
      for (const auto& [old_name, new_name] : renames)
        if (old_name == name) renamed = new_name;
      child.exceptional.emplace_back(renamed, birth);
    }
    bool already = false;
    for (const auto& entry : child.exceptional)
      if (entry.first == kept) already = true;
    if (!already) child.exceptional.emplace_back(kept, child.depth);

    // Units of the parent patch stay units after pullback.
    std::vector<Polynomial> images = substitution_images(chart, child);
    for (const auto& u : chart.inverted_units)
      child.inverted_units.push_back(u.substitute(images));

    children.push_back(std::move(child));
  }
  return children;
}

std::vector<Polynomial> substitution_images(const Chart& parent, const Chart& child) {
  std::vector<Polynomial> images;
  images.reserve(parent.variables.size());
  for (const auto& name : parent.variables) {
    const SubstitutionRecord* hit = nullptr;
    for (const auto& rec : child.birth_substitutions)
      if (rec.replaced == name) hit = &rec;
    if (hit)
      images.push_back(hit->image);
    else
      images.push_back(Polynomial::variable(child.variables, name));
  }
  return images;
}

Ideal total_transform(const Ideal& ideal, const Chart& parent, const Chart& child) {
  if (ideal.vars() != parent.variables)
    throw std::invalid_argument("total_transform: ideal ring does not match parent chart");
  std::vector<Polynomial> images = substitution_images(parent, child);
  std::vector<Polynomial> gens;
  gens.reserve(ideal.generators().size());
  for (const auto& g : ideal.generators()) gens.push_back(g.substitute(images));
  return Ideal(child.variables, std::move(gens));
}

Ideal controlled_transform(const MarkedIdeal& marked, const Chart& parent, const Chart& child) {
  Ideal total = total_transform(marked.ideal, parent, child);
  std::size_t e = index_of(child.variables, child.birth_variable);
  std::vector<Polynomial> gens;
  gens.reserve(total.generators().size());
  for (const auto& g : total.generators()) {
    try {
      gens.push_back(g.divide_by_variable_power(e, marked.mark));
    } catch (const std::domain_error&) {
      throw InadmissibleCenter(
          "controlled transform: generator not divisible by " + child.birth_variable + "^" +
          std::to_string(marked.mark) + " in chart " + child.id);
    }
  }
  return Ideal(child.variables, std::move(gens));
}

Ideal strict_transform(const Ideal& ideal, const Chart& parent, const Chart& child,
                       const GroebnerOptions& opt) {
  Ideal total = total_transform(ideal, parent, child);
  Polynomial e = Polynomial::variable(child.variables, child.birth_variable);
  return saturate(total, e, opt);
}

bool is_admissible_center(const MarkedIdeal& marked, const Center& center,
                          const GroebnerOptions& opt) {
  const VarList& vars = marked.ideal.vars();
  std::vector<Polynomial> cut;
  cut.reserve(center.vars.size());
  for (const auto& v : center.vars)
    cut.push_back(Polynomial::variable(vars, index_of(vars, v)));
  Ideal center_ideal(vars, std::move(cut));
  Ideal locus = t_ideal(marked);
  for (const auto& g : locus.generators())
    if (!center_ideal.contains(g, opt)) return false;
  return true;
}

ChangeResult apply_coordinate_change(const Chart& chart, const SubstitutionRecord& record,
                                     bool drop_exceptional_status) {
  std::size_t pos = index_of(chart.variables, record.replaced);
  if (std::find(chart.variables.begin(), chart.variables.end(), record.fresh) !=
      chart.variables.end())
    throw std::invalid_argument("apply_coordinate_change: fresh name '" + record.fresh +
                                "' already a chart variable");

  bool was_exceptional = false;
  for (const auto& entry : chart.exceptional)
    if (entry.first == record.replaced) was_exceptional = true;
  if (was_exceptional && !drop_exceptional_status)
    throw std::invalid_argument(
        "apply_coordinate_change: '" + record.replaced +
        "' cuts an exceptional divisor; a plain change would break the crossings record");

  Chart next = chart;
  next.variables[pos] = record.fresh;
  if (!name_used(next.used_names, record.fresh)) next.used_names.push_back(record.fresh);
  if (was_exceptional) {
    auto& exc = next.exceptional;
    exc.erase(std::remove_if(exc.begin(), exc.end(),
                             [&](const auto& entry) { return entry.first == record.replaced; }),
              exc.end());
  }

  // The image must be expressed over the new variable list and actually
  // involve the fresh variable linearly for the change to be invertible.
  if (record.image.vars() != next.variables)
    throw std::invalid_argument("apply_coordinate_change: image ring mismatch");
  std::size_t fresh_pos = pos;
  if (record.image.degree_in(fresh_pos) != 1 ||
      record.image.coefficient_of_power(fresh_pos, 1) !=
          Polynomial::constant(next.variables, Rational(1)))
    throw std::invalid_argument(
        "apply_coordinate_change: image must be the fresh variable plus terms free of it");

  std::vector<Polynomial> images;
  images.reserve(chart.variables.size());
  for (std::size_t i = 0; i < chart.variables.size(); ++i) {
    if (i == pos)
      images.push_back(record.image);
    else
      images.push_back(Polynomial::variable(next.variables, i));
  }
  for (auto& u : next.inverted_units) u = u.substitute(images);
  next.coordinate_change_log.push_back(record);
  return ChangeResult{std::move(next), std::move(images)};
}

}  // namespace resk
