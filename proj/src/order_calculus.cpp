#include "reskernel/order_calculus.hpp"

#include <algorithm>
#include <stdexcept>

namespace resk {
namespace {

void append_unique(std::vector<Polynomial>& into, const Polynomial& p) {
  if (p.is_zero()) return;
  if (std::find(into.begin(), into.end(), p) == into.end()) into.push_back(p);
}

}  // namespace

Ideal derivative_ideal(const Ideal& ideal, int k) {
  if (k < 0) throw std::invalid_argument("derivative_ideal: negative order");
  const VarList& vars = ideal.vars();
  std::vector<Polynomial> all;
  std::vector<Polynomial> level = ideal.generators();
  for (const auto& g : level) append_unique(all, g);
  for (int step = 0; step < k; ++step) {
    std::vector<Polynomial> next;
    for (const auto& g : level)
      for (std::size_t v = 0; v < vars.size(); ++v) append_unique(next, g.differentiate(v));
    for (const auto& g : next) append_unique(all, g);
    if (next.empty()) break;
    level = std::move(next);
  }
  return Ideal(vars, std::move(all));
}

Ideal t_ideal(const MarkedIdeal& marked) {
  if (marked.mark < 1) throw std::invalid_argument("t_ideal: mark must be positive");
  return derivative_ideal(marked.ideal, marked.mark - 1);
}

std::optional<int> ord_at_point(const Ideal& ideal, const std::vector<Rational>& point) {
  const VarList& vars = ideal.vars();
  if (point.size() != vars.size())
    throw std::invalid_argument("ord_at_point: point dimension does not match ring");
  std::vector<Polynomial> images = identity_images(vars);
  for (std::size_t i = 0; i < vars.size(); ++i)
    images[i] = images[i] + Polynomial::constant(vars, point[i]);
  std::optional<int> best;
  for (const auto& g : ideal.generators()) {
    std::optional<int> o = g.substitute(images).order_at_origin();
    if (!o) continue;  // a zero generator never constrains the minimum
    if (!best || *o < *best) best = o;
  }
  return best;
}

std::optional<int> max_order(const Ideal& ideal, const GroebnerOptions& opt) {
  if (ideal.generators().empty()) return std::nullopt;
  int ceiling = 0;
  for (const auto& g : ideal.generators())
    ceiling = std::max(ceiling, g.total_degree().value_or(0));
  for (int a = 0; a <= ceiling; ++a)
    if (derivative_ideal(ideal, a).is_unit_ideal(opt)) return a;
  throw std::logic_error("max_order: derivative ideals never reached the unit ideal");
}

std::pair<Monomial, Ideal> monomial_part(const Ideal& ideal,
                                         const std::vector<std::string>& exceptional) {
  const VarList& vars = ideal.vars();
  Monomial factor = Monomial::one(vars.size());
  if (ideal.generators().empty()) return {factor, ideal};
  for (const auto& name : exceptional) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end())
      throw std::invalid_argument("monomial_part: variable '" + name + "' not in ring");
    std::size_t v = static_cast<std::size_t>(it - vars.begin());
    int m = ideal.generators().front().min_exponent(v);
    for (const auto& g : ideal.generators()) m = std::min(m, g.min_exponent(v));
    factor.e[v] = m;
  }
  std::vector<Polynomial> cofactors;
  cofactors.reserve(ideal.generators().size());
  for (const auto& g : ideal.generators()) {
    Polynomial reduced = g;
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (factor.e[v] > 0) reduced = reduced.divide_by_variable_power(v, factor.e[v]);
    cofactors.push_back(reduced);
  }
  return {factor, Ideal(vars, std::move(cofactors))};
}

}  // namespace resk
