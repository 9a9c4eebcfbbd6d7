#include "reskernel/contact.hpp"

#include <algorithm>
#include <utility>

namespace resk {

namespace {

// Factorial with the desk-scale guard already applied by the caller.
long factorial(int a) {
  long f = 1;
  for (int i = 2; i <= a; ++i) f *= i;
  return f;
}

}  // namespace

std::optional<ContactDatum> scan_maximal_contact(const MarkedIdeal& marked,
                                                 const ContactFilter& filter,
                                                 const GroebnerOptions& opt) {
  Ideal locus = t_ideal(marked);
  const std::vector<Polynomial>& basis = locus.groebner_basis(opt);
  const VarList& ring = locus.vars();
  // The basis is stored ascending by leading monomial; scan from the top so
  // the choice is the deterministic "largest first" one.
  for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
    const Polynomial& h = *it;
    for (std::size_t j = 0; j < ring.size(); ++j) {
      if (h.degree_in(j) != 1) continue;
      Polynomial lead = h.coefficient_of_power(j, 1);
      if (!lead.is_constant()) continue;
      Rational c = lead.constant_term();
      Polynomial tail = h - Polynomial::variable(ring, j).scaled(c);
      if (tail.depends_on(j)) continue;
      if (filter && !filter(j, h)) continue;
      ContactDatum datum;
      datum.h = h;
      datum.hypersurface_var = ring[j];
      datum.lead_coefficient = c;
      datum.tail = std::move(tail);
      datum.needs_straightening = !datum.tail.is_zero();
      return datum;
    }
  }
  return std::nullopt;
}

ContactDatum find_maximal_contact(const MarkedIdeal& marked, const GroebnerOptions& opt) {
  std::optional<ContactDatum> datum = scan_maximal_contact(marked, ContactFilter(), opt);
  if (!datum)
    throw NoAlgebraicContact(
        "no generator of the locus ideal is linear in a variable with scalar "
        "leading coefficient");
  return *std::move(datum);
}

SubstitutionRecord make_straightening(const ContactDatum& datum, const VarList& ring,
                                      const std::string& fresh) {
  if (std::find(ring.begin(), ring.end(), fresh) != ring.end())
    throw std::invalid_argument("make_straightening: fresh name already a ring variable");
  std::size_t pos = ring.size();
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (ring[i] == datum.hypersurface_var) pos = i;
  if (pos == ring.size())
    throw std::invalid_argument("make_straightening: hypersurface variable not in ring");

  VarList target = ring;
  target[pos] = fresh;

  // The new coordinate is n = x_j + tail / c, so the old variable reads
  // x_j = n - tail / c.  The tail does not involve x_j, so it embeds into the
  // renamed ring unchanged.  The datum may come from a smaller ring (the
  // dimension-induction works on hypersurface sections), so locate the
  // variable in the tail's own ring before dropping it.
  Polynomial tail_dropped = datum.tail.restrict_zero(datum.tail.var_index(datum.hypersurface_var));
  Polynomial tail_in_target = embed(tail_dropped, target);
  Rational inv_c = make_rational(Int(1), 1) / datum.lead_coefficient;

  SubstitutionRecord record;
  record.kind = SubstitutionRecord::Kind::Straightening;
  record.replaced = datum.hypersurface_var;
  record.fresh = fresh;
  record.image = Polynomial::variable(target, fresh) - tail_in_target.scaled(inv_c);
  return record;
}

std::vector<Polynomial> tschirnhaus(const Polynomial& f, std::size_t v, int a) {
  if (a < 1) throw std::invalid_argument("tschirnhaus: order must be positive");
  if (v >= f.vars().size()) throw std::invalid_argument("tschirnhaus: variable out of range");
  if (f.degree_in(v) != a)
    throw std::invalid_argument("tschirnhaus: polynomial does not have the stated degree");
  Polynomial top = f.coefficient_of_power(v, a);
  if (!top.is_constant() || top.constant_term() != Rational(1))
    throw std::invalid_argument("tschirnhaus: polynomial is not monic in the variable");

  Polynomial sub = f.coefficient_of_power(v, a - 1);
  std::vector<Polynomial> images = identity_images(f.vars());
  Rational inv_a = make_rational(Int(1), Int(a));
  images[v] = images[v] - sub.scaled(inv_a);
  return images;
}

Ideal restrict_to_hypersurface(const Ideal& ideal, const std::string& var) {
  const VarList& ring = ideal.vars();
  std::size_t pos = ring.size();
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (ring[i] == var) pos = i;
  if (pos == ring.size())
    throw std::invalid_argument("restrict_to_hypersurface: variable not in ring");
  VarList target;
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (i != pos) target.push_back(ring[i]);
  std::vector<Polynomial> gens;
  for (const Polynomial& g : ideal.generators()) {
    Polynomial r = g.restrict_zero(pos);
    if (!r.is_zero()) gens.push_back(r);
  }
  return Ideal(target, std::move(gens));
}

MarkedIdeal coefficient_ideal(const MarkedIdeal& marked, const GroebnerOptions& opt) {
  (void)opt;
  int a = marked.mark;
  if (a < 1) throw std::invalid_argument("coefficient_ideal: mark must be positive");
  if (a > 8)
    throw std::invalid_argument("coefficient_ideal: mark too large for factorial weights");
  long fact = factorial(a);

  Ideal sum = Ideal::zero(marked.ideal.vars());
  for (int i = 0; i < a; ++i) {
    Ideal level = derivative_ideal(marked.ideal, i);
    int power = static_cast<int>(fact / (a - i));
    sum = ideal_sum(sum, ideal_power(level, power));
  }

  MarkedIdeal out;
  out.ideal = std::move(sum);
  out.mark = static_cast<int>(fact);
  out.exceptional = marked.exceptional;
  return out;
}

Ideal homogenization(const MarkedIdeal& marked, const GroebnerOptions& opt) {
  (void)opt;
  int a = marked.mark;
  if (a < 1) throw std::invalid_argument("homogenization: mark must be positive");
  Ideal t = t_ideal(marked);
  Ideal sum = Ideal::zero(marked.ideal.vars());
  for (int i = 0; i <= a; ++i) {
    Ideal level = derivative_ideal(marked.ideal, i);
    sum = ideal_sum(sum, ideal_product(level, ideal_power(t, i)));
  }
  return sum;
}

}  // namespace resk
