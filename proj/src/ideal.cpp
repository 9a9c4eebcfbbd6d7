#include "reskernel/ideal.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <unordered_set>
#include <utility>

namespace resk {
namespace {

void check_common_ring(const VarList& vars, const std::vector<Polynomial>& ps) {
  for (const auto& p : ps)
    if (p.vars() != vars)
      throw std::invalid_argument("ideal: generator ring does not match ideal ring");
}

Polynomial monic(const Polynomial& p, const MonomialOrder& order) {
  const auto* lt = p.leading_term(order);
  if (!lt) return p;
  Rational inv = Rational(1) / lt->second;
  return p.scaled(inv);
}

// Full multivariate division: remainder of p by `basis` (no term of the result
// is divisible by any basis leading monomial).
Polynomial reduce_full(const Polynomial& p, const std::vector<Polynomial>& basis,
                       const std::vector<Monomial>& lts, const std::vector<Rational>& lcs,
                       const MonomialOrder& order) {
  Polynomial work = p;
  Polynomial::TermMap remainder;
  while (!work.is_zero()) {
    const auto* lt = work.leading_term(order);
    bool reduced = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!lts[i].divides(lt->first)) continue;
      Monomial q = lt->first.divide_by(lts[i]);
      Rational c = lt->second / lcs[i];
      work = work - Polynomial::monomial_term(work.vars(), q, c) * basis[i];
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder.emplace(lt->first, lt->second);
      work = work - Polynomial::monomial_term(work.vars(), lt->first, lt->second);
    }
  }
  return Polynomial::from_terms(p.vars(), std::move(remainder));
}

struct PairEntry {
  int sugar;
  int lcm_degree;
  Monomial lcm;
  int i;
  int j;
};

struct PopLater {
  MonomialOrder order;
  bool operator()(const PairEntry& a, const PairEntry& b) const {
    if (a.sugar != b.sugar) return a.sugar > b.sugar;
    if (a.lcm_degree != b.lcm_degree) return a.lcm_degree > b.lcm_degree;
    if (a.lcm != b.lcm) return order.greater(a.lcm, b.lcm);
    if (a.j != b.j) return a.j > b.j;
    return a.i > b.i;
  }
};

std::uint64_t pair_key(int i, int j) {
  if (i > j) std::swap(i, j);
  return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
}

}  // namespace

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens,
                                       const MonomialOrder& order, const GroebnerOptions& opt) {
  std::vector<Polynomial> basis;
  std::vector<Monomial> lts;
  std::vector<int> sugars;
  VarList vars;
  if (!gens.empty()) vars = gens.front().vars();
  check_common_ring(vars, gens);

  auto unit_basis = [&] {
    return std::vector<Polynomial>{Polynomial::constant(vars, Rational(1))};
  };

  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.is_constant()) return unit_basis();
    Polynomial m = monic(g, order);
    basis.push_back(m);
    lts.push_back(m.leading_term(order)->first);
    sugars.push_back(*m.total_degree());
  }
  if (basis.empty()) return {};

  std::priority_queue<PairEntry, std::vector<PairEntry>, PopLater> queue(PopLater{order});
  std::unordered_set<std::uint64_t> done;
  auto push_pair = [&](int i, int j) {
    Monomial l = Monomial::lcm(lts[i], lts[j]);
    int sugar = std::max(sugars[i] + l.degree() - lts[i].degree(),
                         sugars[j] + l.degree() - lts[j].degree());
    queue.push(PairEntry{sugar, l.degree(), std::move(l), i, j});
  };
  for (std::size_t j = 1; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) push_pair(static_cast<int>(i), static_cast<int>(j));

  long pops = 0;
  std::vector<Rational> lcs(basis.size(), Rational(1));
  while (!queue.empty()) {
    PairEntry pair = queue.top();
    queue.pop();
    if (++pops > opt.spair_cap)
      throw ResourceCapExceeded("basis computation exceeded the S-pair budget (" +
                                std::to_string(opt.spair_cap) + ")");
    done.insert(pair_key(pair.i, pair.j));
    if (lts[pair.i].coprime(lts[pair.j])) continue;
    // Chain criterion: a third leading monomial dividing the pair's lcm, with
    // both side pairs already handled, makes this pair redundant.
    bool redundant = false;
    for (std::size_t k = 0; k < basis.size() && !redundant; ++k) {
      if (static_cast<int>(k) == pair.i || static_cast<int>(k) == pair.j) continue;
      if (!lts[k].divides(pair.lcm)) continue;
      if (done.count(pair_key(pair.i, static_cast<int>(k))) &&
          done.count(pair_key(static_cast<int>(k), pair.j)))
        redundant = true;
    }
    if (redundant) continue;

    const Polynomial& f = basis[pair.i];
    const Polynomial& g = basis[pair.j];
    Monomial qf = pair.lcm.divide_by(lts[pair.i]);
    Monomial qg = pair.lcm.divide_by(lts[pair.j]);
    Polynomial s = Polynomial::monomial_term(vars, qf, Rational(1)) * f -
                   Polynomial::monomial_term(vars, qg, Rational(1)) * g;
    Polynomial h = reduce_full(s, basis, lts, lcs, order);
    if (h.is_zero()) continue;
    if (h.is_constant()) return unit_basis();
    h = monic(h, order);
    int idx = static_cast<int>(basis.size());
    basis.push_back(h);
    lts.push_back(h.leading_term(order)->first);
    sugars.push_back(pair.sugar);
    lcs.push_back(Rational(1));
    for (int k = 0; k < idx; ++k) push_pair(k, idx);
  }

  // Minimalize: sort ascending by leading monomial, drop anything whose
  // leading monomial an earlier survivor divides.
  std::vector<std::size_t> idx(basis.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return order.greater(lts[b], lts[a]); });
  std::vector<Polynomial> kept;
  std::vector<Monomial> kept_lts;
  for (std::size_t i : idx) {
    bool covered = false;
    for (const auto& l : kept_lts)
      if (l.divides(lts[i])) {
        covered = true;
        break;
      }
    if (!covered) {
      kept.push_back(basis[i]);
      kept_lts.push_back(lts[i]);
    }
  }
  // Inter-reduce tails; leading terms are pairwise non-divisible so they
  // survive, and the result is the canonical reduced basis.
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::vector<Polynomial> others;
    std::vector<Monomial> other_lts;
    std::vector<Rational> other_lcs;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (j == i) continue;
      others.push_back(kept[j]);
      other_lts.push_back(kept_lts[j]);
      other_lcs.push_back(Rational(1));
    }
    reduced.push_back(monic(reduce_full(kept[i], others, other_lts, other_lcs, order), order));
  }
  return reduced;
}

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order) {
  std::vector<Polynomial> nonzero;
  std::vector<Monomial> lts;
  std::vector<Rational> lcs;
  for (const auto& b : basis) {
    if (b.is_zero()) continue;
    if (b.vars() != p.vars())
      throw std::invalid_argument("normal_form: basis ring does not match polynomial ring");
    nonzero.push_back(b);
    const auto* lt = b.leading_term(order);
    lts.push_back(lt->first);
    lcs.push_back(lt->second);
  }
  return reduce_full(p, nonzero, lts, lcs, order);
}

Ideal::Ideal(VarList vars, std::vector<Polynomial> gens) : vars_(std::move(vars)) {
  check_common_ring(vars_, gens);
  for (auto& g : gens)
    if (!g.is_zero()) gens_.push_back(std::move(g));
}

Ideal Ideal::zero(VarList vars) { return Ideal(std::move(vars), {}); }

Ideal Ideal::unit(VarList vars) {
  Polynomial one = Polynomial::constant(vars, Rational(1));
  return Ideal(std::move(vars), {one});
}

const std::vector<Polynomial>& Ideal::groebner_basis(const GroebnerOptions& opt) const& {
  if (!gb_) gb_ = resk::groebner_basis(gens_, MonomialOrder::graded_lex(), opt);
  return *gb_;
}

Polynomial Ideal::normal_form(const Polynomial& p, const GroebnerOptions& opt) const {
  if (p.vars() != vars_)
    throw std::invalid_argument("normal_form: polynomial ring does not match ideal ring");
  return resk::normal_form(p, groebner_basis(opt), MonomialOrder::graded_lex());
}

bool Ideal::contains(const Polynomial& p, const GroebnerOptions& opt) const {
  return normal_form(p, opt).is_zero();
}

bool Ideal::is_zero_ideal(const GroebnerOptions& opt) const {
  return groebner_basis(opt).empty();
}

bool Ideal::is_unit_ideal(const GroebnerOptions& opt) const {
  const auto& gb = groebner_basis(opt);
  return gb.size() == 1 && gb.front().is_constant() && !gb.front().is_zero();
}

bool equal_ideals(const Ideal& a, const Ideal& b, const GroebnerOptions& opt) {
  if (a.vars() != b.vars())
    throw std::invalid_argument("equal_ideals: ideals live in different rings");
  return a.groebner_basis(opt) == b.groebner_basis(opt);
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  if (a.vars() != b.vars())
    throw std::invalid_argument("ideal_sum: ideals live in different rings");
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.vars(), std::move(gens));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  if (a.vars() != b.vars())
    throw std::invalid_argument("ideal_product: ideals live in different rings");
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators())
    for (const auto& g : b.generators()) gens.push_back(f * g);
  return Ideal(a.vars(), std::move(gens));
}

Ideal ideal_power(const Ideal& a, int k) {
  if (k < 0) throw std::invalid_argument("ideal_power: negative exponent");
  if (k == 0) return Ideal::unit(a.vars());
  // Generators are the degree-k multiset products of the input generators
  // (i1 <= i2 <= ... <= ik), avoiding the duplicate-heavy repeated product.
  const auto& gens = a.generators();
  std::vector<Polynomial> out;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start, int left, const Polynomial& acc) -> void {
    if (left == 0) {
      out.push_back(acc);
      return;
    }
    for (std::size_t i = start; i < gens.size(); ++i) self(self, i, left - 1, acc * gens[i]);
  };
  rec(rec, 0, k, Polynomial::constant(a.vars(), Rational(1)));
  return Ideal(a.vars(), std::move(out));
}

Polynomial embed(const Polynomial& p, const VarList& ring) {
  if (p.vars() == ring) return p;
  std::vector<Polynomial> images;
  images.reserve(p.vars().size());
  for (const auto& name : p.vars()) {
    auto it = std::find(ring.begin(), ring.end(), name);
    if (it == ring.end())
      throw std::invalid_argument("embed: variable '" + name + "' missing from target ring");
    images.push_back(Polynomial::variable(ring, static_cast<std::size_t>(it - ring.begin())));
  }
  return p.substitute(images);
}

Ideal embed_ideal(const Ideal& ideal, const VarList& ring) {
  std::vector<Polynomial> gens;
  gens.reserve(ideal.generators().size());
  for (const auto& g : ideal.generators()) gens.push_back(embed(g, ring));
  return Ideal(ring, std::move(gens));
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop_vars,
                const GroebnerOptions& opt) {
  if (drop_vars.empty()) return ideal;
  const VarList& vars = ideal.vars();
  std::vector<bool> dropped(vars.size(), false);
  for (const auto& name : drop_vars) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end())
      throw std::invalid_argument("eliminate: variable '" + name + "' not in ring");
    dropped[static_cast<std::size_t>(it - vars.begin())] = true;
  }
  VarList front, back;
  for (std::size_t i = 0; i < vars.size(); ++i)
    (dropped[i] ? front : back).push_back(vars[i]);
  VarList permuted = front;
  permuted.insert(permuted.end(), back.begin(), back.end());

  std::vector<Polynomial> lifted;
  lifted.reserve(ideal.generators().size());
  for (const auto& g : ideal.generators()) lifted.push_back(embed(g, permuted));

  MonomialOrder order = MonomialOrder::block_elim(static_cast<int>(front.size()));
  std::vector<Polynomial> gb = groebner_basis(lifted, order, opt);

  std::vector<Polynomial> survivors;
  for (const auto& g : gb) {
    bool free_of_front = true;
    for (std::size_t i = 0; i < front.size() && free_of_front; ++i)
      if (g.depends_on(i)) free_of_front = false;
    if (!free_of_front) continue;
    std::vector<Polynomial> images;
    images.reserve(permuted.size());
    for (std::size_t i = 0; i < front.size(); ++i)
      images.push_back(Polynomial::constant(back, Rational(0)));
    for (const auto& name : back) images.push_back(Polynomial::variable(back, name));
    survivors.push_back(g.substitute(images));
  }
  return Ideal(back, std::move(survivors));
}

Ideal saturate(const Ideal& ideal, const Polynomial& f, const GroebnerOptions& opt) {
  if (f.vars() != ideal.vars())
    throw std::invalid_argument("saturate: polynomial ring does not match ideal ring");
  if (f.is_zero()) throw std::invalid_argument("saturate: cannot saturate by zero");
  if (f.is_constant()) return ideal;

  std::string aux = "_s";
  int counter = 0;
  auto taken = [&](const std::string& name) {
    return std::find(ideal.vars().begin(), ideal.vars().end(), name) != ideal.vars().end();
  };
  while (taken(aux)) aux = "_s" + std::to_string(counter++);

  VarList big = ideal.vars();
  big.push_back(aux);
  std::vector<Polynomial> gens;
  gens.reserve(ideal.generators().size() + 1);
  for (const auto& g : ideal.generators()) gens.push_back(embed(g, big));
  Polynomial inverse_relation =
      Polynomial::variable(big, big.size() - 1) * embed(f, big) -
      Polynomial::constant(big, Rational(1));
  gens.push_back(inverse_relation);
  return eliminate(Ideal(big, std::move(gens)), {aux}, opt);
}

Ideal saturate(const Ideal& ideal, const std::vector<Polynomial>& fs,
               const GroebnerOptions& opt) {
  Ideal acc = ideal;
  for (const auto& f : fs) acc = saturate(acc, f, opt);
  return acc;
}

}  // namespace resk
