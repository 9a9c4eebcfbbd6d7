#include "reskernel/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace resk {

int Monomial::degree() const {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

bool Monomial::divides(const Monomial& m) const {
  if (e.size() != m.e.size()) throw std::invalid_argument("Monomial::divides: arity mismatch");
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > m.e[i]) return false;
  return true;
}

Monomial Monomial::times(const Monomial& m) const {
  if (e.size() != m.e.size()) throw std::invalid_argument("Monomial::times: arity mismatch");
  Monomial r = *this;
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += m.e[i];
  return r;
}

Monomial Monomial::divide_by(const Monomial& m) const {
  if (!m.divides(*this)) throw std::domain_error("Monomial::divide_by: not divisible");
  Monomial r = *this;
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= m.e[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  if (a.e.size() != b.e.size()) throw std::invalid_argument("Monomial::lcm: arity mismatch");
  Monomial r = a;
  for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  if (a.e.size() != b.e.size()) throw std::invalid_argument("Monomial::gcd: arity mismatch");
  Monomial r = a;
  for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = std::min(a.e[i], b.e[i]);
  return r;
}

bool Monomial::coprime(const Monomial& m) const {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0 && m.e[i] > 0) return false;
  return true;
}

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.e > b.e;  // lexicographic on exponent vectors, earlier variable first
}

Polynomial Polynomial::constant(VarList vars, const Rational& c) {
  Polynomial p(std::move(vars));
  if (c != 0) p.terms_.emplace(Monomial::one(p.vars_.size()), c);
  return p;
}

Polynomial Polynomial::variable(const VarList& vars, std::size_t index) {
  if (index >= vars.size()) throw std::out_of_range("Polynomial::variable: index");
  Monomial m = Monomial::one(vars.size());
  m.e[index] = 1;
  return monomial_term(vars, m, 1);
}

Polynomial Polynomial::variable(const VarList& vars, const std::string& name) {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) throw std::invalid_argument("Polynomial::variable: unknown name " + name);
  return variable(vars, static_cast<std::size_t>(it - vars.begin()));
}

Polynomial Polynomial::from_terms(VarList vars, TermMap terms) {
  Polynomial p(std::move(vars));
  for (auto& [m, c] : terms) {
    if (m.e.size() != p.vars_.size())
      throw std::invalid_argument("Polynomial::from_terms: arity mismatch");
    if (c != 0) p.terms_.emplace(m, c);
  }
  return p;
}

Polynomial Polynomial::monomial_term(VarList vars, Monomial m, const Rational& c) {
  Polynomial p(std::move(vars));
  if (m.e.size() != p.vars_.size())
    throw std::invalid_argument("Polynomial::monomial_term: arity mismatch");
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coeff(Monomial::one(vars_.size())); }

std::optional<int> Polynomial::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  // Canonical order is graded: the first term has maximal degree.
  return terms_.begin()->first.degree();
}

std::optional<int> Polynomial::order_at_origin() const {
  if (terms_.empty()) return std::nullopt;
  // Last term in graded order has minimal degree.
  return terms_.rbegin()->first.degree();
}

int Polynomial::degree_in(std::size_t var_index) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.e[var_index]);
  return d;
}

bool Polynomial::depends_on(std::size_t var_index) const {
  for (const auto& [m, c] : terms_)
    if (m.e[var_index] > 0) return true;
  return false;
}

int Polynomial::min_exponent(std::size_t var_index) const {
  if (terms_.empty()) return 0;
  int d = terms_.begin()->first.e[var_index];
  for (const auto& [m, c] : terms_) d = std::min(d, m.e[var_index]);
  return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_same_ring(const Polynomial& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("polynomial ring mismatch");
}

Polynomial Polynomial::operator-() const {
  Polynomial r(vars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same_ring(o);
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_same_ring(o);
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_ring(o);
  Polynomial r(vars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma.times(mb), ca * cb);
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r(vars_);
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw std::domain_error("Polynomial::pow: negative exponent");
  Polynomial acc = constant(vars_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = (k >>= 1) ? base * base : base;
  }
  return acc;
}

Polynomial Polynomial::differentiate(std::size_t var_index) const {
  if (var_index >= vars_.size()) throw std::out_of_range("differentiate: index");
  Polynomial r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m.e[var_index] == 0) continue;
    Monomial d = m;
    int k = d.e[var_index]--;
    r.add_term(d, c * k);
  }
  return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != vars_.size())
    throw std::invalid_argument("substitute: image count mismatch");
  VarList target = images.empty() ? VarList{} : images.front().vars();
  for (const auto& im : images)
    if (im.vars() != target) throw std::invalid_argument("substitute: inconsistent target rings");
  Polynomial result(target);
  // Power cache per variable to avoid recomputation across terms.
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t i, int k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  for (const auto& [m, c] : terms_) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < images.size(); ++i)
      if (m.e[i] > 0) term = term * power(i, m.e[i]);
    result = result + term;
  }
  return result;
}

Polynomial Polynomial::coefficient_of_power(std::size_t var_index, int k) const {
  Polynomial r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m.e[var_index] != k) continue;
    Monomial stripped = m;
    stripped.e[var_index] = 0;
    r.add_term(stripped, c);
  }
  return r;
}

Polynomial Polynomial::divide_by_variable_power(std::size_t var_index, int k) const {
  Polynomial r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m.e[var_index] < k)
      throw std::domain_error("divide_by_variable_power: not exactly divisible");
    Monomial q = m;
    q.e[var_index] -= k;
    r.terms_.emplace(q, c);
  }
  return r;
}

Polynomial Polynomial::restrict_zero(std::size_t var_index) const {
  if (var_index >= vars_.size()) throw std::out_of_range("restrict_zero: index");
  VarList reduced;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (i != var_index) reduced.push_back(vars_[i]);
  Polynomial r(reduced);
  for (const auto& [m, c] : terms_) {
    if (m.e[var_index] > 0) continue;
    Monomial q;
    q.e.reserve(reduced.size());
    for (std::size_t i = 0; i < m.e.size(); ++i)
      if (i != var_index) q.e.push_back(m.e[i]);
    r.add_term(q, c);
  }
  return r;
}

Polynomial Polynomial::with_vars(VarList vars) const {
  if (vars.size() != vars_.size()) throw std::invalid_argument("with_vars: arity mismatch");
  Polynomial r(std::move(vars));
  r.terms_ = terms_;
  return r;
}

std::size_t Polynomial::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw std::invalid_argument("var_index: unknown variable " + name);
  return static_cast<std::size_t>(it - vars_.begin());
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool printed_coeff = false;
    if (m.is_one() || a != 1) {
      out << rational_to_string(a);
      printed_coeff = true;
    }
    bool printed_var = false;
    for (std::size_t i = 0; i < m.e.size(); ++i) {
      if (m.e[i] == 0) continue;
      if (printed_coeff || printed_var) out << "*";
      out << vars_[i];
      if (m.e[i] > 1) out << "^" << m.e[i];
      printed_var = true;
    }
  }
  return out.str();
}

std::vector<Polynomial> identity_images(const VarList& vars) {
  std::vector<Polynomial> images;
  images.reserve(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i)
    images.push_back(Polynomial::variable(vars, i));
  return images;
}

}  // namespace resk
