#include "reskernel/fan.hpp"

#include "reskernel/parser.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <utility>

namespace resk {
namespace {

Int det2(const RayVector& a, const RayVector& b) {
  return a[0] * b[1] - a[1] * b[0];
}

std::string ray_to_string(const RayVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].str();
  }
  return out;
}

// Diagonalizes the matrix by unimodular row and column operations (values
// mutated in place); returns the absolute values of the nonzero diagonal
// entries. Their number is the rank and their product the lattice index of
// the row span in its saturation, which is all the callers need.
std::vector<Int> diagonal_form(std::vector<std::vector<Int>> m) {
  std::vector<Int> diag;
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t t = 0; t < rows && t < cols; ++t) {
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 &&
              (pi == rows || abs(m[i][j]) < abs(m[pi][pj])))
            pi = i, pj = j;
      if (pi == rows) return diag;  // submatrix is zero
      std::swap(m[t], m[pi]);
      for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (m[i][t] != 0) {
          Int q = m[i][t] / m[t][t];
          for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
          if (m[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (m[t][j] != 0) {
          Int q = m[t][j] / m[t][t];
          for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
          if (m[t][j] != 0) clean = false;
        }
      if (clean) break;
    }
    diag.push_back(abs(m[t][t]));
  }
  return diag;
}

std::vector<Int> ray_diagonal(const Cone& c) {
  std::vector<std::vector<Int>> m;
  for (const RayVector& r : c.rays) m.push_back(r);
  return diagonal_form(std::move(m));
}

bool ray_less(const RayVector& a, const RayVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool cone_less(const Cone& a, const Cone& b) {
  if (a.rays.size() != b.rays.size()) return a.rays.size() < b.rays.size();
  return std::lexicographical_compare(a.rays.begin(), a.rays.end(), b.rays.begin(),
                                      b.rays.end(), ray_less);
}

bool same_rays(const Cone& a, const Cone& b) { return a.rays == b.rays; }

// r strictly inside the oriented 2D sector spanned by u, w (det(u, w) > 0).
bool strictly_inside_2d(const RayVector& r, const RayVector& u, const RayVector& w) {
  return det2(u, r) > 0 && det2(r, w) > 0;
}

void orient_2d(RayVector& u, RayVector& w) {
  if (det2(u, w) < 0) std::swap(u, w);
}

struct ExtGcd {
  Int g, s, t;  // g = s*a + t*b
};

ExtGcd ext_gcd(Int a, Int b) {
  Int s0 = 1, t0 = 0, s1 = 0, t1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    a = b;
    b = r;
    Int s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    t0 = t1;
    s1 = s2;
    t1 = t2;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  return {a, s0, t0};
}

// Rays of the minimal subdivision chain between u and w: normalize the cone
// to <(1,0), (a,m)> by a unimodular map, expand m/(m-a) as a continued
// fraction with minus signs, rebuild the chain u_{j+1} = b_j*u_j - u_{j-1}
// starting from (1,0), (1,1), and map the interior rays back.
std::vector<RayVector> hj_inserted_rays(RayVector u, RayVector w) {
  orient_2d(u, w);
  Int m = det2(u, w);
  if (m <= 1) return {};

  ExtGcd e = ext_gcd(u[0], u[1]);
  // N has rows (s, t) and (-u_y, u_x); N*u = (1,0), det N = 1.
  Int n00 = e.s, n01 = e.t, n10 = -u[1], n11 = u[0];
  Int a0 = n00 * w[0] + n01 * w[1];
  Int a = ((a0 % m) + m) % m;
  Int shift = (a - a0) / m;
  n00 += shift * n10;
  n01 += shift * n11;
  if (n00 * n11 - n01 * n10 != 1 || n10 * w[0] + n11 * w[1] != m || a < 1)
    throw FanError("cone normalization failed for rays " + ray_to_string(u) + " and " +
                   ray_to_string(w));

  std::vector<Int> bs;
  Int p = m, q = m - a;
  for (;;) {
    Int b = (p + q - 1) / q;
    bs.push_back(b);
    Int r = b * q - p;
    if (r == 0) break;
    p = q;
    q = r;
  }

  std::vector<RayVector> chain = {{Int(1), Int(0)}, {Int(1), Int(1)}};
  for (const Int& b : bs) {
    const RayVector& prev = chain[chain.size() - 2];
    const RayVector& last = chain.back();
    chain.push_back({b * last[0] - prev[0], b * last[1] - prev[1]});
  }
  if (chain.back() != RayVector{a, m})
    throw FanError("continued-fraction chain did not close between " + ray_to_string(u) +
                   " and " + ray_to_string(w));

  // Inverse of N, applied to the interior chain vertices.
  std::vector<RayVector> out;
  for (std::size_t j = 1; j + 1 < chain.size(); ++j) {
    const RayVector& c = chain[j];
    out.push_back({n11 * c[0] - n01 * c[1], -n10 * c[0] + n00 * c[1]});
  }
  return out;
}

}  // namespace

RayVector primitive(RayVector v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  if (g == 0) throw FanError("the zero vector generates no ray");
  for (Int& x : v) x /= g;
  return v;
}

Cone make_cone(int dimension, std::vector<RayVector> rays) {
  for (RayVector& r : rays) {
    if (static_cast<int>(r.size()) != dimension)
      throw FanError("ray " + ray_to_string(r) + " does not have " +
                     std::to_string(dimension) + " entries");
    r = primitive(std::move(r));
  }
  std::sort(rays.begin(), rays.end(), ray_less);
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  Cone c{std::move(rays)};
  if (ray_diagonal(c).size() != c.rays.size())
    throw FanError("rays are linearly dependent; only simplicial cones are supported");
  return c;
}

bool Fan::operator==(const Fan& o) const {
  if (dimension != o.dimension || cones.size() != o.cones.size()) return false;
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (!same_rays(cones[i], o.cones[i])) return false;
  return true;
}

Fan make_fan(int dimension, const std::vector<Cone>& cones) {
  std::vector<Cone> closed;
  for (const Cone& raw : cones) {
    Cone c = make_cone(dimension, raw.rays);
    // Faces of a simplicial cone are spanned by the subsets of its rays.
    std::size_t k = c.rays.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      Cone face;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::size_t{1} << i)) face.rays.push_back(c.rays[i]);
      closed.push_back(std::move(face));
    }
  }
  if (closed.empty()) return Fan{dimension, {}};
  std::sort(closed.begin(), closed.end(), cone_less);
  closed.erase(std::unique(closed.begin(), closed.end(), same_rays), closed.end());

  if (dimension == 2) {
    // Exact overlap detection: distinct 2D sectors whose interiors meet put
    // one sector's edge strictly inside the other; a separate 1D cone strictly
    // inside a sector also breaks the common-face axiom.
    std::vector<std::pair<RayVector, RayVector>> sectors;
    for (const Cone& c : closed)
      if (c.rays.size() == 2) {
        RayVector u = c.rays[0], w = c.rays[1];
        orient_2d(u, w);
        sectors.emplace_back(u, w);
      }
    for (std::size_t i = 0; i < sectors.size(); ++i)
      for (std::size_t j = i + 1; j < sectors.size(); ++j) {
        const auto& [u1, w1] = sectors[i];
        const auto& [u2, w2] = sectors[j];
        if (strictly_inside_2d(u2, u1, w1) || strictly_inside_2d(w2, u1, w1) ||
            strictly_inside_2d(u1, u2, w2) || strictly_inside_2d(w1, u2, w2))
          throw FanError("cones overlap without a common face");
      }
    for (const Cone& c : closed)
      if (c.rays.size() == 1)
        for (const auto& [u, w] : sectors)
          if (strictly_inside_2d(c.rays[0], u, w))
            throw FanError("ray " + ray_to_string(c.rays[0]) +
                           " pierces the interior of another cone");
  }
  return Fan{dimension, std::move(closed)};
}

bool cone_contains(const Cone& c, const RayVector& v) {
  // Solve sum(lambda_i * ray_i) = v exactly over Q by elimination on the
  // augmented (dimension x rays+1) system; membership needs a consistent
  // solution with every lambda nonnegative.
  std::size_t d = v.size(), k = c.rays.size();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = Rational(c.rays[j][i]);
    m[i][k] = Rational(v[i]);
  }
  std::vector<std::size_t> pivot_of_col(k, d);
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < d; ++col) {
    std::size_t p = row;
    while (p < d && m[p][col] == 0) ++p;
    if (p == d) continue;
    std::swap(m[row], m[p]);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col] / m[row][col];
      for (std::size_t j = col; j <= k; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_of_col[col] = row;
    ++row;
  }
  for (std::size_t i = row; i < d; ++i)
    if (m[i][k] != 0) return false;  // v outside the span
  for (std::size_t col = 0; col < k; ++col) {
    // Simplicial cones give every column a pivot; a free column would mean
    // dependent rays, rejected at construction.
    std::size_t p = pivot_of_col[col];
    if (p == d) throw FanError("membership test requires independent rays");
    if (m[p][k] / m[p][col] < 0) return false;
  }
  return true;
}

bool cone_is_smooth(const Cone& c) {
  std::vector<Int> diag = ray_diagonal(c);
  if (diag.size() != c.rays.size()) return false;
  for (const Int& x : diag)
    if (x != 1) return false;
  return true;
}

Int multiplicity(const Cone& c) {
  std::vector<Int> diag = ray_diagonal(c);
  if (diag.size() != c.rays.size())
    throw FanError("multiplicity requires a simplicial cone");
  Int prod = 1;
  for (const Int& x : diag) prod *= x;
  return prod;
}

Fan stellar_subdivide(const Fan& fan, const RayVector& ray) {
  RayVector r = primitive(ray);
  if (static_cast<int>(r.size()) != fan.dimension)
    throw FanError("subdivision ray has the wrong dimension");
  std::vector<Cone> next;
  bool in_support = false;
  for (const Cone& c : fan.cones) {
    if (!cone_contains(c, r)) {
      next.push_back(c);
      continue;
    }
    in_support = true;
    std::size_t k = c.rays.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      Cone face;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::size_t{1} << i)) face.rays.push_back(c.rays[i]);
      if (cone_contains(face, r)) continue;
      face.rays.push_back(r);
      next.push_back(std::move(face));
    }
  }
  if (!in_support) throw FanError("ray " + ray_to_string(r) + " lies outside the support");
  return make_fan(fan.dimension, next);
}

bool is_regular_fan(const Fan& fan) {
  for (const Cone& c : fan.cones)
    if (!cone_is_smooth(c)) return false;
  return true;
}

Fan resolve_fan_2d(const Fan& fan) {
  if (fan.dimension != 2) throw FanError("fan resolution is implemented for dimension 2");
  Fan out = fan;
  for (int guard = 0; guard < 100000; ++guard) {
    const Cone* singular = nullptr;
    for (const Cone& c : out.cones)
      if (c.rays.size() == 2 && multiplicity(c) != 1) {
        singular = &c;
        break;
      }
    if (!singular) return out;
    std::vector<RayVector> inserted = hj_inserted_rays(singular->rays[0], singular->rays[1]);
    for (const RayVector& r : inserted) out = stellar_subdivide(out, r);
  }
  throw FanError("fan resolution did not terminate");
}

Fan parse_fan(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t offset = 0;
  bool have_dim = false;
  int dimension = 0;
  std::vector<Cone> cones;
  while (std::getline(in, line)) {
    std::size_t line_start = offset;
    offset += line.size() + 1;
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
    if (trimmed.empty()) continue;
    if (!have_dim) {
      std::istringstream head(trimmed);
      std::string word;
      head >> word >> dimension;
      if (word != "dim" || head.fail() || dimension < 1)
        throw ParseError("expected a leading \"dim d\" line", line_start);
      have_dim = true;
      continue;
    }
    Cone c;
    std::istringstream cone_in(trimmed);
    std::string ray_text;
    while (std::getline(cone_in, ray_text, ';')) {
      RayVector ray;
      std::istringstream ray_in(ray_text);
      std::string entry;
      while (std::getline(ray_in, entry, ',')) {
        entry.erase(0, entry.find_first_not_of(" \t"));
        entry.erase(entry.find_last_not_of(" \t") + 1);
        try {
          ray.emplace_back(entry);
        } catch (const std::exception&) {
          throw ParseError("bad integer \"" + entry + "\" in ray", line_start);
        }
      }
      c.rays.push_back(std::move(ray));
    }
    try {
      cones.push_back(make_cone(dimension, std::move(c.rays)));
    } catch (const FanError& e) {
      throw ParseError(e.what(), line_start);
    }
  }
  if (!have_dim) throw ParseError("expected a leading \"dim d\" line", 0);
  try {
    return make_fan(dimension, cones);
  } catch (const FanError& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string fan_to_string(const Fan& fan) {
  std::string out = "dim " + std::to_string(fan.dimension) + "\n";
  for (const Cone& c : fan.cones) {
    if (c.rays.empty()) continue;
    bool maximal = true;
    for (const Cone& o : fan.cones) {
      if (&o == &c || o.rays.size() <= c.rays.size()) continue;
      if (std::includes(o.rays.begin(), o.rays.end(), c.rays.begin(), c.rays.end(),
                        ray_less)) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    std::string line;
    for (std::size_t i = 0; i < c.rays.size(); ++i) {
      if (i) line += ";";
      line += ray_to_string(c.rays[i]);
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace resk
