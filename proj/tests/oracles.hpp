#pragma once

#include <mixvol/linalg.hpp>

#include <array>
#include <map>
#include <set>

// Test-only oracles, independent of the geometry library:
//  - a small Buchberger engine over Q[x,y] for local multiplicities
//    (dim Q[x,y]/(I + m^T), stabilized in T, counted on the staircase)
//  - symbolic Sylvester resultants over Z[coefficients] for support-function
//    cross-checks.

namespace oracles {

using mixvol::Integer;
using mixvol::Rational;

// --- bivariate Buchberger ---------------------------------------------------

using Mono2 = std::array<int, 2>;

struct DegLex {
  bool operator()(const Mono2& a, const Mono2& b) const {
    int da = a[0] + a[1], db = b[0] + b[1];
    if (da != db) return da < db;
    return a < b;
  }
};

using Poly2 = std::map<Mono2, Rational, DegLex>;  // leading term at rbegin

inline Poly2 p2(std::initializer_list<std::pair<Mono2, long>> terms) {
  Poly2 f;
  for (const auto& [m, c] : terms)
    if (c != 0) f[m] = Rational(c);
  return f;
}

inline bool divides(const Mono2& a, const Mono2& b) { return a[0] <= b[0] && a[1] <= b[1]; }

inline void add_scaled(Poly2& f, const Poly2& g, const Rational& c, const Mono2& shift) {
  for (const auto& [m, a] : g) {
    Mono2 t{m[0] + shift[0], m[1] + shift[1]};
    auto it = f.find(t);
    if (it == f.end()) {
      Rational v = c * a;
      if (v != 0) f.emplace(t, std::move(v));
    } else {
      it->second += c * a;
      if (it->second == 0) f.erase(it);
    }
  }
}

inline Poly2 normal_form(Poly2 f, const std::vector<Poly2>& basis) {
  Poly2 remainder;
  while (!f.empty()) {
    auto lt = std::prev(f.end());
    bool reduced = false;
    for (const auto& g : basis) {
      auto glt = std::prev(g.end());
      if (!divides(glt->first, lt->first)) continue;
      Mono2 shift{lt->first[0] - glt->first[0], lt->first[1] - glt->first[1]};
      Rational c = -lt->second / glt->second;
      add_scaled(f, g, c, shift);
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder[lt->first] = lt->second;
      f.erase(lt->first);
    }
  }
  return remainder;
}

inline std::vector<Poly2> buchberger(std::vector<Poly2> basis) {
  basis.erase(std::remove_if(basis.begin(), basis.end(), [](const Poly2& f) { return f.empty(); }),
              basis.end());
  std::vector<std::pair<size_t, size_t>> queue;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) queue.emplace_back(i, j);
  while (!queue.empty()) {
    auto [i, j] = queue.back();
    queue.pop_back();
    const Mono2& mi = std::prev(basis[i].end())->first;
    const Mono2& mj = std::prev(basis[j].end())->first;
    Mono2 lcm{std::max(mi[0], mj[0]), std::max(mi[1], mj[1])};
    if (lcm[0] == mi[0] + mj[0] && lcm[1] == mi[1] + mj[1]) continue;  // coprime criterion
    Poly2 s;
    add_scaled(s, basis[i], Rational(1), Mono2{lcm[0] - mi[0], lcm[1] - mi[1]});
    add_scaled(s, basis[j], -std::prev(basis[i].end())->second / std::prev(basis[j].end())->second,
               Mono2{lcm[0] - mj[0], lcm[1] - mj[1]});
    Poly2 r = normal_form(std::move(s), basis);
    if (r.empty()) continue;
    for (size_t t = 0; t < basis.size(); ++t) queue.emplace_back(t, basis.size());
    basis.push_back(std::move(r));
  }
  return basis;
}

/// dim_C of Q[x,y]/ideal as a vector space, assuming it is finite and that
/// every standard monomial has both exponents < bound.
inline long staircase_dimension(const std::vector<Poly2>& groebner, int bound) {
  std::vector<Mono2> leads;
  for (const auto& g : groebner) leads.push_back(std::prev(g.end())->first);
  long count = 0;
  for (int a = 0; a < bound; ++a)
    for (int b = 0; b < bound; ++b) {
      Mono2 m{a, b};
      bool standard = true;
      for (const auto& l : leads)
        if (divides(l, m)) {
          standard = false;
          break;
        }
      if (standard) ++count;
    }
  return count;
}

/// Local multiplicity at the origin: dim Q[x,y]/(I + m^T), certified by
/// agreement at T and T+1 (then m^T lies in the localized ideal and the
/// global quotient is supported at the origin).
inline long local_multiplicity(const std::vector<Poly2>& gens, int t_start = 16) {
  auto dim_at = [&](int t) {
    std::vector<Poly2> basis = gens;
    for (int a = 0; a <= t; ++a) basis.push_back(p2({{Mono2{a, t - a}, 1}}));
    return staircase_dimension(buchberger(std::move(basis)), t + 1);
  };
  for (int t = t_start; t < t_start + 16; ++t) {
    long d0 = dim_at(t), d1 = dim_at(t + 1);
    if (d0 == d1) return d0;
  }
  throw std::runtime_error("local multiplicity did not stabilize");
}

// --- Macaulay truncation ------------------------------------------------------

inline Poly2 poly_mul(const Poly2& a, const Poly2& b) {
  Poly2 out;
  for (const auto& [m, c] : a) add_scaled(out, b, c, m);
  return out;
}

inline Poly2 poly_sub(Poly2 a, const Poly2& b) {
  add_scaled(a, b, Rational(-1), Mono2{0, 0});
  return a;
}

/// dim Q[x,y]/(I + m^T) by exact rank over the finite ring Q[x,y]/m^T:
/// the image of I there is spanned by the truncated monomial multiples of the
/// generators, so the dimension is a corank. Stabilization in T certifies
/// that m^T lies in the localized ideal, making this the local multiplicity
/// at the origin.
inline long truncated_quotient_dim(const std::vector<Poly2>& gens, int t) {
  std::vector<Mono2> monos;
  for (int a = 0; a < t; ++a)
    for (int b = 0; a + b < t; ++b) monos.push_back(Mono2{a, b});
  std::map<Mono2, int, DegLex> index;
  for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);
  std::vector<std::vector<Rational>> rows;
  for (const auto& g : gens)
    for (const auto& m : monos) {
      std::vector<Rational> row(monos.size(), Rational(0));
      bool nonzero = false;
      for (const auto& [gm, c] : g) {
        Mono2 shifted{gm[0] + m[0], gm[1] + m[1]};
        if (shifted[0] + shifted[1] >= t) continue;
        row[index[shifted]] = c;
        nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  return static_cast<long>(monos.size()) - mixvol::rank_of(rows);
}

inline long local_multiplicity_macaulay(const std::vector<Poly2>& gens, int t_start = 8) {
  for (int t = t_start; t < t_start + 24; ++t) {
    long d0 = truncated_quotient_dim(gens, t);
    long d1 = truncated_quotient_dim(gens, t + 1);
    if (d0 == d1) return d0;
  }
  throw std::runtime_error("local multiplicity did not stabilize");
}

// --- symbolic Sylvester resultants ------------------------------------------

/// Polynomial over Z in the coefficient variables c_0..c_{v-1}: exponent
/// vector -> integer coefficient.
using CoeffPoly = std::map<std::vector<int>, Integer>;

inline CoeffPoly coeff_var(int var, int nvars) {
  std::vector<int> e(nvars, 0);
  e[var] = 1;
  return {{e, Integer(1)}};
}

inline CoeffPoly cp_mul(const CoeffPoly& a, const CoeffPoly& b) {
  CoeffPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
      if (out[e] == 0) out.erase(e);
    }
  return out;
}

inline CoeffPoly cp_axpy(CoeffPoly a, const CoeffPoly& b, int sign) {
  for (const auto& [e, c] : b) {
    a[e] += sign * c;
    if (a[e] == 0) a.erase(e);
  }
  return a;
}

inline CoeffPoly sylvester_determinant(const std::vector<std::vector<CoeffPoly>>& m) {
  const size_t n = m.size();
  if (n == 1) return m[0][0];
  CoeffPoly det;
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].empty()) continue;
    std::vector<std::vector<CoeffPoly>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<CoeffPoly> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    CoeffPoly term = cp_mul(m[0][j], sylvester_determinant(minor));
    det = cp_axpy(std::move(det), term, j % 2 == 0 ? 1 : -1);
  }
  return det;
}

/// Exponent support of the classical resultant of two dense univariate
/// polynomials of degrees d0 and d1, in the flattened coefficient variables
/// (c_{0,0}..c_{d0,0}, c_{0,1}..c_{d1,1}).
inline std::set<std::vector<int>> resultant_support_exponents(int d0, int d1) {
  const int nvars = d0 + d1 + 2;
  const size_t size = static_cast<size_t>(d0 + d1);
  std::vector<std::vector<CoeffPoly>> m(size, std::vector<CoeffPoly>(size));
  for (int r = 0; r < d1; ++r)
    for (int i = 0; i <= d0; ++i) m[r][r + i] = coeff_var(i, nvars);
  for (int r = 0; r < d0; ++r)
    for (int i = 0; i <= d1; ++i) m[d1 + r][r + i] = coeff_var(d0 + 1 + i, nvars);
  CoeffPoly det = sylvester_determinant(m);
  std::set<std::vector<int>> support;
  for (const auto& [e, c] : det)
    if (c != 0) support.insert(e);
  return support;
}

}  // namespace oracles
