#pragma once

#include <mixvol/mixed_volume.hpp>

#include <map>

namespace mixvol {

/// Exponent vector over the pair-valued variables.
using PairExponent = std::vector<int>;
using PairSeries = std::map<PairExponent, Rational>;

/// Formal rational function in pair-valued variables: numerator and optional
/// denominator (constant term 1 required, so the expansion at the origin
/// exists). Its value on bound pairs is the degree-n homogeneous part of the
/// expansion evaluated termwise through the mixed volume of pairs.
struct PairPolynomial {
  int nvars = 0;
  PairSeries numerator;
  PairSeries denominator;  // empty means 1
};

namespace detail {

inline int total_degree(const PairExponent& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

inline PairSeries series_mul(const PairSeries& a, const PairSeries& b, int cap) {
  PairSeries out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      PairExponent e(ea.size());
      int deg = 0;
      for (size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + eb[i];
        deg += e[i];
      }
      if (deg > cap) continue;
      Rational c = ca * cb;
      auto it = out.find(e);
      if (it == out.end())
        out.emplace(std::move(e), std::move(c));
      else {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
    }
  return out;
}

inline PairSeries series_add(PairSeries a, const PairSeries& b) {
  for (const auto& [e, c] : b) {
    auto it = a.find(e);
    if (it == a.end())
      a.emplace(e, c);
    else {
      it->second += c;
      if (it->second == 0) a.erase(it);
    }
  }
  return a;
}

/// 1/den as a series, truncated at total degree cap; den must have constant
/// term 1.
inline PairSeries series_inverse(const PairSeries& den, int nvars, int cap) {
  PairExponent zero(nvars, 0);
  auto it = den.find(zero);
  if (it == den.end() || it->second != 1)
    throw precondition_error("denominator constant term must be 1");
  PairSeries tail = den;
  tail.erase(zero);
  for (auto& [e, c] : tail) c = -c;  // inverse = sum over j of (-tail)^j
  PairSeries result{{zero, Rational(1)}};
  PairSeries power{{zero, Rational(1)}};
  for (int j = 1; j <= cap; ++j) {
    power = series_mul(power, tail, cap);
    if (power.empty()) break;
    result = series_add(std::move(result), power);
  }
  return result;
}

}  // namespace detail

/// Value of the rational function: expand to total degree n and evaluate the
/// degree-n part as sum of c_e * Vol(slots with multiplicities e).
inline Rational eval_pair_function(const PairPolynomial& f,
                                   const std::vector<PolyhedronPair>& bindings, int degree) {
  if (static_cast<int>(bindings.size()) != f.nvars)
    throw precondition_error("binding count mismatch");
  if (degree < 0) throw precondition_error("negative degree");
  PairSeries series = f.numerator;
  if (!f.denominator.empty()) {
    PairSeries inv = detail::series_inverse(f.denominator, f.nvars, degree);
    series = detail::series_mul(series, inv, degree);
  }
  Rational total = 0;
  for (const auto& [e, c] : series) {
    if (detail::total_degree(e) != degree) continue;
    std::vector<PolyhedronPair> slots;
    slots.reserve(degree);
    for (int v = 0; v < f.nvars; ++v)
      for (int rep = 0; rep < e[v]; ++rep) slots.push_back(bindings[v]);
    total += c * mixed_volume_pairs(slots);
  }
  return total;
}

/// mu_m(N_0..N_k) = m! * value of prod_i (R^m_+, N_i) / (1 + (R^m_+, N_i))
/// in dimension m. Each complement R^m_+ \ N_i must be bounded.
inline Rational mu_invariant(const std::vector<Polyhedron>& ns, int m) {
  if (ns.empty()) throw precondition_error("mu of empty collection");
  const int vars = static_cast<int>(ns.size());
  std::vector<PolyhedronPair> bindings;
  bindings.reserve(vars);
  Polyhedron orthant = positive_orthant(m);
  for (const auto& n : ns) {
    if (n.ambient_dim() != m) throw precondition_error("mu dimension mismatch");
    PolyhedronPair p(orthant, n);
    if (!p.bounded_difference()) throw precondition_error("unbounded complement");
    bindings.push_back(std::move(p));
  }
  PairPolynomial f;
  f.nvars = vars;
  PairExponent ones(vars, 1);
  f.numerator[ones] = 1;
  for (unsigned mask = 0; mask < (1u << vars); ++mask) {
    PairExponent e(vars, 0);
    for (int v = 0; v < vars; ++v) e[v] = (mask >> v) & 1u;
    f.denominator[e] = 1;
  }
  Integer mfact = 1;
  for (int i = 2; i <= m; ++i) mfact *= i;
  return Rational(mfact) * eval_pair_function(f, bindings, m);
}

}  // namespace mixvol
