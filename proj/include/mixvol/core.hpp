#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixvol {

using Integer = mpz_class;
using Rational = mpq_class;

// Integer covectors / ray directions and rational points.
using ZVec = std::vector<Integer>;
using QVec = std::vector<Rational>;
using Covector = ZVec;

/// A violated operation hypothesis (unbounded symmetric difference,
/// shape mismatch, ...). Maps to CLI exit code 2.
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input (bad JSON, missing fields). Maps to CLI exit code 3.
struct schema_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant; never expected on valid inputs.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// Ambient-dimension bound enforced at polyhedron construction.
/// The CLI overrides it from MIXVOL_MAX_DIM.
inline int& max_ambient_dim() {
  static int limit = 8;
  return limit;
}

inline Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw precondition_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Canonical "p/q" (bare integer when q = 1).
inline std::string rational_to_string(const Rational& q) {
  return q.get_str();
}

inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Integer(text));
    }
    return make_rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw schema_error("cannot parse rational '" + text + "'");
  }
}

inline Integer floor_int(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_int(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer dot(const ZVec& a, const ZVec& b) {
  Integer s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const ZVec& a, const QVec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

inline Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Integer content(const ZVec& v) {
  Integer g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

inline bool is_zero(const ZVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

/// Divide out the content. The zero vector stays zero (and is never primitive).
inline ZVec primitive(ZVec v) {
  Integer g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

inline bool is_primitive(const ZVec& v) {
  return !is_zero(v) && content(v) == 1;
}

/// Clear denominators: smallest positive multiple of v with integer entries.
inline ZVec to_integer_direction(const QVec& v) {
  Integer lcm = 1;
  for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  ZVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Integer(v[i].get_num() * (lcm / v[i].get_den()));
  return out;
}

inline QVec to_qvec(const ZVec& v) {
  QVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

inline ZVec negate(ZVec v) {
  for (auto& x : v) x = -x;
  return v;
}

inline ZVec add(const ZVec& a, const ZVec& b) {
  ZVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline QVec add(const QVec& a, const QVec& b) {
  QVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline QVec sub(const QVec& a, const QVec& b) {
  QVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline ZVec unit_vector(int n, int i) {
  ZVec e(n, 0);
  e[i] = 1;
  return e;
}

}  // namespace mixvol
