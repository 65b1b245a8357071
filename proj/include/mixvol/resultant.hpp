#pragma once

#include <mixvol/mixed_volume.hpp>

#include <limits>

namespace mixvol {

/// Finite subset of Z^N (stored deduplicated and sorted).
struct PointConfiguration {
  int rank = 0;  // N
  std::vector<ZVec> points;

  static PointConfiguration make(int rank, std::vector<ZVec> pts) {
    if (pts.empty()) throw precondition_error("empty point configuration");
    for (const auto& p : pts)
      if (static_cast<int>(p.size()) != rank)
        throw precondition_error("configuration point rank mismatch");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return {rank, std::move(pts)};
  }
};

namespace detail {

inline int config_sum_dim(const std::vector<PointConfiguration>& configs,
                          const std::vector<int>& subset) {
  std::vector<QVec> dirs;
  for (int i : subset) {
    const auto& pts = configs[i].points;
    for (size_t j = 1; j < pts.size(); ++j)
      dirs.push_back(to_qvec(add(pts[j], negate(pts[0]))));
  }
  return rank_of(dirs);
}

}  // namespace detail

/// codim(Sigma_1,...,Sigma_I) = I - dim conv(Sigma_1 + ... + Sigma_I).
inline int codim_config(const std::vector<PointConfiguration>& configs) {
  if (configs.empty()) throw precondition_error("no configurations");
  std::vector<int> all(configs.size());
  for (size_t i = 0; i < configs.size(); ++i) all[i] = static_cast<int>(i);
  return static_cast<int>(configs.size()) - detail::config_sum_dim(configs, all);
}

/// Codimension of the resultantal variety: max of codim over nonempty
/// subcollections.
inline int resultantal_codim(const std::vector<PointConfiguration>& configs) {
  const int n = static_cast<int>(configs.size());
  if (n == 0) throw precondition_error("no configurations");
  if (n > 12) throw precondition_error("too many configurations (limit 12)");
  int best = std::numeric_limits<int>::min();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    best = std::max(best,
                    static_cast<int>(subset.size()) - detail::config_sum_dim(configs, subset));
  }
  return best;
}

inline bool is_essential(const std::vector<PointConfiguration>& configs) {
  const int n = static_cast<int>(configs.size());
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  int full = n - detail::config_sum_dim(configs, all);
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    if (static_cast<int>(subset.size()) - detail::config_sum_dim(configs, subset) >= full)
      return false;
  }
  return true;
}

/// The unique minimal index set achieving the resultantal codimension
/// (0-based). When that codimension is <= 0 the resultantal variety is the
/// whole space and the essential core is the empty subcollection: the empty
/// subset has codimension 0, and for a positive maximum the achievers are
/// closed under intersection, which is what makes the minimal one unique.
inline std::vector<int> essential_subcollection(const std::vector<PointConfiguration>& configs) {
  const int n = static_cast<int>(configs.size());
  if (n == 0) throw precondition_error("no configurations");
  if (n > 12) throw precondition_error("too many configurations (limit 12)");
  const int target = resultantal_codim(configs);
  if (target <= 0) return {};
  std::vector<std::vector<int>> achievers;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    if (static_cast<int>(subset.size()) - detail::config_sum_dim(configs, subset) == target)
      achievers.push_back(std::move(subset));
  }
  // minimal by inclusion; the minimal achiever is unique, asserted here
  std::vector<std::vector<int>> minimal;
  for (const auto& a : achievers) {
    bool has_smaller = false;
    for (const auto& b : achievers) {
      if (b.size() >= a.size() || b == a) continue;
      if (std::includes(a.begin(), a.end(), b.begin(), b.end())) {
        has_smaller = true;
        break;
      }
    }
    if (!has_smaller) minimal.push_back(a);
  }
  if (minimal.size() != 1) throw internal_error("minimal essential subcollection not unique");
  return minimal[0];
}

/// Does (Sigma_1 + ... + Sigma_I) x {1} generate Z^(N+1)? (The standard
/// saturation normalization for resultantal formulas.)
inline bool spans_unit_index_lattice(const std::vector<PointConfiguration>& configs) {
  const int rank = configs[0].rank;
  ZVec base(rank + 1, 0);
  base[rank] = 1;
  std::vector<ZVec> gens;
  for (const auto& c : configs) {
    for (int j = 0; j < rank; ++j) base[j] += c.points[0][j];
    for (size_t p = 1; p < c.points.size(); ++p) {
      ZVec d(rank + 1, 0);
      for (int j = 0; j < rank; ++j) d[j] = c.points[p][j] - c.points[0][j];
      gens.push_back(std::move(d));
    }
  }
  gens.push_back(base);
  // index = covolume via the saturated-kernel trick: full rank and every
  // lattice vector of the span is generated iff the kernels agree; cheapest
  // exact check is a Hermite-style reduction to triangular form
  const int m = rank + 1;
  std::vector<ZVec> rows = gens;
  Integer det = 1;
  int lead = 0;
  for (int col = 0; col < m; ++col) {
    // reduce column col below `lead` using row gcd steps
    while (true) {
      int best = -1;
      for (size_t r = lead; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (best < 0 || abs(rows[r][col]) < abs(rows[best][col])))
          best = static_cast<int>(r);
      if (best < 0) return false;  // rank deficient
      std::swap(rows[best], rows[lead]);
      bool clean = true;
      for (size_t r = lead + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Integer q = rows[r][col] / rows[lead][col];
        for (int j = 0; j < m; ++j) rows[r][j] -= q * rows[lead][j];
        if (rows[r][col] != 0) clean = false;
      }
      if (clean) break;
    }
    det *= abs(rows[lead][col]);
    ++lead;
    if (lead == m) break;
  }
  return lead == m && det == 1;
}

/// Multiplicity of the resultantal singularity attached to an essential
/// collection of configurations and the Newton polyhedra of the map
/// components: I! times the mixed volume of the pairs
/// (conv(Sigma_i) x R^n_+, Cayley(Sigma_i, components_i)) in R^N + R^n,
/// n = I - N. components[i] is parallel to configs[i].points.
inline Rational resultantal_multiplicity(const std::vector<PointConfiguration>& configs,
                                         const std::vector<std::vector<Polyhedron>>& components) {
  const int count = static_cast<int>(configs.size());
  if (count == 0) throw precondition_error("no configurations");
  const int rank = configs[0].rank;
  const int n = count - rank;
  if (n <= 0) throw precondition_error("need more configurations than the lattice rank");
  if (static_cast<int>(components.size()) != count)
    throw precondition_error("component family count mismatch");
  for (int i = 0; i < count; ++i) {
    if (configs[i].rank != rank) throw precondition_error("configuration rank mismatch");
    if (components[i].size() != configs[i].points.size())
      throw precondition_error("components must match configuration points");
    for (const auto& d : components[i])
      if (d.ambient_dim() != n) throw precondition_error("component dimension mismatch");
  }
  if (!is_essential(configs))
    throw precondition_error("collection not essential; reduce via essential_subcollection");
  if (!spans_unit_index_lattice(configs))
    throw precondition_error("configuration sum does not generate the lattice Z^N x Z");

  std::vector<PolyhedronPair> pairs;
  pairs.reserve(count);
  std::vector<ZVec> tail_rays;
  for (int j = 0; j < n; ++j) tail_rays.push_back(unit_vector(rank + n, rank + j));
  for (int i = 0; i < count; ++i) {
    std::vector<QVec> base_pts;
    for (const auto& a : configs[i].points) {
      QVec v(rank + n, Rational(0));
      for (int j = 0; j < rank; ++j) v[j] = Rational(a[j]);
      base_pts.push_back(std::move(v));
    }
    Polyhedron base = Polyhedron::from_points_rays(rank + n, std::move(base_pts), tail_rays);
    pairs.emplace_back(std::move(base), cayley_polyhedron(configs[i].points, components[i]));
  }
  return Rational(factorial(count)) * mixed_volume_pairs(pairs);
}

/// Coefficient weights gamma_{a,i}, stored parallel to the configurations'
/// sorted point lists.
using CoefficientWeight = std::vector<std::vector<Integer>>;

/// Support function of the Newton polytope of the sparse resultant at the
/// weight gamma: (N+1)! times the mixed volume of the pairs
/// (A_{i,0}, A_{i,gamma}) in R + R^N, where A_{i,gamma} is the hull of the
/// points a of Sigma_i lifted to height -gamma_{a,i}, swept by the ray
/// {(t,0): t <= 0}. The max convention is -min(-gamma), realized by lifting
/// to +gamma_{a,i} and negating the mixed volume.
inline Rational resultant_support(const std::vector<PointConfiguration>& configs,
                                  const CoefficientWeight& gamma, bool max_convention = false,
                                  std::string* warning = nullptr) {
  const int count = static_cast<int>(configs.size());
  if (count == 0) throw precondition_error("no configurations");
  const int rank = configs[0].rank;
  if (count != rank + 1)
    throw precondition_error("resultant support needs N+1 configurations in Z^N");
  for (const auto& c : configs)
    if (c.rank != rank) throw precondition_error("configuration rank mismatch");
  if (static_cast<int>(gamma.size()) != count)
    throw precondition_error("weight family count mismatch");
  for (int i = 0; i < count; ++i)
    if (gamma[i].size() != configs[i].points.size())
      throw precondition_error("weight count mismatch for configuration " + std::to_string(i));
  if (!is_essential(configs))
    throw precondition_error("collection not essential; reduce via essential_subcollection");
  {
    std::vector<int> all(count);
    for (int i = 0; i < count; ++i) all[i] = i;
    if (detail::config_sum_dim(configs, all) != rank)
      throw precondition_error("configuration sum is dimension deficient");
  }
  if (warning && !spans_unit_index_lattice(configs))
    *warning = "configuration sum does not generate the unit-index lattice Z^N x Z";

  ZVec ray(rank + 1, 0);
  ray[0] = -1;
  std::vector<PolyhedronPair> pairs;
  pairs.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::vector<QVec> base_pts, lift_pts;
    for (size_t p = 0; p < configs[i].points.size(); ++p) {
      QVec b(rank + 1), l(rank + 1);
      b[0] = 0;
      l[0] = Rational(max_convention ? gamma[i][p] : -gamma[i][p]);
      for (int j = 0; j < rank; ++j) b[j + 1] = l[j + 1] = Rational(configs[i].points[p][j]);
      base_pts.push_back(std::move(b));
      lift_pts.push_back(std::move(l));
    }
    pairs.emplace_back(
        Polyhedron::from_points_rays(rank + 1, std::move(base_pts), {ray}),
        Polyhedron::from_points_rays(rank + 1, std::move(lift_pts), {ray}));
  }
  Rational value = Rational(factorial(count)) * mixed_volume_pairs(pairs);
  return max_convention ? Rational(-value) : value;
}

}  // namespace mixvol
