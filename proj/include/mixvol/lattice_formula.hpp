#pragma once

#include <mixvol/mixed_volume.hpp>

namespace mixvol {

/// Entry of the prism grid: a pair, a plain bounded polyhedron, or empty.
/// The grid is n x k with entries in R^m, m = k - n + 1; columns give k
/// prisms in R^(n-1+m) whose mixed volume the lattice formula computes from
/// signed point counts of convex unions of partition sums.
struct PrismGridEntry {
  std::optional<PolyhedronPair> pair;
  std::optional<Polyhedron> plain;

  bool is_empty() const { return !pair && !plain; }
};

struct PrismTermLog {
  std::vector<int> columns;
  std::vector<int> composition;
  Integer count;
};

namespace detail {

template <typename T>
struct GridOps;

template <>
struct GridOps<PolyhedronPair> {
  static PolyhedronPair sum(const PolyhedronPair& a, const PolyhedronPair& b) {
    return pair_sum(a, b);
  }
  static PolyhedronPair join(const PolyhedronPair& a, const PolyhedronPair& b) {
    return PolyhedronPair(convex_union({a.first(), b.first()}),
                          convex_union({a.second(), b.second()}));
  }
  static Integer count(const PolyhedronPair& p) { return count_points_pair(p); }
  // the empty-index sum: the pair ({0},{0}), which counts to zero
  static Integer empty_sum_count(int) { return 0; }
};

template <>
struct GridOps<Polyhedron> {
  static Polyhedron sum(const Polyhedron& a, const Polyhedron& b) { return minkowski_sum(a, b); }
  static Polyhedron join(const Polyhedron& a, const Polyhedron& b) {
    return convex_union({a, b});
  }
  static Integer count(const Polyhedron& p) { return count_points(p); }
  static Integer empty_sum_count(int) { return 1; }  // I({0}) = 1
};

/// One term of the formula: for column subset J and composition (b_1..b_n) of
/// |J|, the convex union over ordered partitions of J with |J_i| = b_i of the
/// Minkowski sums sum_{i, j in J_i} B[i][j]. Returns the count (0 if every
/// partition summed to empty).
template <typename T>
Integer partition_union_count(const std::vector<std::vector<std::optional<T>>>& grid,
                              const std::vector<int>& cols, const std::vector<int>& comp, int m) {
  if (cols.empty()) return GridOps<T>::empty_sum_count(m);
  std::optional<T> acc;
  std::vector<int> remaining = comp;
  // assign each column in turn to a row with remaining multiplicity; a
  // partition touching an empty entry sums to empty and is pruned
  auto rec = [&](auto&& self, size_t idx, const std::optional<T>& partial) -> void {
    if (idx == cols.size()) {
      acc = acc ? std::optional<T>(GridOps<T>::join(*acc, *partial)) : partial;
      return;
    }
    for (int row = 0; row < static_cast<int>(remaining.size()); ++row) {
      if (remaining[row] == 0) continue;
      const auto& entry = grid[row][cols[idx]];
      if (!entry) continue;
      --remaining[row];
      std::optional<T> next =
          partial ? std::optional<T>(GridOps<T>::sum(*partial, *entry)) : entry;
      self(self, idx + 1, next);
      ++remaining[row];
    }
  };
  rec(rec, 0, std::nullopt);
  return acc ? GridOps<T>::count(*acc) : Integer(0);
}

template <typename T>
Rational prism_mv_lattice_impl(const std::vector<std::vector<std::optional<T>>>& grid, int m,
                               std::vector<PrismTermLog>* explain) {
  const int n = static_cast<int>(grid.size());
  const int k = static_cast<int>(grid[0].size());
  Integer kfact = 1;
  for (int i = 2; i <= k; ++i) kfact *= i;
  Rational total = 0;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < k; ++j)
      if (mask & (1u << j)) cols.push_back(j);
    const int sz = static_cast<int>(cols.size());
    int sign = ((k - sz) % 2 == 0) ? 1 : -1;
    // compositions of sz into n nonnegative parts
    std::vector<int> comp(n, 0);
    auto comps = [&](auto&& self, int row, int left) -> void {
      if (row == n - 1) {
        comp[row] = left;
        Integer c = partition_union_count<T>(grid, cols, comp, m);
        if (explain && c != 0) explain->push_back({cols, comp, c});
        total += sign * Rational(c);
        return;
      }
      for (int b = 0; b <= left; ++b) {
        comp[row] = b;
        self(self, row + 1, left - b);
      }
    };
    comps(comps, 0, sz);
  }
  return total / Rational(kfact);
}

}  // namespace detail

/// Mixed volume of the k column prisms via the lattice-point formula.
inline Rational prism_mixed_volume_lattice(
    const std::vector<std::vector<PrismGridEntry>>& grid,
    std::vector<PrismTermLog>* explain = nullptr) {
  if (grid.empty() || grid[0].empty()) throw precondition_error("empty prism grid");
  const int n = static_cast<int>(grid.size());
  const int k = static_cast<int>(grid[0].size());
  for (const auto& row : grid)
    if (static_cast<int>(row.size()) != k) throw precondition_error("ragged prism grid");

  bool any_pair = false, any_plain = false;
  int m = -1;
  for (const auto& row : grid)
    for (const auto& e : row) {
      if (e.pair) {
        any_pair = true;
        m = e.pair->ambient_dim();
      }
      if (e.plain) {
        any_plain = true;
        m = e.plain->ambient_dim();
      }
    }
  if (any_pair && any_plain) throw precondition_error("mixed pair/plain prism grid");
  if (m < 0) throw precondition_error("all prism grid entries empty");
  if (m != k - n + 1)
    throw precondition_error("grid shape violates m = k - n + 1 (m=" + std::to_string(m) +
                             ", k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");

  if (any_pair) {
    std::vector<std::vector<std::optional<PolyhedronPair>>> g(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) g[i].push_back(grid[i][j].pair);
    return detail::prism_mv_lattice_impl<PolyhedronPair>(g, m, explain);
  }
  std::vector<std::vector<std::optional<Polyhedron>>> g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      if (grid[i][j].plain && !grid[i][j].plain->is_bounded())
        throw precondition_error("plain prism entries must be bounded");
      g[i].push_back(grid[i][j].plain && grid[i][j].plain->is_empty() ? std::nullopt
                                                                      : grid[i][j].plain);
    }
  return detail::prism_mv_lattice_impl<Polyhedron>(g, m, explain);
}

/// The direct route: build the k column prisms and take their mixed volume.
inline Rational prism_mixed_volume_direct(const std::vector<std::vector<PrismGridEntry>>& grid) {
  if (grid.empty() || grid[0].empty()) throw precondition_error("empty prism grid");
  const int n = static_cast<int>(grid.size());
  const int k = static_cast<int>(grid[0].size());
  bool any_pair = false;
  for (const auto& row : grid)
    for (const auto& e : row)
      if (e.pair) any_pair = true;

  if (any_pair) {
    std::vector<PolyhedronPair> prisms;
    for (int j = 0; j < k; ++j) {
      std::vector<Polyhedron> firsts, seconds;
      int m = -1;
      for (int i = 0; i < n; ++i)
        if (grid[i][j].pair) m = grid[i][j].pair->ambient_dim();
      if (m < 0) throw precondition_error("prism column entirely empty");
      for (int i = 0; i < n; ++i) {
        if (grid[i][j].pair) {
          firsts.push_back(grid[i][j].pair->first());
          seconds.push_back(grid[i][j].pair->second());
        } else {
          firsts.push_back(Polyhedron::empty(m));
          seconds.push_back(Polyhedron::empty(m));
        }
      }
      prisms.emplace_back(prism(firsts), prism(seconds));
    }
    return mixed_volume_pairs(prisms);
  }
  std::vector<Polyhedron> prisms;
  for (int j = 0; j < k; ++j) {
    std::vector<Polyhedron> ops;
    int m = -1;
    for (int i = 0; i < n; ++i)
      if (grid[i][j].plain) m = grid[i][j].plain->ambient_dim();
    if (m < 0) throw precondition_error("prism column entirely empty");
    for (int i = 0; i < n; ++i)
      ops.push_back(grid[i][j].plain ? *grid[i][j].plain : Polyhedron::empty(m));
    prisms.push_back(prism(ops));
  }
  return mixed_volume(prisms);
}

}  // namespace mixvol
