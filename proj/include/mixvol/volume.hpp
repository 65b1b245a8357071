#pragma once

#include <mixvol/polyhedron.hpp>

namespace mixvol {

namespace detail {

/// Express bounded p in coordinates of an integer column basis, translating
/// base to the origin. Coordinates of lattice directions stay integral
/// because the basis generates a saturated lattice.
inline std::vector<QVec> map_to_basis(const std::vector<QVec>& points, const QVec& base,
                                      const std::vector<ZVec>& basis) {
  std::vector<QVec> out;
  out.reserve(points.size());
  for (const auto& v : points) {
    auto u = coords_in_basis(basis, sub(v, base));
    if (!u) throw internal_error("point outside expected span");
    out.push_back(std::move(*u));
  }
  return out;
}

inline Polyhedron polytope_in_sublattice(const Polyhedron& p, const QVec& base,
                                         const std::vector<ZVec>& basis) {
  return Polyhedron::from_points_rays(static_cast<int>(basis.size()),
                                      map_to_basis(p.vertices(), base, basis), {});
}

inline Rational volume_recursive(const Polyhedron& p) {
  const int n = p.ambient_dim();
  if (n == 0) return 1;
  if (p.dim() < n) return 0;
  if (n == 1) {
    Rational lo = p.vertices().front()[0], hi = lo;
    for (const auto& v : p.vertices()) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return hi - lo;
  }
  // pyramids over facets from an arbitrary apex; the primitive facet normal
  // measures lattice height
  const QVec& apex = p.vertices().front();
  Rational total = 0;
  for (const auto& f : p.facets()) {
    Rational height = dot(f.normal, apex) - f.offset;
    if (height == 0) continue;
    Polyhedron face = support_face(p, f.normal);
    std::vector<ZVec> basis = integer_kernel({f.normal}, n);
    Polyhedron reduced = polytope_in_sublattice(face, face.vertices().front(), basis);
    total += height * volume_recursive(reduced);
  }
  return total / n;
}

}  // namespace detail

/// Lattice-normalized volume inside the affine span (unit lattice cell of the
/// span's direction lattice has volume 1; a point has volume 1, the empty
/// polyhedron 0).
inline Rational lattice_volume(const Polyhedron& p) {
  if (p.is_empty()) return 0;
  if (!p.is_bounded()) throw precondition_error("volume of unbounded polyhedron");
  const int d = p.dim();
  if (d == 0) return 1;
  if (d == p.ambient_dim()) return detail::volume_recursive(p);
  const QVec& base = p.vertices().front();
  std::vector<QVec> dirs;
  for (const auto& v : p.vertices()) dirs.push_back(sub(v, base));
  std::vector<ZVec> basis = lattice_basis_of_span(dirs, p.ambient_dim());
  return detail::volume_recursive(detail::polytope_in_sublattice(p, base, basis));
}

/// Full-dimensional volume: 0 for lower-dimensional sets.
inline Rational ambient_volume(const Polyhedron& p) {
  if (p.is_empty()) return 0;
  if (!p.is_bounded()) throw precondition_error("volume of unbounded polyhedron");
  if (p.dim() < p.ambient_dim()) return 0;
  return detail::volume_recursive(p);
}

/// Number of lattice points of a bounded polyhedron, by box scan with exact
/// membership tests.
inline Integer count_points(const Polyhedron& p) {
  if (p.is_empty()) return 0;
  if (!p.is_bounded()) throw precondition_error("lattice count of unbounded polyhedron");
  const int n = p.ambient_dim();
  if (n == 0) return 1;
  std::vector<Integer> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Rational mn = p.vertices().front()[i], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = ceil_int(mn);
    hi[i] = floor_int(mx);
    if (lo[i] > hi[i]) return 0;
  }
  Integer count = 0;
  ZVec x = lo;
  QVec xq(n);
  while (true) {
    for (int i = 0; i < n; ++i) xq[i] = Rational(x[i]);
    if (p.contains(xq)) ++count;
    int i = n - 1;
    while (i >= 0) {
      if (x[i] < hi[i]) {
        ++x[i];
        break;
      }
      x[i] = lo[i];
      --i;
    }
    if (i < 0) break;
  }
  return count;
}

/// Classical mixed volume of dim-many bounded polyhedra, normalized so the
/// diagonal is the lattice volume: (1/n!) sum over nonempty S of
/// (-1)^(n-|S|) vol(sum of S).
inline Rational mixed_volume(const std::vector<Polyhedron>& ps) {
  const int n = ps.empty() ? 0 : ps[0].ambient_dim();
  if (static_cast<int>(ps.size()) != n)
    throw precondition_error("mixed volume needs dim-many polyhedra");
  if (n == 0) return 1;
  for (const auto& p : ps) {
    if (p.ambient_dim() != n) throw precondition_error("mixed ambient dimensions");
    if (p.is_empty()) throw precondition_error("mixed volume of empty polyhedron");
    if (!p.is_bounded()) throw precondition_error("mixed volume of unbounded polyhedron");
  }
  std::vector<Polyhedron> sums(size_t(1) << n, Polyhedron::empty(n));
  Rational total = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    unsigned low = mask & (mask - 1);
    int bit = __builtin_ctz(mask);
    sums[mask] = low == 0 ? ps[bit] : minkowski_sum(sums[low], ps[bit]);
    int sign = ((n - __builtin_popcount(mask)) % 2 == 0) ? 1 : -1;
    total += sign * ambient_volume(sums[mask]);
  }
  return total / Rational(factorial(n));
}

}  // namespace mixvol
