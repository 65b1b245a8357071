#pragma once

#include <mixvol/volume.hpp>

namespace mixvol {

namespace detail {

inline Integer truncation_level(const std::vector<const Polyhedron*>& ps, const Covector& gamma) {
  Integer m = 0;
  for (const auto* p : ps)
    for (const auto& v : p->vertices()) m = std::max(m, ceil_int(dot(gamma, v)));
  return m + 1;
}

}  // namespace detail

/// Ordered pair (A, B) of polyhedra with identical recession cones. Whether
/// the symmetric difference is bounded is decided at construction and stored;
/// volume-type operations require it.
///
/// Boundedness test: with gamma0 interior to the support cone and M above
/// every vertex, A and B have bounded symmetric difference iff
/// A ∩ {gamma0 >= M} = B ∩ {gamma0 >= M}; the truncation by {gamma0 <= M}
/// then captures both difference regions exactly.
class PolyhedronPair {
 public:
  PolyhedronPair(Polyhedron a, Polyhedron b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.ambient_dim() != b_.ambient_dim()) throw precondition_error("pair dimension mismatch");
    if (a_.is_empty() || b_.is_empty()) throw precondition_error("pair component is empty");
    if (a_.rays() != b_.rays()) throw precondition_error("pair support cones differ");
    gamma0_ = recession_interior_covector(a_.ambient_dim(), a_.rays());
    level_ = detail::truncation_level({&a_, &b_}, gamma0_);
    bounded_difference_ = truncate_ge(a_, gamma0_, Rational(level_)) ==
                          truncate_ge(b_, gamma0_, Rational(level_));
  }

  const Polyhedron& first() const { return a_; }
  const Polyhedron& second() const { return b_; }
  int ambient_dim() const { return a_.ambient_dim(); }
  bool bounded_difference() const { return bounded_difference_; }
  const Covector& gamma0() const { return gamma0_; }

  bool has_integer_vertices() const {
    return a_.has_integer_vertices() && b_.has_integer_vertices();
  }

  void require_bounded_difference() const {
    if (!bounded_difference_) throw precondition_error("symmetric difference unbounded");
  }

 private:
  Polyhedron a_, b_;
  Covector gamma0_;
  Integer level_;
  bool bounded_difference_;
};

inline PolyhedronPair pair_sum(const PolyhedronPair& p, const PolyhedronPair& q) {
  return PolyhedronPair(minkowski_sum(p.first(), q.first()),
                        minkowski_sum(p.second(), q.second()));
}

/// vol(A \ B) - vol(B \ A), via a shared truncation: both difference regions
/// lie below the level, so the truncated volumes differ by exactly the pair
/// volume.
inline Rational pair_volume(const PolyhedronPair& p) {
  p.require_bounded_difference();
  const Covector& g = p.gamma0();
  Integer m = detail::truncation_level({&p.first(), &p.second()}, g);
  return ambient_volume(truncate_le(p.first(), g, Rational(m))) -
         ambient_volume(truncate_le(p.second(), g, Rational(m)));
}

/// I(A \ B) - I(B \ A), the signed lattice-point count of the pair.
inline Integer count_points_pair(const PolyhedronPair& p) {
  p.require_bounded_difference();
  const Covector& g = p.gamma0();
  Integer m = detail::truncation_level({&p.first(), &p.second()}, g);
  return count_points(truncate_le(p.first(), g, Rational(m))) -
         count_points(truncate_le(p.second(), g, Rational(m)));
}

}  // namespace mixvol
