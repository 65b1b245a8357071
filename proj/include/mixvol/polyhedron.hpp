#pragma once

#include <mixvol/double_description.hpp>

#include <map>
#include <set>

namespace mixvol {

/// Facet inequality normal.x >= offset (normal primitive integer), or an
/// equality normal.x == offset of the affine hull.
struct LinearCondition {
  ZVec normal;
  Rational offset;

  bool operator==(const LinearCondition& o) const {
    return normal == o.normal && offset == o.offset;
  }
  bool operator<(const LinearCondition& o) const {
    if (normal != o.normal) return normal < o.normal;
    return offset < o.offset;
  }
};

/// A rational convex polyhedron conv(vertices) + cone(rays) with pointed
/// recession cone, kept in canonical form: vertex and ray lists are
/// irredundant and sorted, rays are primitive, and the facet/equality
/// description is computed at construction and cached. The empty polyhedron
/// is a distinguished value. Instances are immutable.
class Polyhedron {
 public:
  static Polyhedron empty(int dim) {
    Polyhedron p;
    p.dim_ = dim;
    p.empty_ = true;
    return p;
  }

  static Polyhedron from_points_rays(int dim, std::vector<QVec> points, std::vector<ZVec> rays) {
    if (dim < 0 || dim > max_ambient_dim())
      throw precondition_error("ambient dimension " + std::to_string(dim) + " exceeds limit " +
                               std::to_string(max_ambient_dim()));
    for (const auto& p : points)
      if (static_cast<int>(p.size()) != dim) throw precondition_error("point dimension mismatch");
    for (const auto& r : rays)
      if (static_cast<int>(r.size()) != dim) throw precondition_error("ray dimension mismatch");
    if (points.empty()) return empty(dim);

    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<ZVec> prim_rays;
    for (auto& r : rays) {
      if (is_zero(r)) continue;
      prim_rays.push_back(primitive(std::move(r)));
    }
    std::sort(prim_rays.begin(), prim_rays.end());
    prim_rays.erase(std::unique(prim_rays.begin(), prim_rays.end()), prim_rays.end());

    if (!cone_is_pointed(dim, prim_rays))
      throw precondition_error("unbounded in opposite directions");

    Polyhedron p;
    p.dim_ = dim;
    p.empty_ = false;
    p.build_from_generators(std::move(points), std::move(prim_rays));
    return p;
  }

  static Polyhedron from_h_rep(int dim, const std::vector<LinearCondition>& equalities,
                               const std::vector<LinearCondition>& inequalities) {
    std::vector<ZVec> ineqs_h, eqs_h;
    ineqs_h.reserve(inequalities.size() + 1);
    for (const auto& c : inequalities) ineqs_h.push_back(homogenize(c));
    for (const auto& c : equalities) eqs_h.push_back(homogenize(c));
    ZVec t_nonneg(dim + 1, 0);
    t_nonneg[0] = 1;
    ineqs_h.push_back(t_nonneg);

    ConeDescription cd = dual_description(dim + 1, ineqs_h, eqs_h);
    std::vector<QVec> points;
    std::vector<ZVec> rays;
    for (const auto& g : cd.rays) {
      if (g[0] == 0) {
        rays.push_back(ZVec(g.begin() + 1, g.end()));
      } else {
        QVec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = make_rational(g[i + 1], g[0]);
        points.push_back(std::move(v));
      }
    }
    if (points.empty()) return empty(dim);
    if (!cd.lineality.empty()) throw internal_error("polyhedron with nonzero lineality");
    return from_points_rays(dim, std::move(points), std::move(rays));
  }

  int ambient_dim() const { return dim_; }
  bool is_empty() const { return empty_; }
  bool is_bounded() const { return rays_.empty(); }
  const std::vector<QVec>& vertices() const { return vertices_; }
  const std::vector<ZVec>& rays() const { return rays_; }
  const std::vector<LinearCondition>& equalities() const { return equalities_; }
  const std::vector<LinearCondition>& facets() const { return facets_; }

  /// Affine dimension (-1 for the empty polyhedron).
  int dim() const {
    if (empty_) return -1;
    std::vector<QVec> rows;
    for (const auto& e : equalities_) rows.push_back(to_qvec(e.normal));
    return dim_ - rank_of(rows);
  }

  bool contains(const QVec& x) const {
    if (empty_) return false;
    for (const auto& e : equalities_)
      if (dot(e.normal, x) != e.offset) return false;
    for (const auto& f : facets_)
      if (dot(f.normal, x) < f.offset) return false;
    return true;
  }

  /// True when every vertex is a lattice point.
  bool has_integer_vertices() const {
    for (const auto& v : vertices_)
      for (const auto& c : v)
        if (c.get_den() != 1) return false;
    return true;
  }

  bool operator==(const Polyhedron& o) const {
    return dim_ == o.dim_ && empty_ == o.empty_ && vertices_ == o.vertices_ && rays_ == o.rays_;
  }
  bool operator!=(const Polyhedron& o) const { return !(*this == o); }
  bool operator<(const Polyhedron& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_;
    if (empty_ != o.empty_) return empty_ < o.empty_;
    if (vertices_ != o.vertices_) return vertices_ < o.vertices_;
    return rays_ < o.rays_;
  }

 private:
  Polyhedron() = default;

  static ZVec homogenize(const LinearCondition& c) {
    // normal.x >= offset  ->  (-offset, normal).(t,x) >= 0, cleared to integers
    ZVec v(c.normal.size() + 1);
    Integer den = c.offset.get_den();
    v[0] = Integer(-c.offset.get_num());
    for (size_t i = 0; i < c.normal.size(); ++i) v[i + 1] = c.normal[i] * den;
    return primitive(std::move(v));
  }

  static bool cone_is_pointed(int dim, const std::vector<ZVec>& rays) {
    if (rays.empty()) return true;
    ConeDescription dual = dual_description(dim, rays);
    std::vector<ZVec> span(dual.lineality);
    span.insert(span.end(), dual.rays.begin(), dual.rays.end());
    return rank_of_z(span) == dim;
  }

  void build_from_generators(std::vector<QVec> points, std::vector<ZVec> rays) {
    const int d = dim_;
    std::vector<ZVec> gens;
    gens.reserve(points.size() + rays.size());
    for (const auto& p : points) {
      QVec h(d + 1);
      h[0] = 1;
      for (int i = 0; i < d; ++i) h[i + 1] = p[i];
      gens.push_back(primitive(to_integer_direction(h)));
    }
    for (const auto& r : rays) {
      ZVec h(d + 1, 0);
      for (int i = 0; i < d; ++i) h[i + 1] = r[i];
      gens.push_back(primitive(std::move(h)));
    }

    ConeDescription dual = dual_description(d + 1, gens);

    for (const auto& e : dual.lineality) {
      LinearCondition cond = dehomogenize(e);
      if (is_zero(cond.normal)) continue;  // cannot happen for a spanning set with t=1 points
      canonical_equality_sign(cond);
      equalities_.push_back(std::move(cond));
    }
    for (const auto& f : dual.rays) {
      if (std::all_of(f.begin() + 1, f.end(), [](const Integer& x) { return x == 0; }))
        continue;  // the t >= 0 artifact
      facets_.push_back(dehomogenize(f));
    }
    std::sort(equalities_.begin(), equalities_.end());
    std::sort(facets_.begin(), facets_.end());

    // keep only extreme generators: tight covectors must span a hyperplane
    std::vector<ZVec> all_covectors(dual.lineality);
    all_covectors.insert(all_covectors.end(), dual.rays.begin(), dual.rays.end());
    const size_t n_lin = dual.lineality.size();
    for (size_t pi = 0; pi < points.size(); ++pi) {
      QVec h(d + 1);
      h[0] = 1;
      for (int i = 0; i < d; ++i) h[i + 1] = points[pi][i];
      if (generator_is_extreme(all_covectors, n_lin, h, d)) vertices_.push_back(points[pi]);
    }
    for (size_t ri = 0; ri < rays.size(); ++ri) {
      QVec h(d + 1, Rational(0));
      for (int i = 0; i < d; ++i) h[i + 1] = Rational(rays[ri][i]);
      if (generator_is_extreme(all_covectors, n_lin, h, d)) rays_.push_back(rays[ri]);
    }
    if (vertices_.empty()) throw internal_error("canonicalization lost all vertices");
  }

  static bool generator_is_extreme(const std::vector<ZVec>& covectors, size_t n_lin, const QVec& g,
                                   int d) {
    std::vector<QVec> tight;
    for (size_t i = 0; i < covectors.size(); ++i) {
      Rational s = dot(covectors[i], g);
      if (i < n_lin || s == 0) tight.push_back(to_qvec(covectors[i]));
    }
    return rank_of(tight) == d;
  }

  static LinearCondition dehomogenize(const ZVec& y) {
    ZVec normal(y.begin() + 1, y.end());
    Integer g = content(normal);
    LinearCondition c;
    if (g > 1) {
      for (auto& x : normal) x /= g;
      c.offset = make_rational(-y[0], g);
    } else {
      c.offset = Rational(-y[0]);
    }
    c.normal = std::move(normal);
    return c;
  }

  static void canonical_equality_sign(LinearCondition& c) {
    for (const auto& x : c.normal) {
      if (x > 0) return;
      if (x < 0) {
        c.normal = negate(std::move(c.normal));
        c.offset = -c.offset;
        return;
      }
    }
  }

  int dim_ = 0;
  bool empty_ = true;
  std::vector<QVec> vertices_;
  std::vector<ZVec> rays_;
  std::vector<LinearCondition> equalities_;
  std::vector<LinearCondition> facets_;
};

// ---------------------------------------------------------------------------
// Constructions

inline QVec q_point(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rational(static_cast<int>(x)));
  return v;
}

inline ZVec z_vec(std::initializer_list<long> xs) {
  ZVec v;
  for (long x : xs) v.push_back(Integer(static_cast<long>(x)));
  return v;
}

inline std::vector<ZVec> orthant_rays(int n) {
  std::vector<ZVec> rays;
  for (int i = 0; i < n; ++i) rays.push_back(unit_vector(n, i));
  std::sort(rays.begin(), rays.end());  // canonical order, comparable with Polyhedron::rays()
  return rays;
}

/// The positive orthant R^n_+ as a polyhedron.
inline Polyhedron positive_orthant(int n) {
  return Polyhedron::from_points_rays(n, {QVec(n, Rational(0))}, orthant_rays(n));
}

/// conv(points) + cone(rays); errors if the rays do not span a pointed cone.
inline Polyhedron convex_hull(int dim, std::vector<QVec> points, std::vector<ZVec> rays) {
  if (points.empty()) throw precondition_error("convex hull of no points");
  return Polyhedron::from_points_rays(dim, std::move(points), std::move(rays));
}

/// Newton polyhedron conv(exponents) + R^n_+.
inline Polyhedron newton_polyhedron(int n, const std::vector<ZVec>& exponents) {
  std::vector<QVec> pts;
  pts.reserve(exponents.size());
  for (const auto& e : exponents) pts.push_back(to_qvec(e));
  return Polyhedron::from_points_rays(n, std::move(pts), orthant_rays(n));
}

/// {x in R^n_+ : sum x_i >= s}, the Newton polyhedron of a generic degree-s form.
inline Polyhedron simplex_complement(int n, long s = 1) {
  std::vector<QVec> pts;
  for (int i = 0; i < n; ++i) {
    QVec p(n, Rational(0));
    p[i] = Rational(static_cast<long>(s));
    pts.push_back(std::move(p));
  }
  return Polyhedron::from_points_rays(n, std::move(pts), orthant_rays(n));
}

inline Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw precondition_error("dimension mismatch");
  if (p.is_empty() || q.is_empty()) return Polyhedron::empty(p.ambient_dim());
  std::vector<QVec> pts;
  pts.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& v : p.vertices())
    for (const auto& w : q.vertices()) pts.push_back(add(v, w));
  std::vector<ZVec> rays = p.rays();
  rays.insert(rays.end(), q.rays().begin(), q.rays().end());
  return Polyhedron::from_points_rays(p.ambient_dim(), std::move(pts), std::move(rays));
}

/// conv of the union; empty operands are neutral.
inline Polyhedron convex_union(const std::vector<Polyhedron>& ps) {
  if (ps.empty()) throw precondition_error("convex union of nothing");
  int dim = ps[0].ambient_dim();
  std::vector<QVec> pts;
  std::vector<ZVec> rays;
  for (const auto& p : ps) {
    if (p.ambient_dim() != dim) throw precondition_error("mixed ambient dimensions");
    if (p.is_empty()) continue;
    pts.insert(pts.end(), p.vertices().begin(), p.vertices().end());
    rays.insert(rays.end(), p.rays().begin(), p.rays().end());
  }
  if (pts.empty()) return Polyhedron::empty(dim);
  return Polyhedron::from_points_rays(dim, std::move(pts), std::move(rays));
}

inline Polyhedron translate(const Polyhedron& p, const QVec& t) {
  if (p.is_empty()) return p;
  std::vector<QVec> pts;
  for (const auto& v : p.vertices()) pts.push_back(add(v, t));
  return Polyhedron::from_points_rays(p.ambient_dim(), std::move(pts), p.rays());
}

/// Re-embed coordinates: coordinate i of p goes to coordinate target[i].
inline Polyhedron embed_map(const Polyhedron& p, int total_dim, const std::vector<int>& target) {
  if (p.is_empty()) return Polyhedron::empty(total_dim);
  std::vector<QVec> pts;
  for (const auto& v : p.vertices()) {
    QVec w(total_dim, Rational(0));
    for (size_t i = 0; i < v.size(); ++i) w[target[i]] = v[i];
    pts.push_back(std::move(w));
  }
  std::vector<ZVec> rays;
  for (const auto& r : p.rays()) {
    ZVec w(total_dim, 0);
    for (size_t i = 0; i < r.size(); ++i) w[target[i]] = r[i];
    rays.push_back(std::move(w));
  }
  return Polyhedron::from_points_rays(total_dim, std::move(pts), std::move(rays));
}

/// Place p's coordinates at [offset, offset + dim(p)), zero elsewhere.
inline Polyhedron embed_at(const Polyhedron& p, int total_dim, int offset) {
  std::vector<int> target(p.ambient_dim());
  for (int i = 0; i < p.ambient_dim(); ++i) target[i] = offset + i;
  return embed_map(p, total_dim, target);
}

// ---------------------------------------------------------------------------
// Support functions and faces

/// min of gamma over p, or nullopt when unbounded below (gamma outside the
/// support cone).
inline std::optional<Rational> support_value(const Polyhedron& p, const Covector& gamma) {
  if (p.is_empty()) throw precondition_error("support value of empty polyhedron");
  for (const auto& r : p.rays())
    if (dot(gamma, r) < 0) return std::nullopt;
  std::optional<Rational> best;
  for (const auto& v : p.vertices()) {
    Rational s = dot(gamma, v);
    if (!best || s < *best) best = s;
  }
  return best;
}

/// The face {x in p : gamma.x = min}; errors if the min is -inf.
inline Polyhedron support_face(const Polyhedron& p, const Covector& gamma) {
  auto val = support_value(p, gamma);
  if (!val) throw precondition_error("covector outside support cone");
  std::vector<QVec> pts;
  for (const auto& v : p.vertices())
    if (dot(gamma, v) == *val) pts.push_back(v);
  std::vector<ZVec> rays;
  for (const auto& r : p.rays())
    if (dot(gamma, r) == 0) rays.push_back(r);
  return Polyhedron::from_points_rays(p.ambient_dim(), std::move(pts), std::move(rays));
}

/// All primitive interior covectors with a bounded facet, paired with the facet.
inline std::vector<std::pair<Covector, Polyhedron>> bounded_facet_normals(const Polyhedron& p) {
  if (p.is_empty()) throw precondition_error("facets of empty polyhedron");
  std::vector<std::pair<Covector, Polyhedron>> out;
  for (const auto& f : p.facets()) {
    bool ray_tight = false;
    for (const auto& r : p.rays())
      if (dot(f.normal, r) == 0) {
        ray_tight = true;
        break;
      }
    if (ray_tight) continue;  // facet is unbounded, normal is on the support-cone boundary
    out.emplace_back(f.normal, support_face(p, f.normal));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Intersections

inline Polyhedron intersect_with(const Polyhedron& p, const std::vector<LinearCondition>& extra_eqs,
                                 const std::vector<LinearCondition>& extra_ineqs) {
  if (p.is_empty()) return p;
  std::vector<LinearCondition> eqs = p.equalities();
  eqs.insert(eqs.end(), extra_eqs.begin(), extra_eqs.end());
  std::vector<LinearCondition> ineqs = p.facets();
  ineqs.insert(ineqs.end(), extra_ineqs.begin(), extra_ineqs.end());
  return Polyhedron::from_h_rep(p.ambient_dim(), eqs, ineqs);
}

/// p ∩ {gamma.x <= bound}
inline Polyhedron truncate_le(const Polyhedron& p, const Covector& gamma, const Rational& bound) {
  return intersect_with(p, {}, {{negate(gamma), -bound}});
}

/// p ∩ {gamma.x >= bound}
inline Polyhedron truncate_ge(const Polyhedron& p, const Covector& gamma, const Rational& bound) {
  return intersect_with(p, {}, {{gamma, bound}});
}

/// p ∩ R^J re-coordinatized into R^|J| (J 0-based, sorted). Empty result is a
/// value, not an error.
inline Polyhedron restrict_to_axes(const Polyhedron& p, const std::vector<int>& axes) {
  const int n = p.ambient_dim();
  std::vector<bool> keep(n, false);
  for (int j : axes) {
    if (j < 0 || j >= n) throw precondition_error("axis index out of range");
    keep[j] = true;
  }
  std::vector<LinearCondition> eqs;
  for (int i = 0; i < n; ++i)
    if (!keep[i]) eqs.push_back({unit_vector(n, i), Rational(0)});
  Polyhedron slice = intersect_with(p, eqs, {});
  if (slice.is_empty()) return Polyhedron::empty(static_cast<int>(axes.size()));
  std::vector<QVec> pts;
  for (const auto& v : slice.vertices()) {
    QVec w;
    for (int j : axes) w.push_back(v[j]);
    pts.push_back(std::move(w));
  }
  std::vector<ZVec> rays;
  for (const auto& r : slice.rays()) {
    ZVec w;
    for (int j : axes) w.push_back(r[j]);
    rays.push_back(std::move(w));
  }
  return Polyhedron::from_points_rays(static_cast<int>(axes.size()), std::move(pts),
                                      std::move(rays));
}

// ---------------------------------------------------------------------------
// Recession-cone helpers

/// A covector strictly positive on the recession cone minus the origin
/// (the zero covector when the polyhedron is bounded). Sum of the facet
/// normals of the recession cone.
inline Covector recession_interior_covector(int dim, const std::vector<ZVec>& rays) {
  Covector gamma(dim, 0);
  if (rays.empty()) return gamma;
  Polyhedron cone = Polyhedron::from_points_rays(dim, {QVec(dim, Rational(0))}, rays);
  for (const auto& f : cone.facets()) gamma = add(gamma, f.normal);
  return gamma;
}

/// Generators of the support cone (dual of the recession cone): lineality
/// vectors plus extreme rays. Full-dimensional exactly when the recession
/// cone is pointed, which our polyhedra guarantee.
struct SupportCone {
  std::vector<ZVec> lineality;
  std::vector<ZVec> rays;
};

inline SupportCone support_cone(const Polyhedron& p) {
  ConeDescription cd = dual_description(p.ambient_dim(), p.rays());
  return {cd.lineality, cd.rays};
}

}  // namespace mixvol
