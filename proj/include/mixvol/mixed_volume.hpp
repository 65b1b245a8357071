#pragma once

#include <mixvol/pair.hpp>

namespace mixvol {

enum class PairMvMethod { polarization, face_formula, truncation };

/// Optional audit trail for --explain.
struct FacetTerm {
  Covector gamma;
  int slot = 0;
  Rational coefficient;
  Rational face_mixed_volume;
};

namespace detail {

inline void validate_pair_family(const std::vector<PolyhedronPair>& ps) {
  if (ps.empty()) throw precondition_error("no pairs given");
  const int n = ps[0].ambient_dim();
  if (static_cast<int>(ps.size()) != n)
    throw precondition_error("need dim-many pairs (got " + std::to_string(ps.size()) +
                             " in dimension " + std::to_string(n) + ")");
  for (const auto& p : ps) {
    if (p.ambient_dim() != n) throw precondition_error("mixed ambient dimensions");
    if (p.first().rays() != ps[0].first().rays())
      throw precondition_error("pairs have different support cones");
    p.require_bounded_difference();
  }
}

inline Rational pair_mv_polarization(const std::vector<PolyhedronPair>& ps) {
  const int n = static_cast<int>(ps.size());
  std::vector<std::optional<PolyhedronPair>> sums(size_t(1) << n);
  Rational total = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    unsigned low = mask & (mask - 1);
    int bit = __builtin_ctz(mask);
    sums[mask] = low == 0 ? ps[bit] : pair_sum(*sums[low], ps[bit]);
    int sign = ((n - __builtin_popcount(mask)) % 2 == 0) ? 1 : -1;
    total += sign * pair_volume(*sums[mask]);
  }
  return total / Rational(factorial(n));
}

/// Mixed volume of bounded polytopes lying in parallel hyperplanes
/// {gamma = c}, measured in the induced lattice of ker(gamma).
inline Rational face_mixed_volume(const std::vector<Polyhedron>& faces, const Covector& gamma,
                                  int ambient) {
  if (faces.empty()) return 1;
  std::vector<ZVec> basis = integer_kernel({gamma}, ambient);
  std::vector<Polyhedron> reduced;
  reduced.reserve(faces.size());
  for (const auto& f : faces)
    reduced.push_back(polytope_in_sublattice(f, f.vertices().front(), basis));
  return mixed_volume(reduced);
}

inline Rational pair_mv_faces(const std::vector<PolyhedronPair>& ps,
                              std::vector<FacetTerm>* explain) {
  const int n = static_cast<int>(ps.size());
  Polyhedron total_sum = minkowski_sum(ps[0].first(), ps[0].second());
  for (int i = 1; i < n; ++i) {
    total_sum = minkowski_sum(total_sum, ps[i].first());
    total_sum = minkowski_sum(total_sum, ps[i].second());
  }
  if (total_sum.dim() < n) return 0;
  Rational total = 0;
  for (const auto& facet : bounded_facet_normals(total_sum)) {
    const Covector& gamma = facet.first;
    for (int k = 0; k < n; ++k) {
      Rational coeff = *support_value(ps[k].second(), gamma) -
                       *support_value(ps[k].first(), gamma);
      if (coeff == 0) continue;
      std::vector<Polyhedron> faces;
      faces.reserve(n - 1);
      for (int i = 0; i < k; ++i) faces.push_back(support_face(ps[i].first(), gamma));
      for (int i = k + 1; i < n; ++i) faces.push_back(support_face(ps[i].second(), gamma));
      Rational mv = face_mixed_volume(faces, gamma, n);
      if (explain && mv != 0) explain->push_back({gamma, k, coeff, mv});
      total += coeff * mv;
    }
  }
  return total / n;
}

inline Rational pair_mv_truncation(const std::vector<PolyhedronPair>& ps) {
  const int n = ps[0].ambient_dim();
  Covector gamma0 = ps[0].gamma0();
  std::vector<const Polyhedron*> all;
  for (const auto& p : ps) {
    all.push_back(&p.first());
    all.push_back(&p.second());
  }
  Rational m(truncation_level(all, gamma0));
  std::vector<Polyhedron> firsts, seconds;
  firsts.reserve(n);
  seconds.reserve(n);
  for (const auto& p : ps) {
    firsts.push_back(truncate_le(p.first(), gamma0, m));
    seconds.push_back(truncate_le(p.second(), gamma0, m));
  }
  return mixed_volume(firsts) - mixed_volume(seconds);
}

}  // namespace detail

/// Mixed volume of dim-many pairs with a common support cone. The three
/// formulas (polarization over subset sums, the unsymmetrized facet sum, and
/// bounded truncation) return identical rationals; the facet sum is the
/// default.
inline Rational mixed_volume_pairs(const std::vector<PolyhedronPair>& ps,
                                   PairMvMethod method = PairMvMethod::face_formula,
                                   std::vector<FacetTerm>* explain = nullptr) {
  detail::validate_pair_family(ps);
  switch (method) {
    case PairMvMethod::polarization:
      return detail::pair_mv_polarization(ps);
    case PairMvMethod::truncation:
      return detail::pair_mv_truncation(ps);
    case PairMvMethod::face_formula:
    default:
      return detail::pair_mv_faces(ps, explain);
  }
}

// ---------------------------------------------------------------------------
// Prisms and Cayley polyhedra

/// conv of the operands placed over the vertices of a standard simplex:
/// operand i sits over b_i in R^(s-1), b_1 = 0, b_{i+1} = e_i. Empty operands
/// contribute nothing.
inline Polyhedron prism(const std::vector<Polyhedron>& operands) {
  if (operands.empty()) throw precondition_error("prism over nothing");
  const int s = static_cast<int>(operands.size());
  const int m = operands[0].ambient_dim();
  const int dim = (s - 1) + m;
  std::vector<QVec> pts;
  std::vector<ZVec> rays;
  for (int i = 0; i < s; ++i) {
    const Polyhedron& op = operands[i];
    if (op.ambient_dim() != m) throw precondition_error("prism operand dimension mismatch");
    if (op.is_empty()) continue;
    for (const auto& v : op.vertices()) {
      QVec w(dim, Rational(0));
      if (i > 0) w[i - 1] = 1;
      for (int j = 0; j < m; ++j) w[s - 1 + j] = v[j];
      pts.push_back(std::move(w));
    }
    for (const auto& r : op.rays()) {
      ZVec w(dim, 0);
      for (int j = 0; j < m; ++j) w[s - 1 + j] = r[j];
      rays.push_back(std::move(w));
    }
  }
  if (pts.empty()) return Polyhedron::empty(dim);
  return Polyhedron::from_points_rays(dim, std::move(pts), std::move(rays));
}

inline PolyhedronPair prism_pair(const std::vector<PolyhedronPair>& operands) {
  std::vector<Polyhedron> firsts, seconds;
  for (const auto& p : operands) {
    firsts.push_back(p.first());
    seconds.push_back(p.second());
  }
  return PolyhedronPair(prism(firsts), prism(seconds));
}

/// Cayley polyhedron: conv of {a} x Delta_a over the configuration points.
inline Polyhedron cayley_polyhedron(const std::vector<ZVec>& config,
                                    const std::vector<Polyhedron>& fibers) {
  if (config.empty()) throw precondition_error("empty point configuration");
  if (config.size() != fibers.size())
    throw precondition_error("configuration / fiber count mismatch");
  const int big_n = static_cast<int>(config[0].size());
  const int n = fibers[0].ambient_dim();
  std::vector<QVec> pts;
  std::vector<ZVec> rays;
  for (size_t i = 0; i < config.size(); ++i) {
    if (fibers[i].is_empty()) continue;
    for (const auto& v : fibers[i].vertices()) {
      QVec w(big_n + n);
      for (int j = 0; j < big_n; ++j) w[j] = Rational(config[i][j]);
      for (int j = 0; j < n; ++j) w[big_n + j] = v[j];
      pts.push_back(std::move(w));
    }
    for (const auto& r : fibers[i].rays()) {
      ZVec w(big_n + n, 0);
      for (int j = 0; j < n; ++j) w[big_n + j] = r[j];
      rays.push_back(std::move(w));
    }
  }
  if (pts.empty()) return Polyhedron::empty(big_n + n);
  return Polyhedron::from_points_rays(big_n + n, std::move(pts), std::move(rays));
}

// ---------------------------------------------------------------------------
// Face-class enumeration over the normal fan

namespace detail {

struct FaceKey {
  std::vector<int> verts;
  std::vector<int> rays;
  bool operator<(const FaceKey& o) const {
    if (verts != o.verts) return verts < o.verts;
    return rays < o.rays;
  }
  bool operator==(const FaceKey& o) const { return verts == o.verts && rays == o.rays; }
};

/// All nonempty faces of p (p itself included), as index sets into p's
/// vertex/ray lists, produced by closing the facet lattice under
/// intersection.
inline std::vector<FaceKey> all_faces(const Polyhedron& p) {
  const auto& facets = p.facets();
  const size_t nv = p.vertices().size(), nr = p.rays().size();
  std::vector<std::vector<bool>> vert_tight(facets.size(), std::vector<bool>(nv));
  std::vector<std::vector<bool>> ray_tight(facets.size(), std::vector<bool>(nr));
  for (size_t f = 0; f < facets.size(); ++f) {
    for (size_t i = 0; i < nv; ++i)
      vert_tight[f][i] = dot(facets[f].normal, p.vertices()[i]) == facets[f].offset;
    for (size_t i = 0; i < nr; ++i) ray_tight[f][i] = dot(facets[f].normal, p.rays()[i]) == 0;
  }
  FaceKey whole;
  for (size_t i = 0; i < nv; ++i) whole.verts.push_back(static_cast<int>(i));
  for (size_t i = 0; i < nr; ++i) whole.rays.push_back(static_cast<int>(i));
  std::set<FaceKey> seen{whole};
  std::vector<FaceKey> queue{whole};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    FaceKey cur = queue[qi];
    for (size_t f = 0; f < facets.size(); ++f) {
      FaceKey child;
      for (int i : cur.verts)
        if (vert_tight[f][i]) child.verts.push_back(i);
      for (int i : cur.rays)
        if (ray_tight[f][i]) child.rays.push_back(i);
      if (child.verts.empty()) continue;
      if (seen.insert(child).second) queue.push_back(child);
    }
  }
  return queue;
}

/// Sum of the primitive normals of all facets containing the face: a covector
/// in the relative interior of the face's normal cone (zero for the whole
/// polyhedron).
inline Covector face_normal_sum(const Polyhedron& p, const FaceKey& face) {
  Covector g(p.ambient_dim(), 0);
  for (const auto& f : p.facets()) {
    bool contains = true;
    for (int i : face.verts)
      if (dot(f.normal, p.vertices()[i]) != f.offset) {
        contains = false;
        break;
      }
    if (contains)
      for (int i : face.rays)
        if (dot(f.normal, p.rays()[i]) != 0) {
          contains = false;
          break;
        }
    if (contains) g = add(g, f.normal);
  }
  return g;
}

/// Unit cube summand, used to keep fan enumerations full-dimensional.
inline Polyhedron unit_cube(int n) {
  std::vector<QVec> pts;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    QVec v(n);
    for (int i = 0; i < n; ++i) v[i] = Rational((mask >> i) & 1u);
    pts.push_back(std::move(v));
  }
  return Polyhedron::from_points_rays(n, std::move(pts), {});
}

/// Representatives of the covector classes of the common normal fan of the
/// given polyhedra, restricted to the boundary of the support cone (the zero
/// covector included when the recession cone is nontrivial). Each class is a
/// covector whose tuple of support faces is constant on the class; distinct
/// classes can repeat a tuple, callers dedupe on the tuple when summing.
inline std::vector<Covector> boundary_covector_classes(const std::vector<Polyhedron>& ps,
                                                       const std::vector<ZVec>& recession) {
  const int n = ps[0].ambient_dim();
  if (recession.empty()) return {};
  Polyhedron u = unit_cube(n);
  for (const auto& p : ps) u = minkowski_sum(u, p);
  u = minkowski_sum(u, Polyhedron::from_points_rays(n, {QVec(n, Rational(0))}, recession));
  std::vector<Covector> out;
  for (const auto& face : all_faces(u)) {
    bool whole = face.verts.size() == u.vertices().size() && face.rays.size() == u.rays().size();
    if (face.rays.empty() && !whole) continue;  // bounded proper face: interior class
    out.push_back(face_normal_sum(u, face));
  }
  return out;
}

/// Covector classes interior to the support cone: bounded faces of the sum.
inline std::vector<Covector> interior_covector_classes(const std::vector<Polyhedron>& ps,
                                                       const std::vector<ZVec>& recession) {
  const int n = ps[0].ambient_dim();
  Polyhedron u = unit_cube(n);
  for (const auto& p : ps) u = minkowski_sum(u, p);
  if (!recession.empty())
    u = minkowski_sum(u, Polyhedron::from_points_rays(n, {QVec(n, Rational(0))}, recession));
  std::vector<Covector> out;
  for (const auto& face : all_faces(u)) {
    if (!face.rays.empty()) continue;
    if (face.verts.size() == u.vertices().size() && u.rays().empty()) {
      out.push_back(Covector(n, 0));  // bounded sum: the zero class is interior
      continue;
    }
    out.push_back(face_normal_sum(u, face));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Convenient collections and the stable mixed volume

struct ConvenienceReport {
  bool convenient = true;
  bool very_convenient = true;
  bool cone_convenient = true;
};

/// Checks the convenience conditions for the collection (Delta_i, N_i):
/// for every covector gamma on the boundary of the common support cone and
/// every delta in its interior there must be a nonempty index set I with
/// N_i(gamma) = Delta_i(gamma) on I and dim sum_{i in I} (N_i^gamma)^delta
/// <= |I| (strictly, for the "very" variant at gamma != 0; with 1 excluded
/// from I, for the "cone" variant).
inline ConvenienceReport is_convenient(const std::vector<Polyhedron>& deltas,
                                       const std::vector<Polyhedron>& ns) {
  if (deltas.size() != ns.size() || deltas.empty())
    throw precondition_error("collection size mismatch");
  const int n = deltas[0].ambient_dim();
  const std::vector<ZVec>& recession = deltas[0].rays();
  for (const auto& p : deltas)
    if (p.rays() != recession || p.ambient_dim() != n)
      throw precondition_error("support cone mismatch");
  for (const auto& p : ns)
    if (p.rays() != recession || p.ambient_dim() != n)
      throw precondition_error("support cone mismatch");

  ConvenienceReport rep;
  bool first_is_cone =
      deltas[0].vertices().size() == 1 && deltas[0].vertices()[0] == QVec(n, Rational(0));
  if (!first_is_cone) rep.cone_convenient = false;
  if (recession.empty()) return rep;  // no boundary covectors

  std::vector<Polyhedron> fan_inputs = deltas;
  fan_inputs.insert(fan_inputs.end(), ns.begin(), ns.end());
  for (const Covector& gamma : detail::boundary_covector_classes(fan_inputs, recession)) {
    std::vector<int> eligible;
    for (size_t i = 0; i < deltas.size(); ++i)
      if (*support_value(ns[i], gamma) == *support_value(deltas[i], gamma))
        eligible.push_back(static_cast<int>(i));
    const bool gamma_zero = is_zero(gamma);
    std::vector<Polyhedron> gamma_faces;
    for (int i : eligible) gamma_faces.push_back(support_face(ns[i], gamma));
    std::vector<Covector> deltas_classes =
        eligible.empty() ? std::vector<Covector>{Covector(n, 0)}
                         : detail::interior_covector_classes(gamma_faces, recession);
    for (const Covector& delta : deltas_classes) {
      bool ok = false, very_ok = false, cone_ok = false;
      std::vector<std::vector<QVec>> dirs(eligible.size());
      for (size_t e = 0; e < eligible.size(); ++e) {
        Polyhedron df = support_face(gamma_faces[e], delta);
        const QVec& base = df.vertices().front();
        for (const auto& v : df.vertices()) dirs[e].push_back(sub(v, base));
      }
      for (unsigned mask = 1; mask < (1u << eligible.size()); ++mask) {
        std::vector<QVec> combined;
        bool excludes_first = true;
        for (size_t e = 0; e < eligible.size(); ++e)
          if (mask & (1u << e)) {
            combined.insert(combined.end(), dirs[e].begin(), dirs[e].end());
            if (eligible[e] == 0) excludes_first = false;
          }
        int d = rank_of(combined);
        int size = __builtin_popcount(mask);
        if (d <= size) ok = true;
        bool strict = gamma_zero ? d <= size : d < size;
        if (strict) {
          very_ok = true;
          if (gamma_zero || excludes_first) cone_ok = true;
        }
        if (ok && very_ok && cone_ok) break;
      }
      rep.convenient = rep.convenient && ok;
      rep.very_convenient = rep.very_convenient && very_ok;
      rep.cone_convenient = rep.cone_convenient && cone_ok;
      if (!rep.convenient && !rep.very_convenient && !rep.cone_convenient) return rep;
    }
  }
  return rep;
}

struct StableMixedVolume {
  bool exists = false;
  Rational value;
};

/// Truncated-pair evaluation of the stable mixed volume: replace N_i by
/// H_{i,M} = conv(N_i ∪ (Delta_i ∩ {gamma0 >= M})) and scan M upward from the
/// vertex bound until two consecutive values agree. A plateau certifies
/// existence: for non-convenient collections the truncated values increase
/// strictly at every level.
inline StableMixedVolume stable_mixed_volume_check(
    const std::vector<std::pair<Polyhedron, Polyhedron>>& collection,
    std::optional<Covector> gamma0_opt = std::nullopt) {
  if (collection.empty()) throw precondition_error("empty collection");
  const int n = collection[0].first.ambient_dim();
  if (static_cast<int>(collection.size()) != n)
    throw precondition_error("need dim-many (Delta, N) pairs");
  const std::vector<ZVec>& recession = collection[0].first.rays();
  std::vector<const Polyhedron*> all;
  for (const auto& [d, s] : collection) {
    if (d.rays() != recession || s.rays() != recession)
      throw precondition_error("support cone mismatch");
    all.push_back(&d);
    all.push_back(&s);
  }
  Covector gamma0 =
      gamma0_opt ? *gamma0_opt : recession_interior_covector(n, recession);
  for (const auto& r : recession)
    if (dot(gamma0, r) <= 0) throw precondition_error("gamma0 not interior to the support cone");
  Integer level = detail::truncation_level(all, gamma0);

  auto value_at = [&](const Integer& m) {
    std::vector<PolyhedronPair> pairs;
    pairs.reserve(collection.size());
    for (const auto& [d, s] : collection) {
      Polyhedron upper = truncate_ge(d, gamma0, Rational(m));
      pairs.emplace_back(d, convex_union({s, upper}));
    }
    return mixed_volume_pairs(pairs, PairMvMethod::face_formula);
  };

  StableMixedVolume out;
  constexpr int kScanWindow = 16;
  Rational prev = value_at(level);
  for (int step = 1; step <= kScanWindow; ++step) {
    Rational next = value_at(level + step);
    if (next == prev) {
      out.exists = true;
      out.value = prev;
      return out;
    }
    if (next < prev) throw internal_error("truncated mixed volume decreased");
    prev = next;
  }
  out.exists = false;
  out.value = prev;
  return out;
}

/// The stable value itself; throws when the truncated values fail to
/// stabilize (equivalently, when the collection is not convenient).
inline Rational stable_mixed_volume_pairs(
    const std::vector<std::pair<Polyhedron, Polyhedron>>& collection,
    std::optional<Covector> gamma0 = std::nullopt) {
  StableMixedVolume r = stable_mixed_volume_check(collection, std::move(gamma0));
  if (!r.exists) throw precondition_error("stable mixed volume does not exist");
  return r.value;
}

}  // namespace mixvol
