#pragma once

#include <mixvol/pair_polynomial.hpp>

namespace mixvol {

namespace detail {

/// Binomial with C(n,k) = 0 whenever k is outside {0,...,n} (negative n
/// included).
inline Integer binomial_or_zero(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer b = 1;
  for (long i = 0; i < k; ++i) {
    b *= Integer(n - i);
    b /= Integer(i + 1);
  }
  return b;
}

inline std::vector<std::vector<int>> nonempty_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

inline bool touches_axis(const Polyhedron& p, int axis) {
  return !restrict_to_axes(p, {axis}).is_empty();
}

inline void require_bounded_complement(const Polyhedron& p, const char* what) {
  const int n = p.ambient_dim();
  if (p.rays() != orthant_rays(n))
    throw precondition_error(std::string(what) + ": recession cone is not the positive orthant");
  PolyhedronPair q(positive_orthant(n), p);
  if (!q.bounded_difference())
    throw precondition_error(std::string(what) + ": unbounded complement");
}

}  // namespace detail

struct TermLog {
  std::string label;
  Rational value;
};

// ---------------------------------------------------------------------------
// Milnor numbers of complete intersections

/// Milnor number of the complete intersection cut out by k+1 germs with the
/// given Newton polyhedra in R^n_+ (Oka's formula in pair-volume form):
/// (-1)^(n-k-1) * sum over nonempty axis subsets J of mu_|J| of the
/// restrictions, plus (-1)^(n-k). Empty restrictions contribute 0.
inline Rational milnor_number(const std::vector<Polyhedron>& deltas,
                              std::vector<TermLog>* explain = nullptr) {
  if (deltas.empty()) throw precondition_error("no Newton polyhedra given");
  const int n = deltas[0].ambient_dim();
  const int k = static_cast<int>(deltas.size()) - 1;
  if (k + 1 > n) throw precondition_error("more equations than variables");
  for (const auto& d : deltas) detail::require_bounded_complement(d, "milnor_number");
  Rational sum = 0;
  for (const auto& axes : detail::nonempty_subsets(n)) {
    std::vector<Polyhedron> restricted;
    bool empty_restriction = false;
    for (const auto& d : deltas) {
      Polyhedron r = restrict_to_axes(d, axes);
      if (r.is_empty()) {
        empty_restriction = true;
        break;
      }
      restricted.push_back(std::move(r));
    }
    if (empty_restriction) continue;
    Rational term = mu_invariant(restricted, static_cast<int>(axes.size()));
    if (explain) {
      std::string label = "J={";
      for (size_t i = 0; i < axes.size(); ++i)
        label += (i ? "," : "") + std::to_string(axes[i] + 1);
      explain->push_back({label + "}", term});
    }
    sum += term;
  }
  int sign1 = ((n - k - 1) % 2 == 0) ? 1 : -1;
  int sign2 = ((n - k) % 2 == 0) ? 1 : -1;
  return sign1 * sum + sign2;
}

// ---------------------------------------------------------------------------
// res_eg and the Gusein-Zade--Ebeling index

enum class ResEgMode {
  identical,    // second family (M_j*N_1*...*N_k, M_j*N_1*...*N_k)
  regularized,  // second family (R^m_+*N_1*...*N_k, M_j*N_1*...*N_k)
};

/// Mixed volume of the k pairs ({0} x R^m_+, {0} x N_i) and the m prism
/// pairs indexed by the M_j, in R^k + R^m.
inline Rational res_eg(const std::vector<Polyhedron>& ns, const std::vector<Polyhedron>& ms,
                       ResEgMode mode = ResEgMode::identical) {
  if (ms.empty()) throw precondition_error("res_eg needs at least one M polyhedron");
  const int m = ms[0].ambient_dim();
  const int k = static_cast<int>(ns.size());
  for (const auto& nn : ns) detail::require_bounded_complement(nn, "res_eg");
  for (const auto& mm : ms)
    if (mm.ambient_dim() != m) throw precondition_error("res_eg dimension mismatch");
  const int ambient = k + m;
  Polyhedron orthant = positive_orthant(m);
  std::vector<PolyhedronPair> pairs;
  pairs.reserve(ambient);
  for (const auto& nn : ns)
    pairs.emplace_back(embed_at(orthant, ambient, k), embed_at(nn, ambient, k));
  for (const auto& mm : ms) {
    std::vector<Polyhedron> ops_m{mm}, ops_o{orthant};
    for (const auto& nn : ns) {
      ops_m.push_back(nn);
      ops_o.push_back(nn);
    }
    Polyhedron pm = prism(ops_m);
    pairs.emplace_back(mode == ResEgMode::identical ? pm : prism(ops_o), pm);
  }
  return mixed_volume_pairs(pairs);
}

/// Index of the 1-form w_1 dx_1 + ... + w_n dx_n on the complete intersection
/// f_1 = ... = f_k = 0, from the Newton polyhedra of the f_i and of the
/// products x_i w_i: the alternating sum over nonempty axis subsets of
/// (m+k)! res_eg of the restrictions.
inline Rational gz_index(const std::vector<Polyhedron>& f_deltas,
                         const std::vector<Polyhedron>& form_deltas,
                         ResEgMode mode = ResEgMode::identical,
                         std::vector<TermLog>* explain = nullptr) {
  if (f_deltas.empty())
    throw precondition_error(
        "gz_index with k = 0 is unsupported: every pair in the identical-component family degenerates");
  const int n = form_deltas.empty() ? 0 : form_deltas[0].ambient_dim();
  const int k = static_cast<int>(f_deltas.size());
  if (static_cast<int>(form_deltas.size()) != n)
    throw precondition_error("need one form polyhedron per variable");
  for (const auto& d : f_deltas) {
    if (d.ambient_dim() != n) throw precondition_error("dimension mismatch");
    for (int i = 0; i < n; ++i)
      if (!detail::touches_axis(d, i))
        throw precondition_error("Newton polyhedron misses a coordinate axis");
  }
  for (int i = 0; i < n; ++i)
    if (!detail::touches_axis(form_deltas[i], i))
      throw precondition_error("form polyhedron misses its own axis");
  Rational total = 0;
  for (const auto& axes : detail::nonempty_subsets(n)) {
    const int m = static_cast<int>(axes.size());
    std::vector<Polyhedron> ns, ms;
    for (const auto& d : f_deltas) ns.push_back(restrict_to_axes(d, axes));
    for (int i : axes) ms.push_back(restrict_to_axes(form_deltas[i], axes));
    Rational r = res_eg(ns, ms, mode);
    int sign = ((n - m) % 2 == 0) ? 1 : -1;
    Rational term = sign * Rational(factorial(m + k)) * r;
    if (explain) {
      std::string label = "J={";
      for (size_t i = 0; i < axes.size(); ++i)
        label += (i ? "," : "") + std::to_string(axes[i] + 1);
      explain->push_back({label + "}", term});
    }
    total += term;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Determinantal / collection / resultantal multiplicities

/// Multiplicity of the (I x k)-determinantal germ with unmixed column Newton
/// polyhedra: sum over (k-I+1)-subsets of columns of n! Vol of those column
/// pairs padded with n-k+I-1 copies of L = (R^n_+, simplex complement).
inline Rational det_multiplicity(int n, int big_i, int k, const std::vector<Polyhedron>& columns,
                                 std::vector<TermLog>* explain = nullptr) {
  if (big_i >= k) throw precondition_error("determinantal shape needs I < k");
  if (n - k + big_i - 1 < 0) throw precondition_error("negative expected dimension");
  if (static_cast<int>(columns.size()) != k) throw precondition_error("need k column polyhedra");
  for (const auto& c : columns) {
    if (c.ambient_dim() != n) throw precondition_error("column dimension mismatch");
    detail::require_bounded_complement(c, "det_multiplicity");
  }
  Polyhedron orthant = positive_orthant(n);
  PolyhedronPair l_pair(orthant, simplex_complement(n));
  const int chosen = k - big_i + 1;
  const int l_copies = n - k + big_i - 1;
  Rational total = 0;
  std::vector<int> idx(chosen);
  auto rec = [&](auto&& self, int pos, int from) -> void {
    if (pos == chosen) {
      std::vector<PolyhedronPair> pairs;
      for (int j : idx) pairs.emplace_back(orthant, columns[j]);
      for (int c = 0; c < l_copies; ++c) pairs.push_back(l_pair);
      Rational term = Rational(factorial(n)) * mixed_volume_pairs(pairs);
      if (explain) {
        std::string label = "columns {";
        for (int t = 0; t < chosen; ++t) label += (t ? "," : "") + std::to_string(idx[t] + 1);
        explain->push_back({label + "}", term});
      }
      total += term;
      return;
    }
    for (int j = from; j < k; ++j) {
      idx[pos] = j;
      self(self, pos + 1, j + 1);
    }
  };
  rec(rec, 0, 0);
  return total;
}

struct MatrixBlock {
  int rows = 0;                                      // I_j
  int cols = 0;                                      // k_j
  std::vector<std::vector<Polyhedron>> entries;      // rows x cols, in R^n_+
};

/// Multiplicity of a collection of matrices of germs: (sum k_j)! times the
/// mixed volume of the per-column prisms of the pairs (R^n_+, Delta^{i,j}_c),
/// each block's prism embedded in its own simplex factor.
inline Rational collection_multiplicity(const std::vector<MatrixBlock>& blocks, int n) {
  if (blocks.empty()) throw precondition_error("no blocks");
  int expected_n = 0, simplex_dims = 0, total_cols = 0;
  for (const auto& b : blocks) {
    if (b.rows < 1 || b.cols < b.rows) throw precondition_error("block needs I_j <= k_j");
    if (static_cast<int>(b.entries.size()) != b.rows)
      throw precondition_error("block row count mismatch");
    for (const auto& row : b.entries)
      if (static_cast<int>(row.size()) != b.cols)
        throw precondition_error("block column count mismatch");
    expected_n += 1 + b.cols - b.rows;
    simplex_dims += b.rows - 1;
    total_cols += b.cols;
  }
  if (expected_n != n)
    throw precondition_error("shape violates n = sum(1 + k_j - I_j)");
  const int ambient = simplex_dims + n;
  Polyhedron orthant = positive_orthant(n);
  std::vector<PolyhedronPair> pairs;
  pairs.reserve(total_cols);
  int offset = 0;
  for (const auto& b : blocks) {
    // block prism lives in R^(I_j-1) + R^n; move the simplex coordinates to
    // this block's slot and the orthant coordinates to the shared tail
    std::vector<int> target(b.rows - 1 + n);
    for (int i = 0; i < b.rows - 1; ++i) target[i] = offset + i;
    for (int i = 0; i < n; ++i) target[b.rows - 1 + i] = simplex_dims + i;
    for (int c = 0; c < b.cols; ++c) {
      std::vector<PolyhedronPair> ops;
      for (int r = 0; r < b.rows; ++r) {
        const Polyhedron& d = b.entries[r][c];
        if (d.ambient_dim() != n) throw precondition_error("entry dimension mismatch");
        detail::require_bounded_complement(d, "collection_multiplicity");
        ops.emplace_back(orthant, d);
      }
      PolyhedronPair pr = prism_pair(ops);
      pairs.emplace_back(embed_map(pr.first(), ambient, target),
                         embed_map(pr.second(), ambient, target));
    }
    offset += b.rows - 1;
  }
  return Rational(factorial(total_cols)) * mixed_volume_pairs(pairs);
}

// ---------------------------------------------------------------------------
// Euler characteristics and radial indices of determinantal singularities

/// Euler characteristic of a Milnor fiber of f restricted to the unmixed
/// (I x k)-determinantal germ: the alternating double sum over axis subsets
/// J, column subsets {j_1..j_q} and multiplicities a_0 >= 1, a_{j_i} >= 1
/// with a_0 + sum a_{j_i} = |J| of
/// (-1)^(|J|+k-I) C(|J|+q-a_0-2, q-k+I-1) |J|! Vol(restricted pairs).
inline Rational euler_char_det(int n, int big_i, int k, const Polyhedron& delta0,
                               const std::vector<Polyhedron>& deltas,
                               std::vector<TermLog>* explain = nullptr) {
  if (big_i >= k) throw precondition_error("determinantal shape needs I < k");
  if (n > 2 * (k - big_i + 2)) throw precondition_error("n exceeds 2(k - I + 2)");
  if (static_cast<int>(deltas.size()) != k) throw precondition_error("need k column polyhedra");
  if (delta0.ambient_dim() != n) throw precondition_error("dimension mismatch");
  for (int i = 0; i < n; ++i)
    if (!detail::touches_axis(delta0, i))
      throw precondition_error("Delta_0 misses a coordinate axis");
  for (const auto& d : deltas) detail::require_bounded_complement(d, "euler_char_det");

  Rational total = 0;
  for (const auto& axes : detail::nonempty_subsets(n)) {
    const int m = static_cast<int>(axes.size());
    Polyhedron r_orthant = positive_orthant(m);
    Polyhedron r0 = restrict_to_axes(delta0, axes);
    if (r0.is_empty()) continue;
    std::vector<Polyhedron> rd;
    for (const auto& d : deltas) rd.push_back(restrict_to_axes(d, axes));
    int sign = ((m + k - big_i) % 2 == 0) ? 1 : -1;
    for (const auto& cols : detail::nonempty_subsets(k)) {
      const int q = static_cast<int>(cols.size());
      for (int a0 = 1; a0 + q <= m; ++a0) {
        Integer binom = detail::binomial_or_zero(m + q - a0 - 2, q - k + big_i - 1);
        if (binom == 0) continue;
        // compositions of m - a0 into q parts >= 1
        int spare = m - a0 - q;
        std::vector<int> extra(q, 0);
        auto rec = [&](auto&& self, int pos, int left) -> void {
          if (pos == q - 1) {
            extra[pos] = left;
            std::vector<PolyhedronPair> pairs;
            for (int c = 0; c < a0; ++c) pairs.emplace_back(r_orthant, r0);
            for (int t = 0; t < q; ++t)
              for (int c = 0; c < 1 + extra[t]; ++c)
                pairs.emplace_back(r_orthant, rd[cols[t]]);
            Rational vol = mixed_volume_pairs(pairs);
            Rational term =
                Rational(sign) * Rational(binom) * Rational(factorial(m)) * vol;
            if (explain && term != 0) {
              std::string label = "|J|=" + std::to_string(m) + " q=" + std::to_string(q) +
                                  " a0=" + std::to_string(a0);
              explain->push_back({label, term});
            }
            total += term;
            return;
          }
          for (int e = 0; e <= left; ++e) {
            extra[pos] = e;
            self(self, pos + 1, left - e);
          }
        };
        rec(rec, 0, spare);
      }
    }
  }
  return total;
}

inline Rational radial_index_det(int n, int big_i, int k, const Polyhedron& delta0,
                                 const std::vector<Polyhedron>& deltas) {
  return 1 - euler_char_det(n, big_i, k, delta0, deltas);
}

// ---------------------------------------------------------------------------
// Euler characteristic via compatible unbounded faces

/// Sum of q! (A_1...A_k)/((1+A_1)...(1+A_k)) over all tuples of compatible
/// unbounded faces A_i of the Delta_i, each pair taken as (A_i, A_i ∩ N_i)
/// shifted into the common q-dimensional span. Delta_1 must be the positive
/// orthant cone.
inline Rational chi_compatible_faces(const std::vector<Polyhedron>& deltas,
                                     const std::vector<Polyhedron>& ns,
                                     std::vector<TermLog>* explain = nullptr) {
  if (deltas.empty() || deltas.size() != ns.size())
    throw precondition_error("need matching Delta and N lists");
  const int n = deltas[0].ambient_dim();
  const int k = static_cast<int>(deltas.size());
  if (deltas[0] != positive_orthant(n))
    throw precondition_error("Delta_1 must be the positive orthant");
  for (int i = 0; i < k; ++i) {
    if (deltas[i].ambient_dim() != n || ns[i].ambient_dim() != n)
      throw precondition_error("dimension mismatch");
    if (ns[i].rays() != deltas[i].rays())
      throw precondition_error("N_i and Delta_i must share their recession cone");
    for (const auto& v : ns[i].vertices())
      if (!deltas[i].contains(v)) throw precondition_error("N_i not contained in Delta_i");
  }
  const std::vector<ZVec>& recession = deltas[0].rays();

  // enumerate compatible unbounded face tuples once each
  std::set<std::vector<detail::FaceKey>> seen;
  Rational total = 0;
  for (const Covector& gamma : detail::boundary_covector_classes(deltas, recession)) {
    std::vector<detail::FaceKey> tuple_key;
    std::vector<Polyhedron> faces;
    for (const auto& d : deltas) {
      Polyhedron f = support_face(d, gamma);
      detail::FaceKey key;
      for (size_t i = 0; i < d.vertices().size(); ++i)
        if (f.contains(d.vertices()[i])) key.verts.push_back(static_cast<int>(i));
      for (size_t i = 0; i < d.rays().size(); ++i)
        if (dot(gamma, d.rays()[i]) == 0) key.rays.push_back(static_cast<int>(i));
      tuple_key.push_back(std::move(key));
      faces.push_back(std::move(f));
    }
    if (!seen.insert(tuple_key).second) continue;

    // span of the face sum and its induced lattice
    std::vector<QVec> dirs;
    for (const auto& f : faces) {
      const QVec& base = f.vertices().front();
      for (const auto& v : f.vertices()) dirs.push_back(sub(v, base));
      for (const auto& r : f.rays()) dirs.push_back(to_qvec(r));
    }
    std::vector<ZVec> basis = lattice_basis_of_span(dirs, n);
    const int q = static_cast<int>(basis.size());

    std::vector<PolyhedronPair> bindings;
    for (int i = 0; i < k; ++i) {
      Polyhedron cut = intersect_with(faces[i], ns[i].equalities(), ns[i].facets());
      if (cut.is_empty())
        throw precondition_error("a compatible face misses its section polyhedron");
      const QVec& base = faces[i].vertices().front();
      auto reduce = [&](const Polyhedron& p) {
        std::vector<QVec> pts = detail::map_to_basis(p.vertices(), base, basis);
        std::vector<ZVec> rays;
        for (const auto& r : p.rays()) {
          auto u = coords_in_basis(basis, to_qvec(r));
          if (!u) throw internal_error("face ray outside span");
          rays.push_back(to_integer_direction(*u));
        }
        return Polyhedron::from_points_rays(q, std::move(pts), std::move(rays));
      };
      bindings.emplace_back(reduce(faces[i]), reduce(cut));
    }
    PairPolynomial f;
    f.nvars = k;
    PairExponent ones(k, 1);
    f.numerator[ones] = 1;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      PairExponent e(k, 0);
      for (int v = 0; v < k; ++v) e[v] = (mask >> v) & 1u;
      f.denominator[e] = 1;
    }
    Rational term = Rational(factorial(q)) * eval_pair_function(f, bindings, q);
    if (explain) {
      std::string label = "q=" + std::to_string(q);
      explain->push_back({label, term});
    }
    total += term;
  }
  return total;
}

}  // namespace mixvol
