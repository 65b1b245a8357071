#pragma once

#include <mixvol/linalg.hpp>

namespace mixvol {

// Double-description for cones {x : a.x >= 0 (ineqs), e.x = 0 (eqs)}.
// State is a lineality basis plus extreme rays carrying tight-sets over the
// inequalities processed so far; adjacency is decided by the exact algebraic
// rank test, so degenerate inputs need no perturbation.

struct ConeDescription {
  std::vector<ZVec> lineality;
  std::vector<ZVec> rays;
};

namespace detail {

struct DDRay {
  ZVec v;
  std::vector<bool> tight;  // indexed by processed inequality
};

class DDState {
 public:
  explicit DDState(int dim) : dim_(dim) {
    for (int i = 0; i < dim; ++i) lin_.push_back(unit_vector(dim, i));
  }

  void add_constraint(const ZVec& raw, bool equality) {
    ZVec a = primitive(raw);
    if (is_zero(a)) return;
    int pivot = -1;
    for (size_t i = 0; i < lin_.size(); ++i)
      if (dot(a, lin_[i]) != 0) {
        pivot = static_cast<int>(i);
        break;
      }
    if (pivot >= 0)
      reduce_lineality(a, pivot, equality);
    else
      partition_rays(a, equality);
    if (equality)
      eqs_.push_back(a);
    else
      ineqs_.push_back(a);
  }

  ConeDescription result() const {
    ConeDescription out;
    out.lineality = lin_;
    out.rays.reserve(rays_.size());
    for (const auto& r : rays_) out.rays.push_back(r.v);
    return out;
  }

 private:
  // Positive multiple of (den*r - num*z); den may be negative.
  static ZVec shift_off(const ZVec& r, const ZVec& z, const Integer& num, const Integer& den) {
    ZVec out(r.size());
    for (size_t i = 0; i < r.size(); ++i) out[i] = den * r[i] - num * z[i];
    if (den < 0) out = negate(out);
    return primitive(out);
  }

  void reduce_lineality(const ZVec& a, int pivot, bool equality) {
    ZVec z = lin_[pivot];
    lin_.erase(lin_.begin() + pivot);
    Integer az = dot(a, z);
    for (auto& l : lin_) {
      Integer al = dot(a, l);
      if (al != 0) l = shift_off(l, z, al, az);
    }
    for (auto& r : rays_) {
      Integer ar = dot(a, r.v);
      if (ar != 0) r.v = shift_off(r.v, z, ar, az);
      if (!equality) r.tight.push_back(true);  // now lies on the hyperplane of a
    }
    if (!equality) {
      DDRay nz;
      nz.v = az > 0 ? z : negate(z);
      nz.tight.assign(ineqs_.size(), true);  // z came from the lineality
      nz.tight.push_back(false);
      rays_.push_back(std::move(nz));
    }
  }

  bool adjacent(const DDRay& p, const DDRay& q) const {
    std::vector<ZVec> tight_vecs(eqs_);
    for (size_t i = 0; i < ineqs_.size(); ++i)
      if (p.tight[i] && q.tight[i]) tight_vecs.push_back(ineqs_[i]);
    return rank_of_z(tight_vecs) == dim_ - static_cast<int>(lin_.size()) - 2;
  }

  void partition_rays(const ZVec& a, bool equality) {
    std::vector<DDRay> pos, zero, neg;
    for (auto& r : rays_) {
      int s = sgn(dot(a, r.v));
      if (s > 0)
        pos.push_back(std::move(r));
      else if (s < 0)
        neg.push_back(std::move(r));
      else
        zero.push_back(std::move(r));
    }
    std::vector<DDRay> combos;
    for (const auto& p : pos)
      for (const auto& m : neg) {
        if (!adjacent(p, m)) continue;
        DDRay w;
        Integer ap = dot(a, p.v);
        Integer am = dot(a, m.v);
        w.v.resize(p.v.size());
        for (size_t i = 0; i < w.v.size(); ++i) w.v[i] = ap * m.v[i] - am * p.v[i];
        w.v = primitive(w.v);
        bool dup = false;
        for (const auto& r : zero)
          if (r.v == w.v) dup = true;
        for (const auto& r : combos)
          if (r.v == w.v) dup = true;
        if (dup) continue;
        w.tight.resize(ineqs_.size());
        for (size_t i = 0; i < ineqs_.size(); ++i) w.tight[i] = p.tight[i] && m.tight[i];
        if (!equality) w.tight.push_back(true);
        combos.push_back(std::move(w));
      }
    rays_.clear();
    for (auto& r : zero) {
      if (!equality) r.tight.push_back(true);
      rays_.push_back(std::move(r));
    }
    if (!equality)
      for (auto& r : pos) {
        r.tight.push_back(false);
        rays_.push_back(std::move(r));
      }
    for (auto& w : combos) rays_.push_back(std::move(w));
  }

  int dim_;
  std::vector<ZVec> lin_;
  std::vector<DDRay> rays_;
  std::vector<ZVec> ineqs_;
  std::vector<ZVec> eqs_;
};

}  // namespace detail

inline ConeDescription dual_description(int dim, const std::vector<ZVec>& ineqs,
                                        const std::vector<ZVec>& eqs = {}) {
  detail::DDState state(dim);
  for (const auto& e : eqs) state.add_constraint(e, true);
  for (const auto& a : ineqs) state.add_constraint(a, false);
  return state.result();
}

}  // namespace mixvol
