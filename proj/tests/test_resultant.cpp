#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace mixvol;
using testsupport::Q;

namespace {

PointConfiguration segment01() {
  return PointConfiguration::make(1, {ZVec{Integer(0)}, ZVec{Integer(1)}});
}

PointConfiguration segment012() {
  return PointConfiguration::make(1, {ZVec{Integer(0)}, ZVec{Integer(1)}, ZVec{Integer(2)}});
}

// segment-segment-polygon family in Z^2
std::vector<PointConfiguration> seg_seg_polygon() {
  PointConfiguration seg = PointConfiguration::make(
      2, {ZVec{Integer(0), Integer(0)}, ZVec{Integer(1), Integer(0)}});
  PointConfiguration poly = PointConfiguration::make(
      2, {ZVec{Integer(0), Integer(0)}, ZVec{Integer(1), Integer(0)}, ZVec{Integer(0), Integer(1)}});
  return {seg, seg, poly};
}

Integer min_weight(const std::set<std::vector<int>>& support, const std::vector<Integer>& gamma) {
  std::optional<Integer> best;
  for (const auto& e : support) {
    Integer w = 0;
    for (size_t i = 0; i < e.size(); ++i) w += Integer(e[i]) * gamma[i];
    if (!best || w < *best) best = w;
  }
  return *best;
}

Rational support_at(const std::vector<PointConfiguration>& configs,
                    const std::vector<Integer>& flat, bool max_conv = false) {
  CoefficientWeight gamma;
  size_t at = 0;
  for (const auto& c : configs) {
    gamma.push_back(std::vector<Integer>(flat.begin() + at, flat.begin() + at + c.points.size()));
    at += c.points.size();
  }
  return resultant_support(configs, gamma, max_conv);
}

}  // namespace

TEST_CASE("configuration codimension") {
  CHECK(codim_config({segment01(), segment01()}) == 1);
  auto ssp = seg_seg_polygon();
  CHECK(codim_config({ssp[0], ssp[1]}) == 1);
  CHECK(codim_config(ssp) == 1);
  PointConfiguration full = PointConfiguration::make(
      2, {ZVec{Integer(0), Integer(0)}, ZVec{Integer(1), Integer(0)}, ZVec{Integer(0), Integer(1)}});
  CHECK(codim_config({full}) == -1);  // 1 - N for a full-dimensional single config
}

TEST_CASE("resultantal codimension and essentiality") {
  CHECK(resultantal_codim({segment01(), segment01()}) == 1);
  CHECK(resultantal_codim(seg_seg_polygon()) == 1);
  CHECK(is_essential({segment01(), segment01()}));
  CHECK_FALSE(is_essential(seg_seg_polygon()));

  CHECK(essential_subcollection(seg_seg_polygon()) == std::vector<int>{0, 1});
  CHECK(essential_subcollection({segment01(), segment01()}) == std::vector<int>{0, 1});
  // ({0}, {0,1}): the frozen singleton alone has codimension 1
  PointConfiguration point = PointConfiguration::make(1, {ZVec{Integer(0)}});
  CHECK(essential_subcollection({point, segment01()}) == std::vector<int>{0});
}

TEST_CASE("essential subcollection is minimal and achieves the codimension") {
  std::mt19937 rng(12);
  std::uniform_int_distribution<long> c(0, 2);
  std::uniform_int_distribution<int> count(1, 3), configs_count(2, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PointConfiguration> configs;
    int total = configs_count(rng);
    for (int i = 0; i < total; ++i) {
      std::vector<ZVec> pts;
      int npts = count(rng);
      for (int t = 0; t < npts; ++t) pts.push_back({Integer(c(rng)), Integer(c(rng))});
      configs.push_back(PointConfiguration::make(2, pts));
    }
    std::vector<int> ess = essential_subcollection(configs);
    if (ess.empty()) {
      // degenerate regime: the resultantal variety fills the space
      CHECK(resultantal_codim(configs) <= 0);
      continue;
    }
    std::vector<PointConfiguration> sub;
    for (int i : ess) sub.push_back(configs[i]);
    CHECK(codim_config(sub) == resultantal_codim(configs));
    CHECK(is_essential(sub));
    // every proper subset has strictly smaller codimension
    for (unsigned mask = 1; mask + 1 < (1u << ess.size()); ++mask) {
      std::vector<PointConfiguration> proper;
      for (size_t i = 0; i < ess.size(); ++i)
        if (mask & (1u << i)) proper.push_back(configs[ess[i]]);
      CHECK(codim_config(proper) < codim_config(sub));
    }
  }
}

TEST_CASE("resultant support: classical linear resultant") {
  std::vector<PointConfiguration> configs{segment01(), segment01()};
  CHECK(support_at(configs, {Integer(0), Integer(0), Integer(0), Integer(0)}) == Q(0));
  CHECK(support_at(configs, {Integer(1), Integer(0), Integer(0), Integer(0)}) == Q(0));
  CHECK(support_at(configs, {Integer(1), Integer(1), Integer(1), Integer(1)}) == Q(2));
}

TEST_CASE("resultant support matches the Sylvester expansion") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> w(-4, 6);
  struct Case {
    std::vector<PointConfiguration> configs;
    int d0, d1;
  };
  std::vector<Case> cases = {{{segment01(), segment01()}, 1, 1},
                             {{segment012(), segment01()}, 2, 1}};
  for (const auto& c : cases) {
    auto support = oracles::resultant_support_exponents(c.d0, c.d1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Integer> flat(c.d0 + c.d1 + 2);
      for (auto& x : flat) x = Integer(w(rng));
      Rational got = support_at(c.configs, flat);
      CHECK(got == Rational(min_weight(support, flat)));
      // max convention: the maximum of the weight over the same exponents
      Integer mx = -min_weight(support, [&] {
        std::vector<Integer> neg = flat;
        for (auto& x : neg) x = -x;
        return neg;
      }());
      CHECK(support_at(c.configs, flat, true) == Rational(mx));
    }
  }
}

TEST_CASE("resultant support: homogeneity and superadditivity") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> w(-3, 5);
  std::vector<PointConfiguration> configs{segment012(), segment01()};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Integer> f(5), g(5);
    for (auto& x : f) x = Integer(w(rng));
    for (auto& x : g) x = Integer(w(rng));
    Rational vf = support_at(configs, f);
    std::vector<Integer> f3 = f;
    for (auto& x : f3) x *= 3;
    CHECK(support_at(configs, f3) == 3 * vf);
    std::vector<Integer> fg(5);
    for (int i = 0; i < 5; ++i) fg[i] = f[i] + g[i];
    CHECK(support_at(configs, fg) >= vf + support_at(configs, g));
  }
}

TEST_CASE("resultant support preconditions") {
  PointConfiguration point = PointConfiguration::make(1, {ZVec{Integer(0)}});
  CoefficientWeight gamma{{Integer(0)}, {Integer(0), Integer(0)}};
  CHECK_THROWS_AS(resultant_support({point, segment01()}, gamma), precondition_error);
  CHECK_THROWS_AS(resultant_support({segment01()}, {{Integer(0), Integer(0)}}),
                  precondition_error);
}

TEST_CASE("saturation warning") {
  // {0,2},{0,2}: essential, full-dimensional sum, but index-2 lattice
  PointConfiguration wide = PointConfiguration::make(1, {ZVec{Integer(0)}, ZVec{Integer(2)}});
  CHECK(spans_unit_index_lattice({segment01(), segment01()}));
  CHECK_FALSE(spans_unit_index_lattice({wide, wide}));
  CoefficientWeight gamma{{Integer(0), Integer(0)}, {Integer(0), Integer(0)}};
  std::string warning;
  resultant_support({wide, wide}, gamma, false, &warning);
  CHECK(!warning.empty());
}

TEST_CASE("monomial resultantal multiplicity equals the support function") {
  // one-variable germs t^(gamma_{a,i}) plugged into the resultantal
  // singularity: the multiplicity is the support value of the resultant
  std::mt19937 rng(4242);
  std::uniform_int_distribution<long> w(1, 5);
  std::vector<PointConfiguration> configs{segment01(), segment01()};
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Integer> flat(4);
    for (auto& x : flat) x = Integer(w(rng));
    std::vector<std::vector<Polyhedron>> components;
    size_t at = 0;
    for (const auto& c : configs) {
      std::vector<Polyhedron> comp;
      for (size_t p = 0; p < c.points.size(); ++p)
        comp.push_back(testsupport::interval_ray(flat[at + p].get_si()));
      at += c.points.size();
      components.push_back(std::move(comp));
    }
    CHECK(resultantal_multiplicity(configs, components) == support_at(configs, flat));
  }
}
