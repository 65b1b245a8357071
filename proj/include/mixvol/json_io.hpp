#pragma once

#include <mixvol/invariants.hpp>
#include <mixvol/lattice_formula.hpp>
#include <mixvol/resultant.hpp>

#include <json.hpp>

namespace mixvol {

using json = nlohmann::json;

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw schema_error("expected integer or \"p/q\" string");
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (q.get_den() != 1) throw schema_error("expected an integer");
    return q.get_num();
  }
  throw schema_error("expected an integer");
}

inline QVec qvec_from_json(const json& j) {
  if (!j.is_array()) throw schema_error("expected an array of rationals");
  QVec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

inline ZVec zvec_from_json(const json& j) {
  if (!j.is_array()) throw schema_error("expected an array of integers");
  ZVec v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

/// Polyhedron literal {"dim": n, "vertices": [...], "rays": [...]} or the
/// Newton shorthand {"newton": {"dim": n, "exponents": [...]}}.
inline Polyhedron polyhedron_from_json(const json& j) {
  if (!j.is_object()) throw schema_error("expected a polyhedron object");
  if (j.contains("newton")) {
    const json& nw = j.at("newton");
    int dim = nw.at("dim").get<int>();
    std::vector<ZVec> exps;
    for (const auto& e : nw.at("exponents")) exps.push_back(zvec_from_json(e));
    if (exps.empty()) throw schema_error("newton shorthand needs exponents");
    return newton_polyhedron(dim, exps);
  }
  int dim = j.at("dim").get<int>();
  std::vector<QVec> verts;
  for (const auto& v : j.at("vertices")) verts.push_back(qvec_from_json(v));
  std::vector<ZVec> rays;
  if (j.contains("rays"))
    for (const auto& r : j.at("rays")) rays.push_back(zvec_from_json(r));
  if (verts.empty()) throw schema_error("polyhedron literal needs vertices");
  return convex_hull(dim, std::move(verts), std::move(rays));
}

inline PolyhedronPair pair_from_json(const json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("B"))
    throw schema_error("expected a pair object {\"A\":..., \"B\":...}");
  return PolyhedronPair(polyhedron_from_json(j.at("A")), polyhedron_from_json(j.at("B")));
}

inline json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());  // beyond native range: keep exact as a string
}

inline json polyhedron_to_json(const Polyhedron& p) {
  json j;
  j["dim"] = p.ambient_dim();
  json verts = json::array();
  for (const auto& v : p.vertices()) {
    json row = json::array();
    for (const auto& x : v) {
      if (x.get_den() == 1)
        row.push_back(integer_to_json(Integer(x.get_num())));
      else
        row.push_back(rational_to_string(x));
    }
    verts.push_back(std::move(row));
  }
  j["vertices"] = std::move(verts);
  json rays = json::array();
  for (const auto& r : p.rays()) {
    json row = json::array();
    for (const auto& x : r) row.push_back(integer_to_json(x));
    rays.push_back(std::move(row));
  }
  j["rays"] = std::move(rays);
  return j;
}

inline json rational_result(const Rational& q) {
  return json{{"value", rational_to_string(q)}};
}

}  // namespace mixvol
