// mixvol: batch front-end for exact mixed-volume and Newton-polyhedra
// computations. Reads a JSON problem file, prints a single JSON result line.

#include <mixvol/json_io.hpp>
#include <mixvol/mixvol.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace mixvol;

json load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot open input file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw schema_error(std::string("invalid JSON: ") + e.what());
  }
}

json parse_inline(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw schema_error(std::string("invalid inline JSON: ") + e.what());
  }
}

std::vector<PolyhedronPair> pairs_from(const json& j, const char* key) {
  if (!j.contains(key)) throw schema_error(std::string("missing field '") + key + "'");
  std::vector<PolyhedronPair> out;
  for (const auto& p : j.at(key)) out.push_back(pair_from_json(p));
  return out;
}

std::vector<Polyhedron> polys_from(const json& j, const char* key) {
  if (!j.contains(key)) throw schema_error(std::string("missing field '") + key + "'");
  std::vector<Polyhedron> out;
  for (const auto& p : j.at(key)) out.push_back(polyhedron_from_json(p));
  return out;
}

json explain_terms(const std::vector<TermLog>& terms) {
  json arr = json::array();
  for (const auto& t : terms)
    arr.push_back(json{{"term", t.label}, {"value", rational_to_string(t.value)}});
  return arr;
}

struct Request {
  json problem;
  bool explain = false;
  std::string method = "face_formula";
  std::string via = "direct";
  std::string gamma0;
  std::string expr;
  std::string sigmas;
  std::string gamma;
  bool max_convention = false;
  bool regularized = false;
};

PairMvMethod method_from(const std::string& name) {
  if (name == "polarization") return PairMvMethod::polarization;
  if (name == "face_formula") return PairMvMethod::face_formula;
  if (name == "truncation") return PairMvMethod::truncation;
  throw schema_error("unknown method '" + name + "'");
}

// --- point-configuration helpers -------------------------------------------

struct ConfigInput {
  std::vector<PointConfiguration> configs;
  // permutation: sorted_index[i][p] = position in the original point list
  std::vector<std::vector<size_t>> original_of_sorted;
};

ConfigInput configs_from(const json& j) {
  if (!j.contains("sigmas")) throw schema_error("missing field 'sigmas'");
  int rank = j.at("N").get<int>();
  ConfigInput out;
  for (const auto& sigma : j.at("sigmas")) {
    std::vector<ZVec> pts;
    for (const auto& p : sigma) pts.push_back(zvec_from_json(p));
    std::vector<size_t> order(pts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return pts[a] < pts[b]; });
    std::vector<ZVec> sorted;
    for (size_t i : order) sorted.push_back(pts[i]);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw schema_error("duplicate configuration point");
    out.configs.push_back(PointConfiguration::make(rank, sorted));
    out.original_of_sorted.push_back(std::move(order));
  }
  if (out.configs.empty()) throw schema_error("no configurations given");
  return out;
}

// --- subcommand implementations ---------------------------------------------

json run_volume(const Request& r) {
  return rational_result(lattice_volume(polyhedron_from_json(r.problem.at("polyhedron"))));
}

json run_mixed_volume(const Request& r) {
  return rational_result(mixed_volume(polys_from(r.problem, "polyhedra")));
}

json run_pair_volume(const Request& r) {
  const json& p = r.problem.contains("pair") ? r.problem.at("pair") : r.problem;
  return rational_result(pair_volume(pair_from_json(p)));
}

json run_pair_mixed_volume(const Request& r) {
  std::vector<FacetTerm> terms;
  Rational v = mixed_volume_pairs(pairs_from(r.problem, "pairs"), method_from(r.method),
                                  r.explain ? &terms : nullptr);
  json out = rational_result(v);
  if (r.explain) {
    json arr = json::array();
    for (const auto& t : terms) {
      json g = json::array();
      for (const auto& x : t.gamma) g.push_back(json::parse(x.get_str()));
      arr.push_back(json{{"gamma", g},
                         {"slot", t.slot + 1},
                         {"coefficient", rational_to_string(t.coefficient)},
                         {"face_mixed_volume", rational_to_string(t.face_mixed_volume)}});
    }
    out["explain"] = json{{"facet_terms", arr}};
  }
  return out;
}

json run_stable(const Request& r) {
  std::vector<std::pair<Polyhedron, Polyhedron>> collection;
  for (const auto& p : r.problem.at("pairs"))
    collection.emplace_back(polyhedron_from_json(p.at("A")), polyhedron_from_json(p.at("B")));
  std::optional<Covector> gamma0;
  if (!r.gamma0.empty()) gamma0 = zvec_from_json(parse_inline(r.gamma0));
  return rational_result(stable_mixed_volume_pairs(collection, gamma0));
}

json run_lattice_count(const Request& r) {
  Integer c;
  if (r.problem.contains("pair"))
    c = count_points_pair(pair_from_json(r.problem.at("pair")));
  else if (r.problem.contains("polyhedron"))
    c = count_points(polyhedron_from_json(r.problem.at("polyhedron")));
  else
    throw schema_error("lattice-count needs 'polyhedron' or 'pair'");
  return json{{"value", c.get_str()}};
}

json run_prism_mv(const Request& r) {
  std::vector<std::vector<PrismGridEntry>> grid;
  for (const auto& row : r.problem.at("entries")) {
    std::vector<PrismGridEntry> g;
    for (const auto& e : row) {
      PrismGridEntry entry;
      if (e.is_null()) {
      } else if (e.is_object() && e.contains("A"))
        entry.pair = pair_from_json(e);
      else
        entry.plain = polyhedron_from_json(e);
      g.push_back(std::move(entry));
    }
    grid.push_back(std::move(g));
  }
  if (r.via == "direct") return rational_result(prism_mixed_volume_direct(grid));
  if (r.via != "lattice") throw schema_error("unknown route '" + r.via + "'");
  std::vector<PrismTermLog> terms;
  Rational v = prism_mixed_volume_lattice(grid, r.explain ? &terms : nullptr);
  json out = rational_result(v);
  if (r.explain) {
    json arr = json::array();
    for (const auto& t : terms) {
      json cols = json::array(), comp = json::array();
      for (int c : t.columns) cols.push_back(c + 1);
      for (int b : t.composition) comp.push_back(b);
      arr.push_back(json{{"columns", cols}, {"composition", comp}, {"count", t.count.get_str()}});
    }
    out["explain"] = json{{"lattice_terms", arr}};
  }
  return out;
}

PairSeries series_from(const json& j, int nvars) {
  PairSeries s;
  for (const auto& term : j) {
    PairExponent e;
    for (const auto& x : term.at("exponents")) e.push_back(x.get<int>());
    if (static_cast<int>(e.size()) != nvars) throw schema_error("exponent length mismatch");
    Rational c = rational_from_json(term.at("coeff"));
    s[e] += c;
  }
  return s;
}

json run_eval_pair_fn(const Request& r) {
  int degree = r.problem.at("n").get<int>();
  std::vector<std::string> names;
  for (const auto& v : r.problem.at("variables")) names.push_back(v.get<std::string>());
  std::vector<PolyhedronPair> bindings;
  for (const auto& name : names)
    bindings.push_back(pair_from_json(r.problem.at("bindings").at(name)));
  PairPolynomial f;
  f.nvars = static_cast<int>(names.size());
  json expr = r.expr.empty() ? r.problem : parse_inline(r.expr);
  f.numerator = series_from(expr.at("numerator"), f.nvars);
  if (expr.contains("denominator")) f.denominator = series_from(expr.at("denominator"), f.nvars);
  return rational_result(eval_pair_function(f, bindings, degree));
}

json with_terms(Rational v, bool explain, const std::vector<TermLog>& terms) {
  json out = rational_result(v);
  if (explain) out["explain"] = json{{"terms", explain_terms(terms)}};
  return out;
}

json run_milnor(const Request& r) {
  std::vector<TermLog> terms;
  Rational v = milnor_number(polys_from(r.problem, "deltas"), r.explain ? &terms : nullptr);
  return with_terms(v, r.explain, terms);
}

json run_gz_index(const Request& r) {
  std::vector<TermLog> terms;
  Rational v = gz_index(polys_from(r.problem, "f_deltas"), polys_from(r.problem, "form_deltas"),
                        r.regularized ? ResEgMode::regularized : ResEgMode::identical,
                        r.explain ? &terms : nullptr);
  return with_terms(v, r.explain, terms);
}

json run_det_mult(const Request& r) {
  std::vector<TermLog> terms;
  Rational v = det_multiplicity(r.problem.at("n").get<int>(), r.problem.at("I").get<int>(),
                                r.problem.at("k").get<int>(), polys_from(r.problem, "columns"),
                                r.explain ? &terms : nullptr);
  return with_terms(v, r.explain, terms);
}

json run_collection_mult(const Request& r) {
  std::vector<MatrixBlock> blocks;
  for (const auto& b : r.problem.at("blocks")) {
    MatrixBlock block;
    block.rows = b.at("rows").get<int>();
    block.cols = b.at("cols").get<int>();
    for (const auto& row : b.at("entries")) {
      std::vector<Polyhedron> entries;
      for (const auto& e : row) entries.push_back(polyhedron_from_json(e));
      block.entries.push_back(std::move(entries));
    }
    blocks.push_back(std::move(block));
  }
  return rational_result(collection_multiplicity(blocks, r.problem.at("n").get<int>()));
}

json run_resultantal_mult(const Request& r) {
  ConfigInput in = configs_from(r.problem);
  const json& comp = r.problem.at("components");
  if (comp.size() != in.configs.size()) throw schema_error("component family count mismatch");
  std::vector<std::vector<Polyhedron>> components;
  for (size_t i = 0; i < in.configs.size(); ++i) {
    std::vector<Polyhedron> given;
    for (const auto& e : comp.at(i)) given.push_back(polyhedron_from_json(e));
    if (given.size() != in.configs[i].points.size())
      throw schema_error("components must match configuration points");
    std::vector<Polyhedron> sorted;
    for (size_t p = 0; p < given.size(); ++p)
      sorted.push_back(given[in.original_of_sorted[i][p]]);
    components.push_back(std::move(sorted));
  }
  return rational_result(resultantal_multiplicity(in.configs, components));
}

json run_euler_char(const Request& r, bool radial) {
  std::vector<TermLog> terms;
  int n = r.problem.at("n").get<int>();
  int big_i = r.problem.at("I").get<int>();
  int k = r.problem.at("k").get<int>();
  Polyhedron delta0 = polyhedron_from_json(r.problem.at("delta0"));
  std::vector<Polyhedron> deltas = polys_from(r.problem, "deltas");
  Rational chi = euler_char_det(n, big_i, k, delta0, deltas, r.explain ? &terms : nullptr);
  return with_terms(radial ? Rational(1 - chi) : chi, r.explain, terms);
}

json run_resultant_support(const Request& r) {
  json problem = r.problem;
  if (!r.sigmas.empty()) {
    json s = parse_inline(r.sigmas);
    if (s.is_object()) {
      problem = s;
    } else {
      problem["sigmas"] = s;
    }
  }
  if (!r.gamma.empty()) problem["gamma"] = parse_inline(r.gamma);
  ConfigInput in = configs_from(problem);
  if (!problem.contains("gamma")) throw schema_error("missing field 'gamma'");
  const json& gj = problem.at("gamma");
  if (gj.size() != in.configs.size()) throw schema_error("gamma family count mismatch");
  CoefficientWeight gamma;
  for (size_t i = 0; i < in.configs.size(); ++i) {
    ZVec given = zvec_from_json(gj.at(i));
    if (given.size() != in.configs[i].points.size())
      throw schema_error("gamma entry count mismatch");
    ZVec sorted(given.size());
    for (size_t p = 0; p < given.size(); ++p) sorted[p] = given[in.original_of_sorted[i][p]];
    gamma.push_back(std::move(sorted));
  }
  std::string warning;
  Rational v = resultant_support(in.configs, gamma, r.max_convention, &warning);
  if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
  return rational_result(v);
}

json run_essential(const Request& r) {
  json problem = r.problem;
  if (!r.sigmas.empty()) {
    json s = parse_inline(r.sigmas);
    if (s.is_object())
      problem = s;
    else
      problem["sigmas"] = s;
  }
  ConfigInput in = configs_from(problem);
  json idx = json::array();
  for (int i : essential_subcollection(in.configs)) idx.push_back(i + 1);
  return json{{"value", idx}};
}

json run_codim(const Request& r) {
  json problem = r.problem;
  if (!r.sigmas.empty()) {
    json s = parse_inline(r.sigmas);
    if (s.is_object())
      problem = s;
    else
      problem["sigmas"] = s;
  }
  ConfigInput in = configs_from(problem);
  return json{{"value", std::to_string(resultantal_codim(in.configs))}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact mixed volumes of polyhedra pairs and Newton-polyhedra invariants"};
  app.require_subcommand(1);

  if (const char* limit = std::getenv("MIXVOL_MAX_DIM")) {
    int value = std::atoi(limit);
    if (value > 0) mixvol::max_ambient_dim() = value;
  }

  Request req;
  std::string file;

  auto add_common = [&](CLI::App* cmd, bool needs_file = true) {
    if (needs_file)
      cmd->add_option("file", file, "JSON problem file")->required();
    else
      cmd->add_option("file", file, "JSON problem file");
    cmd->add_flag("--explain", req.explain, "include a term-by-term decomposition");
    return cmd;
  };

  std::map<std::string, std::function<json(const Request&)>> handlers;
  auto* c_volume = add_common(app.add_subcommand("volume", "lattice volume of a polyhedron"));
  handlers[c_volume->get_name()] = run_volume;
  auto* c_mv = add_common(app.add_subcommand("mixed-volume", "classical mixed volume"));
  handlers[c_mv->get_name()] = run_mixed_volume;
  auto* c_pv = add_common(app.add_subcommand("pair-volume", "volume of a pair of polyhedra"));
  handlers[c_pv->get_name()] = run_pair_volume;
  auto* c_pmv =
      add_common(app.add_subcommand("pair-mixed-volume", "mixed volume of pairs of polyhedra"));
  c_pmv->add_option("--method", req.method, "polarization | face_formula | truncation");
  handlers[c_pmv->get_name()] = run_pair_mixed_volume;
  auto* c_stable = add_common(app.add_subcommand("stable", "stable mixed volume of pairs"));
  c_stable->add_option("--gamma0", req.gamma0, "interior covector, e.g. \"[1,1]\"");
  handlers[c_stable->get_name()] = run_stable;
  auto* c_count = add_common(app.add_subcommand("lattice-count", "lattice points of a polyhedron or pair"));
  handlers[c_count->get_name()] = run_lattice_count;
  auto* c_prism = add_common(app.add_subcommand("prism-mv", "mixed volume of column prisms"));
  c_prism->add_option("--via", req.via, "lattice | direct");
  handlers[c_prism->get_name()] = run_prism_mv;
  auto* c_eval = add_common(app.add_subcommand("eval-pair-fn", "value of a rational function of pairs"));
  c_eval->add_option("--expr", req.expr, "inline {\"numerator\":...,\"denominator\":...}");
  handlers[c_eval->get_name()] = run_eval_pair_fn;
  auto* c_milnor = add_common(app.add_subcommand("milnor", "Milnor number from Newton polyhedra"));
  handlers[c_milnor->get_name()] = run_milnor;
  auto* c_gz = add_common(app.add_subcommand("gz-index", "Gusein-Zade--Ebeling index of a 1-form"));
  c_gz->add_flag("--regularized", req.regularized, "use the regularized prism pairs");
  handlers[c_gz->get_name()] = run_gz_index;
  auto* c_det = add_common(app.add_subcommand("det-mult", "multiplicity of a determinantal germ"));
  handlers[c_det->get_name()] = run_det_mult;
  auto* c_coll =
      add_common(app.add_subcommand("collection-mult", "multiplicity of a matrix collection"));
  handlers[c_coll->get_name()] = run_collection_mult;
  auto* c_res =
      add_common(app.add_subcommand("resultantal-mult", "multiplicity of a resultantal germ"));
  handlers[c_res->get_name()] = run_resultantal_mult;
  auto* c_euler = add_common(app.add_subcommand("euler-char", "Euler characteristic of a Milnor fiber"));
  handlers[c_euler->get_name()] = [](const Request& r) { return run_euler_char(r, false); };
  auto* c_radial = add_common(app.add_subcommand("radial-index", "radial index of a 1-form"));
  handlers[c_radial->get_name()] = [](const Request& r) { return run_euler_char(r, true); };
  auto* c_sup = add_common(
      app.add_subcommand("resultant-support", "support function of the resultant polytope"),
      false);
  c_sup->add_option("--sigmas", req.sigmas, "inline configurations JSON");
  c_sup->add_option("--gamma", req.gamma, "inline weight JSON");
  c_sup->add_flag("--max-convention", req.max_convention, "use the max support convention");
  handlers[c_sup->get_name()] = run_resultant_support;
  auto* c_ess = add_common(app.add_subcommand("essential", "minimal essential subcollection"), false);
  c_ess->add_option("--sigmas", req.sigmas, "inline configurations JSON");
  handlers[c_ess->get_name()] = run_essential;
  auto* c_codim = add_common(app.add_subcommand("codim", "codimension of the resultantal variety"), false);
  c_codim->add_option("--sigmas", req.sigmas, "inline configurations JSON");
  handlers[c_codim->get_name()] = run_codim;

  CLI11_PARSE(app, argc, argv);

  auto emit_error = [](const std::string& code, const std::string& message, int exit_code) {
    mixvol::json err{{"error", {{"code", code}, {"message", message}}}};
    std::cout << err.dump() << "\n";
    return exit_code;
  };

  try {
    req.problem = file.empty() ? mixvol::json::object() : load_problem(file);
    const std::string name = app.get_subcommands().front()->get_name();
    mixvol::json result = handlers.at(name)(req);
    std::cout << result.dump() << "\n";
    return 0;
  } catch (const mixvol::schema_error& e) {
    return emit_error("schema", e.what(), 3);
  } catch (const mixvol::json::exception& e) {
    return emit_error("schema", e.what(), 3);
  } catch (const mixvol::precondition_error& e) {
    return emit_error("precondition", e.what(), 2);
  } catch (const std::exception& e) {
    return emit_error("internal", e.what(), 4);
  }
}
