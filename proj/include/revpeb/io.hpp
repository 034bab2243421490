#pragma once

// JSON formats for graphs, strategies and certificates.
//
//   graph:       {"vertices":["p",...],"edges":[["p","u"],...],"sink":"z"}
//   strategy:    {"game":"reversible","flavor":"visiting",
//                 "moves":[{"op":"place","v":"v1"},...]}
//   certificate: {"field":{"prime":2} | "rationals","mode":"multilinear",
//                 "multipliers":[{"axiom":"vertex:u" | "sink",
//                                 "poly":[{"coeff":"1","vars":["p","q"]},...]}],
//                 "boolean_multipliers":[{"var":"u","poly":[...]}]}
// Coefficients are decimal strings, rationals written "a/b".

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "revpeb/certificate.hpp"
#include "revpeb/dag.hpp"
#include "revpeb/field.hpp"
#include "revpeb/formula.hpp"
#include "revpeb/pebbling.hpp"

namespace revpeb {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, what + ": " + e.what());
  }
}

namespace detail {

template <typename Fn>
decltype(auto) schema(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, what + ": " + e.what());
  }
}

}  // namespace detail

// ---- graphs ---------------------------------------------------------------

inline json graph_to_json(const Dag& dag) {
  json j;
  j["vertices"] = dag.names();
  json edges = json::array();
  for (auto [a, b] : dag.edges()) edges.push_back({dag.name(a), dag.name(b)});
  j["edges"] = std::move(edges);
  if (dag.designated_sink()) j["sink"] = dag.name(*dag.designated_sink());
  return j;
}

inline Dag graph_from_json(const json& j) {
  return detail::schema("graph JSON", [&] {
    auto vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::ParseError, "graph JSON: each edge must be a pair");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    std::optional<std::string> sink;
    if (j.contains("sink") && !j["sink"].is_null()) sink = j["sink"].get<std::string>();
    return build_dag(vertices, edges, sink);
  });
}

inline Dag load_graph(const std::string& path) { return graph_from_json(parse_json(read_file(path), path)); }

// ---- strategies -----------------------------------------------------------

inline json strategy_to_json(const Dag& dag, const Strategy& s) {
  json moves = json::array();
  for (const Move& m : s.moves)
    moves.push_back({{"op", m.kind == MoveKind::Place ? "place" : "remove"}, {"v", dag.name(m.vertex)}});
  return {{"game", to_string(s.game)}, {"flavor", to_string(s.flavor)}, {"moves", std::move(moves)}};
}

inline Strategy strategy_from_json(const Dag& dag, const json& j) {
  return detail::schema("strategy JSON", [&] {
    Strategy s;
    const std::string game = j.value("game", "reversible");
    const std::string flavor = j.value("flavor", "visiting");
    if (game == "reversible") s.game = Game::Reversible;
    else if (game == "standard") s.game = Game::Standard;
    else throw Error(ErrorKind::ParseError, "strategy JSON: unknown game '" + game + "'");
    if (flavor == "visiting") s.flavor = Flavor::Visiting;
    else if (flavor == "persistent") s.flavor = Flavor::Persistent;
    else throw Error(ErrorKind::ParseError, "strategy JSON: unknown flavor '" + flavor + "'");
    for (const auto& m : j.at("moves")) {
      const std::string op = m.at("op").get<std::string>();
      if (op != "place" && op != "remove") throw Error(ErrorKind::ParseError, "strategy JSON: unknown op '" + op + "'");
      s.moves.push_back({op == "place" ? MoveKind::Place : MoveKind::Remove, dag.index_of(m.at("v").get<std::string>())});
    }
    return s;
  });
}

// ---- certificates ---------------------------------------------------------

inline json field_to_json(const FieldSpec& f) {
  if (f.kind == FieldSpec::Kind::Rationals) return "rationals";
  return {{"prime", f.prime}};
}

inline FieldSpec field_from_json(const json& j) {
  return detail::schema("field JSON", [&] {
    if (j.is_string()) return FieldSpec::parse(j.get<std::string>());
    return FieldSpec::prime_field(j.at("prime").get<std::uint64_t>());
  });
}

inline FieldSpec certificate_field(const json& j) { return detail::schema("certificate JSON", [&] { return field_from_json(j.at("field")); }); }

template <Field F>
json poly_to_json(const Dag& dag, const Polynomial<F>& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json vars = json::array();
    for (VertexIndex v : m.vars()) vars.push_back(dag.name(v));
    terms.push_back({{"coeff", p.field().format(c)}, {"vars", std::move(vars)}});
  }
  return terms;
}

template <Field F>
Polynomial<F> poly_from_json(const Dag& dag, const json& j, const F& field) {
  Polynomial<F> p(field);
  for (const auto& t : j) {
    std::vector<VertexIndex> vars;
    for (const auto& v : t.at("vars")) vars.push_back(dag.index_of(v.get<std::string>()));
    const json& c = t.at("coeff");
    p.add_term(Monomial(std::move(vars)), field.parse(c.is_string() ? c.get<std::string>() : c.dump()));
  }
  return p;
}

template <Field F>
json certificate_to_json(const Dag& dag, const Certificate<F>& cert) {
  json j;
  j["field"] = field_to_json(cert.field.spec());
  j["mode"] = to_string(cert.mode);
  json mults = json::array();
  for (const auto& [id, q] : cert.multipliers) mults.push_back({{"axiom", axiom_name(id, dag)}, {"poly", poly_to_json(dag, q)}});
  j["multipliers"] = std::move(mults);
  if (!cert.boolean_multipliers.empty()) {
    json bools = json::array();
    for (const auto& [v, s] : cert.boolean_multipliers) bools.push_back({{"var", dag.name(v)}, {"poly", poly_to_json(dag, s)}});
    j["boolean_multipliers"] = std::move(bools);
  }
  return j;
}

// Reads coefficients into `field`, which may differ from the field the file
// names (e.g. to check an integer certificate over several primes).
template <Field F>
Certificate<F> certificate_from_json(const Dag& dag, const json& j, const F& field) {
  return detail::schema("certificate JSON", [&] {
    const std::string mode = j.value("mode", "multilinear");
    if (mode != "multilinear" && mode != "standard")
      throw Error(ErrorKind::ParseError, "certificate JSON: unknown mode '" + mode + "'");
    Certificate<F> cert(field, mode == "multilinear" ? CertMode::Multilinear : CertMode::Standard);
    for (const auto& m : j.at("multipliers")) {
      AxiomId id = parse_axiom(m.at("axiom").get<std::string>(), dag);
      cert.multiplier(id) += poly_from_json(dag, m.at("poly"), field);
    }
    if (j.contains("boolean_multipliers")) {
      for (const auto& b : j.at("boolean_multipliers")) {
        VertexIndex v = dag.index_of(b.at("var").get<std::string>());
        auto [it, inserted] = cert.boolean_multipliers.try_emplace(v, Polynomial<F>(field));
        it->second += poly_from_json(dag, b.at("poly"), field);
      }
    }
    return cert;
  });
}

}  // namespace revpeb
