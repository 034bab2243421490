#pragma once

// Pebbling formulas: the CNF view and its polynomial translation
//   A_v    = (1 - x_v) * prod_{u in pred(v)} x_u     for every vertex v
//   A_sink = x_z
// DIMACS variables are topological index + 1; clauses come one per vertex in
// topological order (negated predecessors, then the vertex), followed by the
// negated sink.

#include <compare>
#include <string>
#include <vector>

#include "revpeb/dag.hpp"
#include "revpeb/polynomial.hpp"

namespace revpeb {

struct AxiomId {
  enum class Kind { Vertex, Sink };
  Kind kind = Kind::Vertex;
  VertexIndex vertex = 0;  // unused for Sink

  static AxiomId of_vertex(VertexIndex v) { return {Kind::Vertex, v}; }
  static AxiomId sink() { return {Kind::Sink, 0}; }

  friend bool operator==(const AxiomId& a, const AxiomId& b) {
    return a.kind == b.kind && (a.kind == Kind::Sink || a.vertex == b.vertex);
  }
  // Vertex axioms in topological order, then the sink axiom.
  friend std::strong_ordering operator<=>(const AxiomId& a, const AxiomId& b) {
    if (a.kind != b.kind) return a.kind == Kind::Vertex ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.kind == Kind::Sink) return std::strong_ordering::equal;
    return a.vertex <=> b.vertex;
  }
};

// "vertex:<name>" or "sink".
inline std::string axiom_name(const AxiomId& id, const Dag& dag) {
  return id.kind == AxiomId::Kind::Sink ? "sink" : "vertex:" + dag.name(id.vertex);
}

inline AxiomId parse_axiom(std::string_view text, const Dag& dag) {
  if (text == "sink") return AxiomId::sink();
  constexpr std::string_view prefix = "vertex:";
  if (text.substr(0, prefix.size()) != prefix)
    throw Error(ErrorKind::UnknownAxiom, "axiom id '" + std::string(text) + "' is neither 'sink' nor 'vertex:<name>'");
  auto v = dag.find(text.substr(prefix.size()));
  if (!v) throw Error(ErrorKind::UnknownAxiom, "axiom '" + std::string(text) + "' names no vertex of the graph");
  return AxiomId::of_vertex(*v);
}

using Clause = std::vector<int>;

inline std::vector<Clause> pebbling_clauses(const Dag& dag) {
  const VertexIndex z = dag.sink();
  std::vector<Clause> out;
  out.reserve(dag.size() + 1);
  for (VertexIndex v = 0; v < dag.size(); ++v) {
    Clause c;
    for (VertexIndex u : dag.preds(v)) c.push_back(-static_cast<int>(u + 1));
    c.push_back(static_cast<int>(v + 1));
    out.push_back(std::move(c));
  }
  out.push_back({-static_cast<int>(z + 1)});
  return out;
}

inline std::string to_dimacs(const Dag& dag) {
  auto clauses = pebbling_clauses(dag);
  std::string out = "p cnf " + std::to_string(dag.size()) + " " + std::to_string(clauses.size()) + "\n";
  for (const auto& c : clauses) {
    for (int lit : c) out += std::to_string(lit) + " ";
    out += "0\n";
  }
  return out;
}

template <Field F>
class PebblingFormula {
 public:
  using Poly = Polynomial<F>;

  PebblingFormula(const Dag& dag, F field)
      : field_(field), sink_(dag.sink()), sink_axiom_(Poly::variable(field, dag.sink())), clauses_(pebbling_clauses(dag)) {
    vertex_axioms_.reserve(dag.size());
    for (VertexIndex v = 0; v < dag.size(); ++v) {
      auto preds = dag.preds(v);
      Monomial base = Monomial::of_set(preds);
      std::vector<VertexIndex> with_v(preds.begin(), preds.end());
      with_v.push_back(v);
      Poly a(field);
      a.add_term(base, field.one());
      a.add_term(Monomial(with_v), field.neg(field.one()));
      vertex_axioms_.push_back(std::move(a));
    }
  }

  const F& field() const noexcept { return field_; }
  VertexIndex sink() const noexcept { return sink_; }
  std::size_t vertex_count() const noexcept { return vertex_axioms_.size(); }

  const std::vector<Poly>& vertex_axioms() const noexcept { return vertex_axioms_; }
  const Poly& sink_axiom() const noexcept { return sink_axiom_; }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

  const Poly& axiom(const AxiomId& id) const {
    if (id.kind == AxiomId::Kind::Sink) return sink_axiom_;
    if (id.vertex >= vertex_axioms_.size())
      throw Error(ErrorKind::UnknownAxiom, "vertex axiom index " + std::to_string(id.vertex) + " out of range");
    return vertex_axioms_[id.vertex];
  }

 private:
  F field_;
  VertexIndex sink_;
  std::vector<Poly> vertex_axioms_;
  Poly sink_axiom_;
  std::vector<Clause> clauses_;
};

template <Field F>
PebblingFormula<F> pebbling_formula(const Dag& dag, F field) {
  return PebblingFormula<F>(dag, std::move(field));
}

}  // namespace revpeb
