#pragma once

// Nullstellensatz certificates for pebbling formulas and the two-way
// translation between them and reversible pebblings.
//
// A certificate is valid when
//   multilinear mode:  sum_a Q_a * A_a = 1          (products multilinearized)
//   standard mode:     sum_a Q_a * A_a + sum_j s_j * (x_j^2 - x_j) = 1
// Size counts monomials of every product before cancellation:
//   sum_a #Q_a * #A_a + sum_j 2 * #s_j.
// Degree is the largest monomial of any product; in multilinear mode a pair
// of monomials contributes the size of the union of their variable sets.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "revpeb/dag.hpp"
#include "revpeb/formula.hpp"
#include "revpeb/pebbling.hpp"
#include "revpeb/polynomial.hpp"

namespace revpeb {

enum class CertMode { Multilinear, Standard };

inline const char* to_string(CertMode m) { return m == CertMode::Multilinear ? "multilinear" : "standard"; }

template <Field F>
struct Certificate {
  using Poly = Polynomial<F>;

  F field;
  CertMode mode = CertMode::Multilinear;
  std::map<AxiomId, Poly> multipliers;
  // Standard mode only: multipliers of the Boolean axioms x_j^2 - x_j.
  std::map<VertexIndex, Poly> boolean_multipliers;

  explicit Certificate(F f, CertMode m = CertMode::Multilinear) : field(std::move(f)), mode(m) {}

  // The multiplier of `id`, created as zero on first use.
  Poly& multiplier(const AxiomId& id) { return multipliers.try_emplace(id, Poly(field)).first->second; }
};

template <Field F>
struct VerifyReport {
  bool valid = false;
  std::size_t size = 0;
  std::size_t degree = 0;
  // sum - 1; zero exactly when valid.
  Polynomial<F> residual;
};

namespace detail {

template <Field F>
std::size_t multilinear_pair_degree(const Polynomial<F>& q, const Polynomial<F>& a) {
  std::size_t d = 0;
  for (const auto& [m1, c1] : q.terms())
    for (const auto& [m2, c2] : a.terms()) d = std::max(d, m1.multilinear_times(m2).degree());
  return d;
}

template <Field F>
Polynomial<F> boolean_axiom(const F& field, VertexIndex v) {
  Polynomial<F> b(field);
  b.add_term(Monomial({v, v}), field.one());
  b.add_term(Monomial({v}), field.neg(field.one()));
  return b;
}

}  // namespace detail

template <Field F>
VerifyReport<F> verify(const PebblingFormula<F>& formula, const Certificate<F>& cert) {
  if (!(formula.field() == cert.field))
    throw Error(ErrorKind::FieldMismatch,
                "formula over " + formula.field().spec().name() + ", certificate over " + cert.field.spec().name());
  if (cert.mode == CertMode::Multilinear && !cert.boolean_multipliers.empty())
    throw Error(ErrorKind::NotMultilinear, "multilinear certificates carry no Boolean-axiom multipliers");

  const F& field = cert.field;
  Polynomial<F> sum(field);
  std::size_t size = 0, degree = 0;
  for (const auto& [id, q] : cert.multipliers) {
    const Polynomial<F>& a = formula.axiom(id);
    q.check_field(a);
    if (q.is_zero()) continue;
    size += q.size() * a.size();
    if (cert.mode == CertMode::Multilinear) {
      sum += multilinear_product(q, a);
      degree = std::max(degree, detail::multilinear_pair_degree(q, a));
    } else {
      sum += product(q, a);
      degree = std::max(degree, q.degree() + a.degree());
    }
  }
  for (const auto& [v, s] : cert.boolean_multipliers) {
    if (v >= formula.vertex_count())
      throw Error(ErrorKind::UnknownAxiom, "Boolean axiom for vertex index " + std::to_string(v));
    if (s.is_zero()) continue;
    size += 2 * s.size();
    sum += product(s, detail::boolean_axiom(field, v));
    degree = std::max(degree, s.degree() + 2);
  }
  sum -= Polynomial<F>::one(field);
  VerifyReport<F> r{sum.is_zero(), size, degree, std::move(sum)};
  return r;
}

// Drops exponents above 1 and the Boolean-axiom multipliers. Throws
// ResultInvalid when the result does not verify.
template <Field F>
Certificate<F> multilinearize(const PebblingFormula<F>& formula, const Certificate<F>& cert) {
  Certificate<F> out(cert.field, CertMode::Multilinear);
  for (const auto& [id, q] : cert.multipliers) {
    auto ml = multilinearize(q);
    if (!ml.is_zero()) out.multipliers.emplace(id, std::move(ml));
  }
  if (!verify(formula, out).valid)
    throw Error(ErrorKind::ResultInvalid, "the certificate is not a valid refutation, before or after multilinearization");
  return out;
}

// Certificate from the prefix of a reversible pebbling up to the first
// configuration P_t' holding the sink. Step i moves v_i from P_{i-1} to P_i
// and contributes p_i * x_{R_i} to Q_{v_i}, where R_i = P_i - {v_i} - pred(v_i)
// and p_i is +1 for a placement and -1 for a removal; Q_sink = x_{P_t' - {z}}.
// Moves after t' are ignored.
//
// When the prefix never repeats a configuration the result has size 2t' + 1
// and degree equal to the prefix space.
template <Field F>
Certificate<F> compile(const Dag& dag, const Strategy& strategy, const F& field) {
  const VertexIndex z = dag.sink();
  std::vector<PebbleConfig> configs;
  try {
    configs = configurations(dag, strategy.moves, Game::Reversible);
  } catch (const Error& e) {
    throw Error(ErrorKind::StrategyIllegal, e.what());
  }
  std::size_t t_prime = 0;
  while (t_prime < configs.size() && !configs[t_prime].contains(z)) ++t_prime;
  if (t_prime == configs.size()) throw Error(ErrorKind::SinkNotReached, "the strategy never pebbles the sink");

  Certificate<F> cert(field, CertMode::Multilinear);
  for (std::size_t i = 1; i <= t_prime; ++i) {
    const Move& mv = strategy.moves[i - 1];
    PebbleConfig rest = configs[i];
    rest.erase(mv.vertex);
    for (VertexIndex u : dag.preds(mv.vertex)) rest.erase(u);
    auto coeff = mv.sign() > 0 ? field.one() : field.neg(field.one());
    cert.multiplier(AxiomId::of_vertex(mv.vertex)).add_term(Monomial(rest.vertices()), coeff);
  }
  PebbleConfig last = configs[t_prime];
  last.erase(z);
  cert.multiplier(AxiomId::sink()).add_term(Monomial(last.vertices()), field.one());
  return cert;
}

template <Field F>
struct ConfigEdge {
  std::size_t lower;  // W u pred(v)
  std::size_t upper;  // W u pred(v) u {v}
  VertexIndex vertex;
  typename F::value_type weight;
};

// Multigraph on pebble configurations built from a multilinear certificate:
// each monomial x_W of Q_v without x_v yields an edge between W u pred(v)
// and W u pred(v) u {v}, weighted by its coefficient. Node 0 is always the
// empty configuration.
template <Field F>
struct ConfigGraph {
  F field;
  VertexIndex sink;
  std::vector<PebbleConfig> nodes;
  std::vector<ConfigEdge<F>> edges;
  std::unordered_map<PebbleConfig, std::size_t, PebbleConfigHash> index;

  std::size_t node(const PebbleConfig& c) {
    auto [it, inserted] = index.try_emplace(c, nodes.size());
    if (inserted) nodes.push_back(c);
    return it->second;
  }
  std::optional<std::size_t> find(const PebbleConfig& c) const {
    auto it = index.find(c);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

template <Field F>
ConfigGraph<F> config_graph(const Dag& dag, const Certificate<F>& cert) {
  if (cert.mode != CertMode::Multilinear)
    throw Error(ErrorKind::NotMultilinear, "configuration graphs need a multilinear certificate");
  ConfigGraph<F> g{cert.field, dag.sink(), {}, {}, {}};
  g.node(PebbleConfig(dag.size()));
  for (const auto& [id, q] : cert.multipliers) {
    if (!q.is_multilinear())
      throw Error(ErrorKind::NotMultilinear, "multiplier of " + axiom_name(id, dag) + " has a repeated variable");
    if (id.kind == AxiomId::Kind::Sink) continue;
    const VertexIndex v = id.vertex;
    if (v >= dag.size()) throw Error(ErrorKind::UnknownAxiom, "vertex axiom index " + std::to_string(v));
    for (const auto& [m, c] : q.terms()) {
      if (m.contains(v)) continue;
      PebbleConfig lo(dag.size());
      for (VertexIndex w : m.vars()) lo.insert(w);
      for (VertexIndex u : dag.preds(v)) lo.insert(u);
      PebbleConfig hi = lo;
      hi.insert(v);
      std::size_t a = g.node(lo), b = g.node(hi);
      g.edges.push_back({a, b, v, c});
    }
  }
  return g;
}

template <Field F>
struct WeightReport {
  typename F::value_type empty_weight;
  std::size_t checked = 0;  // sink-free configurations examined, the empty one included
  std::vector<std::pair<PebbleConfig, typename F::value_type>> violations;

  bool ok() const noexcept { return violations.empty(); }
};

// The empty configuration must weigh 1 and every other configuration that
// avoids the sink must weigh 0. An edge from x_W in Q_v with coefficient a
// generates a * x_{W u pred(v)} and -a * x_{W u pred(v) u {v}} in the
// expanded sum, so it adds +a to its lower endpoint and -a to its upper
// one; a configuration's weight is the sum over its incident edges.
template <Field F>
WeightReport<F> check_weights(const ConfigGraph<F>& g) {
  const F& field = g.field;
  std::vector<typename F::value_type> weight(g.nodes.size(), field.zero());
  for (const auto& e : g.edges) {
    weight[e.lower] = field.add(weight[e.lower], e.weight);
    weight[e.upper] = field.sub(weight[e.upper], e.weight);
  }
  WeightReport<F> r{weight[0], 0, {}};
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.nodes[i].contains(g.sink)) continue;
    ++r.checked;
    const auto expected = i == 0 ? field.one() : field.zero();
    if (!field.equal(weight[i], expected)) r.violations.emplace_back(g.nodes[i], weight[i]);
  }
  return r;
}

// Visiting reversible pebbling read off a certificate: the shortest path
// from the empty configuration to a configuration holding the sink in the
// configuration graph, walked there and back.
template <Field F>
Strategy extract(const Dag& dag, const Certificate<F>& cert) {
  auto formula = pebbling_formula(dag, cert.field);
  Certificate<F> ml(cert.field);
  try {
    ml = multilinearize(formula, cert);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ResultInvalid) throw;
    throw Error(ErrorKind::CertificateInvalid, e.what());
  }
  auto g = config_graph(dag, ml);

  std::vector<std::vector<std::size_t>> adj(g.nodes.size());
  for (const auto& e : g.edges) {
    adj[e.lower].push_back(e.upper);
    adj[e.upper].push_back(e.lower);
  }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end(), [&](std::size_t a, std::size_t b) { return g.nodes[a] < g.nodes[b]; });
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  std::vector<std::size_t> parent(g.nodes.size(), SIZE_MAX);
  std::deque<std::size_t> queue{0};
  parent[0] = 0;
  std::optional<std::size_t> target;
  while (!queue.empty() && !target) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[u]) {
      if (parent[w] != SIZE_MAX) continue;
      parent[w] = u;
      if (g.nodes[w].contains(g.sink)) {
        target = w;
        break;
      }
      queue.push_back(w);
    }
  }
  if (!target)
    throw Error(ErrorKind::NoPathToSink,
                "no path from the empty configuration to the sink in the configuration graph of a valid certificate");

  std::vector<Move> prefix;
  for (std::size_t w = *target; w != 0; w = parent[w]) {
    const PebbleConfig &here = g.nodes[w], &prev = g.nodes[parent[w]];
    for (VertexIndex v = 0; v < dag.size(); ++v) {
      if (here.contains(v) != prev.contains(v)) {
        prefix.push_back({here.contains(v) ? MoveKind::Place : MoveKind::Remove, v});
        break;
      }
    }
  }
  std::reverse(prefix.begin(), prefix.end());
  return mirror_extend(dag, prefix);
}

}  // namespace revpeb
