#pragma once

// DAG model plus generators for every graph family used by the toolkit.
//
// Vertices carry a unique name and a dense index; indices are a topological
// order (every edge goes from a lower to a higher index), which is how
// acyclicity is certified once a Dag exists.
//
// Generated families use fixed names so strategies and certificates stay
// portable between runs:
//   line(n)                 v1 .. vn
//   pyramid(h)              v<level>_<pos>, level 0 = sources, pos 1-based
//   bit_reversal(n)         x1 .. xn (bottom line), y1 .. yn (top line)
//   carlson_savage(c, 1)    s1, s2, z1 .. zc
//   carlson_savage(c, r>1)  pyr<i>/<pyramid name>, sub/<name in G(c, r-1)>,
//                           spine<j>/sec<k>/v<i>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "revpeb/error.hpp"

namespace revpeb {

using VertexIndex = std::uint32_t;

class Dag {
 public:
  Dag() = default;

  std::size_t size() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& name(VertexIndex v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<VertexIndex> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VertexIndex index_of(std::string_view name) const {
    auto v = find(name);
    if (!v) throw Error(ErrorKind::UnknownVertex, "no vertex named '" + std::string(name) + "'");
    return *v;
  }

  std::span<const VertexIndex> preds(VertexIndex v) const { return preds_.at(v); }
  std::span<const VertexIndex> succs(VertexIndex v) const { return succs_.at(v); }

  // Sorted by (pred, succ) topological index.
  const std::vector<std::pair<VertexIndex, VertexIndex>>& edges() const noexcept { return edges_; }

  // All outdegree-0 vertices, in index order.
  const std::vector<VertexIndex>& sinks() const noexcept { return sinks_; }
  std::vector<VertexIndex> sources() const {
    std::vector<VertexIndex> out;
    for (VertexIndex v = 0; v < size(); ++v)
      if (preds_[v].empty()) out.push_back(v);
    return out;
  }

  std::optional<VertexIndex> designated_sink() const noexcept { return designated_sink_; }

  // The sink z; throws unless one is designated.
  VertexIndex sink() const {
    if (!designated_sink_)
      throw Error(ErrorKind::NoDesignatedSink,
                  "graph has " + std::to_string(sinks_.size()) +
                      " sinks and none is designated; use single_sink_restriction");
    return *designated_sink_;
  }

  std::size_t max_indegree() const noexcept { return max_indegree_; }

  // Longest path, counted in edges.
  std::size_t depth() const {
    std::vector<std::size_t> d(size(), 0);
    std::size_t best = 0;
    for (VertexIndex v = 0; v < size(); ++v) {
      for (VertexIndex u : preds_[v]) d[v] = std::max(d[v], d[u] + 1);
      best = std::max(best, d[v]);
    }
    return best;
  }

  bool has_edge(VertexIndex from, VertexIndex to) const {
    const auto& p = preds_.at(to);
    return std::binary_search(p.begin(), p.end(), from);
  }

 private:
  friend Dag build_dag(const std::vector<std::string>&,
                       const std::vector<std::pair<std::string, std::string>>&,
                       const std::optional<std::string>&);

  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<std::vector<VertexIndex>> preds_;
  std::vector<std::vector<VertexIndex>> succs_;
  std::vector<std::pair<VertexIndex, VertexIndex>> edges_;
  std::vector<VertexIndex> sinks_;
  std::optional<VertexIndex> designated_sink_;
  std::size_t max_indegree_ = 0;
};

// Validates and indexes a graph. Indices follow a topological order that
// keeps the declaration order wherever the edges allow it. Without an
// explicit sink, a graph with exactly one outdegree-0 vertex gets that vertex
// designated.
inline Dag build_dag(const std::vector<std::string>& vertices,
                     const std::vector<std::pair<std::string, std::string>>& edges,
                     const std::optional<std::string>& designated_sink = std::nullopt) {
  const std::size_t n = vertices.size();
  std::unordered_map<std::string, std::size_t> decl;
  decl.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!decl.emplace(vertices[i], i).second)
      throw Error(ErrorKind::DuplicateVertex, "vertex '" + vertices[i] + "' declared twice");
  }
  auto lookup = [&](const std::string& name) {
    auto it = decl.find(name);
    if (it == decl.end())
      throw Error(ErrorKind::UnknownVertex, "edge references undeclared vertex '" + name + "'");
    return it->second;
  };

  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::pair<std::size_t, std::size_t>> raw;
  raw.reserve(edges.size());
  for (const auto& [a, b] : edges) raw.emplace_back(lookup(a), lookup(b));
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  std::vector<std::size_t> indeg(n, 0);
  for (auto [a, b] : raw) {
    if (a == b) throw Error(ErrorKind::CycleDetected, "self-loop on '" + vertices[a] + "'");
    out[a].push_back(b);
    ++indeg[b];
  }

  // Kahn's algorithm, always taking the earliest-declared ready vertex.
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t w : out[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if (order.size() != n) {
    for (std::size_t i = 0; i < n; ++i)
      if (indeg[i] != 0)
        throw Error(ErrorKind::CycleDetected, "cycle through vertex '" + vertices[i] + "'");
  }

  std::vector<VertexIndex> topo_of(n);
  for (std::size_t t = 0; t < n; ++t) topo_of[order[t]] = static_cast<VertexIndex>(t);

  Dag g;
  g.names_.resize(n);
  g.preds_.assign(n, {});
  g.succs_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    g.names_[topo_of[i]] = vertices[i];
    g.index_.emplace(vertices[i], topo_of[i]);
  }
  for (auto [a, b] : raw) g.edges_.emplace_back(topo_of[a], topo_of[b]);
  std::sort(g.edges_.begin(), g.edges_.end());
  for (auto [a, b] : g.edges_) {
    g.preds_[b].push_back(a);
    g.succs_[a].push_back(b);
  }
  for (auto& p : g.preds_) std::sort(p.begin(), p.end());
  for (VertexIndex v = 0; v < n; ++v) {
    g.max_indegree_ = std::max(g.max_indegree_, g.preds_[v].size());
    if (g.succs_[v].empty()) g.sinks_.push_back(v);
  }

  if (designated_sink) {
    VertexIndex z = g.index_of(*designated_sink);
    if (!g.succs_[z].empty())
      throw Error(ErrorKind::NotASink, "designated sink '" + *designated_sink + "' has successors");
    g.designated_sink_ = z;
  } else if (g.sinks_.size() == 1) {
    g.designated_sink_ = g.sinks_.front();
  }
  return g;
}

namespace detail {

using EdgeList = std::vector<std::pair<std::string, std::string>>;

// Appends a pyramid of height h; returns the name of its sink.
inline std::string append_pyramid(const std::string& prefix, std::size_t h,
                                  std::vector<std::string>& vertices, EdgeList& edges) {
  auto name = [&](std::size_t level, std::size_t pos) {
    return prefix + "v" + std::to_string(level) + "_" + std::to_string(pos);
  };
  for (std::size_t level = 0; level <= h; ++level) {
    for (std::size_t pos = 1; pos <= h - level + 1; ++pos) {
      vertices.push_back(name(level, pos));
      if (level > 0) {
        edges.emplace_back(name(level - 1, pos), name(level, pos));
        edges.emplace_back(name(level - 1, pos + 1), name(level, pos));
      }
    }
  }
  return name(h, 1);
}

// Appends G(c, r); returns its c sinks in order.
inline std::vector<std::string> append_carlson_savage(const std::string& prefix, std::size_t c,
                                                      std::size_t r,
                                                      std::vector<std::string>& vertices,
                                                      EdgeList& edges) {
  std::vector<std::string> sinks;
  if (r == 1) {
    vertices.push_back(prefix + "s1");
    vertices.push_back(prefix + "s2");
    for (std::size_t j = 1; j <= c; ++j) {
      std::string z = prefix + "z" + std::to_string(j);
      vertices.push_back(z);
      edges.emplace_back(prefix + "s1", z);
      edges.emplace_back(prefix + "s2", z);
      sinks.push_back(z);
    }
    return sinks;
  }
  std::vector<std::string> pyramid_sinks;
  for (std::size_t i = 1; i <= c; ++i)
    pyramid_sinks.push_back(
        append_pyramid(prefix + "pyr" + std::to_string(i) + "/", r - 1, vertices, edges));
  std::vector<std::string> sub_sinks =
      append_carlson_savage(prefix + "sub/", c, r - 1, vertices, edges);
  for (std::size_t j = 1; j <= c; ++j) {
    std::string prev;
    for (std::size_t sec = 1; sec <= r - 1; ++sec) {
      for (std::size_t i = 1; i <= 2 * c; ++i) {
        std::string v = prefix + "spine" + std::to_string(j) + "/sec" + std::to_string(sec) +
                        "/v" + std::to_string(i);
        vertices.push_back(v);
        if (!prev.empty()) edges.emplace_back(prev, v);
        edges.emplace_back(i <= c ? pyramid_sinks[i - 1] : sub_sinks[i - c - 1], v);
        prev = v;
      }
    }
    sinks.push_back(prev);
  }
  return sinks;
}

}  // namespace detail

inline Dag line(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::ParamOutOfRange, "line needs n >= 1");
  std::vector<std::string> vs;
  detail::EdgeList es;
  for (std::size_t i = 1; i <= n; ++i) {
    vs.push_back("v" + std::to_string(i));
    if (i > 1) es.emplace_back(vs[i - 2], vs[i - 1]);
  }
  return build_dag(vs, es, vs.back());
}

inline Dag pyramid(std::size_t h) {
  std::vector<std::string> vs;
  detail::EdgeList es;
  std::string z = detail::append_pyramid("", h, vs, es);
  return build_dag(vs, es, z);
}

// Number of spine sections of G(c, r+1) is r; see the naming scheme above.
inline Dag carlson_savage(std::size_t c, std::size_t r) {
  if (c < 2 || r < 1)
    throw Error(ErrorKind::ParamOutOfRange,
                "carlson_savage needs c >= 2 and r >= 1 (got c=" + std::to_string(c) +
                    ", r=" + std::to_string(r) + ")");
  std::vector<std::string> vs;
  detail::EdgeList es;
  detail::append_carlson_savage("", c, r, vs, es);
  return build_dag(vs, es);
}

// Name of sink j (1-based) of G(c, r) under the naming scheme.
inline std::string carlson_savage_sink_name(std::size_t c, std::size_t r, std::size_t j) {
  if (r == 1) return "z" + std::to_string(j);
  return "spine" + std::to_string(j) + "/sec" + std::to_string(r - 1) + "/v" +
         std::to_string(2 * c);
}

// Induced subgraph on the ancestors of `sink` (inclusive), with `sink` designated.
inline Dag single_sink_restriction(const Dag& dag, VertexIndex sink) {
  if (sink >= dag.size() || !dag.succs(sink).empty())
    throw Error(ErrorKind::NotASinkVertex,
                sink < dag.size() ? "'" + dag.name(sink) + "' is not a sink"
                                  : "vertex index out of range");
  std::vector<char> keep(dag.size(), 0);
  std::vector<VertexIndex> stack{sink};
  keep[sink] = 1;
  while (!stack.empty()) {
    VertexIndex v = stack.back();
    stack.pop_back();
    for (VertexIndex u : dag.preds(v))
      if (!keep[u]) {
        keep[u] = 1;
        stack.push_back(u);
      }
  }
  std::vector<std::string> vs;
  detail::EdgeList es;
  for (VertexIndex v = 0; v < dag.size(); ++v) {
    if (!keep[v]) continue;
    vs.push_back(dag.name(v));
    for (VertexIndex u : dag.preds(v)) es.emplace_back(dag.name(u), dag.name(v));
  }
  return build_dag(vs, es, dag.name(sink));
}

inline Dag single_sink_restriction(const Dag& dag, std::string_view sink) {
  auto v = dag.find(sink);
  if (!v) throw Error(ErrorKind::NotASinkVertex, "no vertex named '" + std::string(sink) + "'");
  return single_sink_restriction(dag, *v);
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t floor_log2(std::size_t n) {
  std::size_t b = 0;
  while ((std::size_t{1} << (b + 1)) <= n) ++b;
  return b;
}

// sigma on 1-based indices: reverse the log2(n)-bit representation of i-1.
inline std::size_t bit_reverse_index(std::size_t i, std::size_t n) {
  const std::size_t bits = floor_log2(n);
  std::size_t x = i - 1, y = 0;
  for (std::size_t b = 0; b < bits; ++b) {
    y = (y << 1) | (x & 1);
    x >>= 1;
  }
  return y + 1;
}

inline Dag bit_reversal(std::size_t n) {
  if (!is_power_of_two(n))
    throw Error(ErrorKind::NotPowerOfTwo, std::to_string(n) + " is not a power of two");
  if (n < 2) throw Error(ErrorKind::ParamOutOfRange, "bit_reversal needs n >= 2");
  std::vector<std::string> vs;
  detail::EdgeList es;
  for (std::size_t i = 1; i <= n; ++i) vs.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) vs.push_back("y" + std::to_string(i));
  for (std::size_t i = 1; i < n; ++i) {
    es.emplace_back("x" + std::to_string(i), "x" + std::to_string(i + 1));
    es.emplace_back("y" + std::to_string(i), "y" + std::to_string(i + 1));
  }
  for (std::size_t i = 1; i <= n; ++i)
    es.emplace_back("x" + std::to_string(i), "y" + std::to_string(bit_reverse_index(i, n)));
  return build_dag(vs, es, "y" + std::to_string(n));
}

}  // namespace revpeb
