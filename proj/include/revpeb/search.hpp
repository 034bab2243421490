#pragma once

// Exact solvers over the configuration space of the pebble games.
//
// Configurations are 64-bit masks over topological indices, so instances
// are limited to 64 vertices. Only configurations with at most `space`
// pebbles are ever generated. Moves are tried in increasing vertex order
// and the first-found parent is kept, which makes every witness the
// lexicographically smallest shortest move sequence.

#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "revpeb/dag.hpp"
#include "revpeb/pebbling.hpp"

namespace revpeb {

struct SearchOptions {
  // Maximum number of expanded configurations per search.
  std::uint64_t state_budget = 50'000'000;
};

struct SearchResult {
  std::size_t value = 0;  // space for min_space, time for min_time_within_space
  Strategy witness;
};

struct TradeoffPoint {
  std::size_t space_budget = 0;
  std::size_t optimal_time = 0;
  Strategy witness;
};

namespace detail {

using Mask = std::uint64_t;

inline Mask bit(VertexIndex v) { return Mask{1} << v; }

class ConfigSpace {
 public:
  ConfigSpace(const Dag& dag, Game game) : game_(game), n_(dag.size()), sink_(dag.sink()) {
    if (dag.size() > 64)
      throw Error(ErrorKind::InstanceTooLarge,
                  "exact search supports at most 64 vertices, graph has " + std::to_string(dag.size()));
    preds_.resize(n_, 0);
    for (VertexIndex v = 0; v < n_; ++v)
      for (VertexIndex u : dag.preds(v)) preds_[v] |= bit(u);
  }

  std::size_t size() const noexcept { return n_; }
  VertexIndex sink() const noexcept { return sink_; }

  bool can_toggle(Mask state, VertexIndex v, std::size_t space) const {
    const bool occupied = state & bit(v);
    if (!occupied) {
      return (state & preds_[v]) == preds_[v] && static_cast<std::size_t>(std::popcount(state)) < space;
    }
    return game_ == Game::Standard || (state & preds_[v]) == preds_[v];
  }

 private:
  Game game_;
  std::size_t n_;
  VertexIndex sink_;
  std::vector<Mask> preds_;
};

// Breadth-first search from the empty configuration. `on_discover(state,
// depth)` is called for each newly generated configuration and returns true
// to stop the search; `keep_going(depth)` is asked before expanding a node.
class Bfs {
 public:
  Bfs(const ConfigSpace& space, std::size_t budget_pebbles, std::uint64_t state_budget)
      : space_(space), pebbles_(budget_pebbles), state_budget_(state_budget) {}

  template <typename OnDiscover, typename KeepGoing>
  void run(OnDiscover&& on_discover, KeepGoing&& keep_going) {
    states_.assign(1, 0);
    parent_.assign(1, UINT32_MAX);
    depth_.assign(1, 0);
    index_.clear();
    index_.emplace(0, 0);
    if (on_discover(Mask{0}, std::size_t{0})) return;
    std::uint64_t expanded = 0;
    for (std::size_t head = 0; head < states_.size(); ++head) {
      const Mask s = states_[head];
      const std::size_t d = depth_[head];
      if (!keep_going(d)) return;
      if (++expanded > state_budget_)
        throw Error(ErrorKind::InstanceTooLarge,
                    "state budget of " + std::to_string(state_budget_) + " expansions exceeded");
      for (VertexIndex v = 0; v < space_.size(); ++v) {
        if (!space_.can_toggle(s, v, pebbles_)) continue;
        const Mask t = s ^ bit(v);
        if (!index_.emplace(t, static_cast<std::uint32_t>(states_.size())).second) continue;
        states_.push_back(t);
        parent_.push_back(static_cast<std::uint32_t>(head));
        depth_.push_back(d + 1);
        if (on_discover(t, d + 1)) return;
      }
    }
  }

  // Moves along the BFS tree from the empty configuration to `target`.
  std::vector<Move> path_to(Mask target) const {
    std::vector<Move> out;
    std::uint32_t i = index_.at(target);
    while (parent_[i] != UINT32_MAX) {
      const Mask here = states_[i], prev = states_[parent_[i]];
      const auto v = static_cast<VertexIndex>(std::countr_zero(here ^ prev));
      out.push_back({(here & bit(v)) ? MoveKind::Place : MoveKind::Remove, v});
      i = parent_[i];
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  const ConfigSpace& space_;
  std::size_t pebbles_;
  std::uint64_t state_budget_;
  std::vector<Mask> states_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::size_t> depth_;
  std::unordered_map<Mask, std::uint32_t> index_;
};

inline Error infeasible(const Dag& dag, Game game, Flavor flavor, std::size_t s) {
  return Error(ErrorKind::SpaceInfeasible, std::string("no ") + to_string(game) + " " + to_string(flavor) +
                                               " pebbling of '" + dag.name(dag.sink()) + "' within " +
                                               std::to_string(s) + " pebbles");
}

}  // namespace detail

// Minimum time of a pebbling of the requested game and flavor that never
// holds more than `space` pebbles.
//   reversible/visiting:  2 * (distance to a configuration holding the sink),
//                         witness mirrored from the shortest half
//   reversible/persistent, standard/persistent: distance to {sink}
//   standard/visiting:    min over sink configurations U of distance + |U|
inline SearchResult min_time_within_space(const Dag& dag, Game game, Flavor flavor, std::size_t space,
                                          const SearchOptions& opts = {}) {
  using detail::Mask;
  detail::ConfigSpace cs(dag, game);
  const Mask z = detail::bit(cs.sink());
  detail::Bfs bfs(cs, space, opts.state_budget);

  if (flavor == Flavor::Persistent) {
    std::optional<std::size_t> found;
    bfs.run([&](Mask s, std::size_t d) { return s == z ? (found = d, true) : false; },
            [](std::size_t) { return true; });
    if (!found) throw detail::infeasible(dag, game, flavor, space);
    return {*found, Strategy{game, flavor, bfs.path_to(z)}};
  }

  if (game == Game::Reversible) {
    std::optional<Mask> target;
    std::size_t depth = 0;
    bfs.run([&](Mask s, std::size_t d) { return (s & z) ? (target = s, depth = d, true) : false; },
            [](std::size_t) { return true; });
    if (!target) throw detail::infeasible(dag, game, flavor, space);
    return {2 * depth, mirror_extend(dag, bfs.path_to(*target))};
  }

  std::optional<Mask> target;
  std::size_t best = SIZE_MAX;
  bfs.run(
      [&](Mask s, std::size_t d) {
        if (s & z) {
          const std::size_t value = d + static_cast<std::size_t>(std::popcount(s));
          if (value < best) {
            best = value;
            target = s;
          }
        }
        return false;
      },
      [&](std::size_t d) { return best == SIZE_MAX || d + 2 < best; });
  if (!target) throw detail::infeasible(dag, game, flavor, space);
  Strategy w{game, flavor, bfs.path_to(*target)};
  for (VertexIndex v = 0; v < cs.size(); ++v)
    if (*target & detail::bit(v)) w.moves.push_back(remove(v));
  return {best, std::move(w)};
}

// Smallest pebble budget admitting a pebbling, with a time-optimal witness
// at that budget.
inline SearchResult min_space(const Dag& dag, Game game, Flavor flavor, const SearchOptions& opts = {}) {
  for (std::size_t s = 1; s <= dag.size(); ++s) {
    try {
      SearchResult r = min_time_within_space(dag, game, flavor, s, opts);
      return {s, std::move(r.witness)};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SpaceInfeasible) throw;
    }
  }
  throw detail::infeasible(dag, game, flavor, dag.size());
}

// Optimal time for every budget from the minimum space up to s_max. Each
// witness is replayed through verify_strategy before it is returned.
inline std::vector<TradeoffPoint> pareto(const Dag& dag, Game game, Flavor flavor, std::size_t s_max,
                                         const SearchOptions& opts = {}) {
  const std::size_t s_min = min_space(dag, game, flavor, opts).value;
  if (s_max < s_min)
    throw Error(ErrorKind::SpaceInfeasible,
                "s_max " + std::to_string(s_max) + " is below the minimum space " + std::to_string(s_min));
  std::vector<TradeoffPoint> out;
  for (std::size_t s = s_min; s <= s_max; ++s) {
    SearchResult r = min_time_within_space(dag, game, flavor, s, opts);
    PebblingMetrics m = verify_strategy(dag, r.witness);
    if (m.time != r.value || m.space > s)
      throw Error(ErrorKind::Internal, "search witness does not replay to the reported metrics");
    out.push_back({s, r.value, std::move(r.witness)});
  }
  return out;
}

// Time lower bound for standard pebblings of G(c, r) holding at most `space`
// pebbles: ((c - s') / (s' + 1))^r * r! with s' = space - r - 1, which is
// the smallest s' such that space < (r + 2) + s'. Zero when s' falls outside
// 0 < s' <= c - 3, where no bound applies.
inline mpq_class cs_lower_bound(std::size_t c, std::size_t r, std::size_t space) {
  if (space < r + 2) return 0;
  const std::size_t surplus = space - r - 1;
  if (surplus == 0 || c < 3 || surplus > c - 3) return 0;
  mpq_class base(static_cast<long>(c - surplus), static_cast<long>(surplus + 1));
  base.canonicalize();
  mpq_class out = 1;
  for (std::size_t i = 0; i < r; ++i) out *= base;
  for (std::size_t i = 2; i <= r; ++i) out *= static_cast<long>(i);
  return out;
}

}  // namespace revpeb
