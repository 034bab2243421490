#pragma once

// Standard and reversible pebble games: configurations, moves, strategy
// replay and verification.
//
// Time is the number of moves. A visiting reversible pebbling that walks
// to the sink and back therefore has time 2t' where t' is the first step
// whose configuration holds the sink.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "revpeb/dag.hpp"
#include "revpeb/error.hpp"

namespace revpeb {

enum class Game { Standard, Reversible };
enum class Flavor { Visiting, Persistent };

inline const char* to_string(Game g) { return g == Game::Standard ? "standard" : "reversible"; }
inline const char* to_string(Flavor f) { return f == Flavor::Visiting ? "visiting" : "persistent"; }

// Set of pebbled vertices, stored as a bitset over topological indices.
class PebbleConfig {
 public:
  PebbleConfig() = default;
  explicit PebbleConfig(std::size_t vertex_count) : n_(vertex_count), words_((vertex_count + 63) / 64, 0) {}

  static PebbleConfig from_vertices(std::size_t vertex_count, const std::vector<VertexIndex>& vs) {
    PebbleConfig c(vertex_count);
    for (VertexIndex v : vs) c.insert(v);
    return c;
  }

  std::size_t universe() const noexcept { return n_; }

  bool contains(VertexIndex v) const { return (words_.at(v / 64) >> (v % 64)) & 1U; }
  void insert(VertexIndex v) { words_.at(v / 64) |= std::uint64_t{1} << (v % 64); }
  void erase(VertexIndex v) { words_.at(v / 64) &= ~(std::uint64_t{1} << (v % 64)); }
  void flip(VertexIndex v) { words_.at(v / 64) ^= std::uint64_t{1} << (v % 64); }

  std::size_t size() const noexcept {
    std::size_t s = 0;
    for (auto w : words_) s += static_cast<std::size_t>(std::popcount(w));
    return s;
  }
  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }

  bool contains_all(std::span<const VertexIndex> vs) const {
    return std::all_of(vs.begin(), vs.end(), [&](VertexIndex v) { return contains(v); });
  }

  std::vector<VertexIndex> vertices() const {
    std::vector<VertexIndex> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        out.push_back(static_cast<VertexIndex>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const PebbleConfig&, const PebbleConfig&) = default;
  friend auto operator<=>(const PebbleConfig& a, const PebbleConfig& b) {
    return a.words_ <=> b.words_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct PebbleConfigHash {
  std::size_t operator()(const PebbleConfig& c) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : c.words()) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

enum class MoveKind { Place, Remove };

struct Move {
  MoveKind kind;
  VertexIndex vertex;

  // +1 for a placement, -1 for a removal.
  int sign() const noexcept { return kind == MoveKind::Place ? 1 : -1; }
  Move inverse() const noexcept {
    return {kind == MoveKind::Place ? MoveKind::Remove : MoveKind::Place, vertex};
  }
  friend bool operator==(const Move&, const Move&) = default;
  friend auto operator<=>(const Move&, const Move&) = default;
};

inline Move place(VertexIndex v) { return {MoveKind::Place, v}; }
inline Move remove(VertexIndex v) { return {MoveKind::Remove, v}; }

struct Strategy {
  Game game = Game::Reversible;
  Flavor flavor = Flavor::Visiting;
  std::vector<Move> moves;

  std::size_t time() const noexcept { return moves.size(); }
  friend bool operator==(const Strategy&, const Strategy&) = default;
};

struct PebblingMetrics {
  std::size_t time = 0;
  std::size_t space = 0;
  std::size_t first_sink_step = 0;
  friend bool operator==(const PebblingMetrics&, const PebblingMetrics&) = default;
};

// Applies one move in place. Throws IllegalPlacement / IllegalRemoval.
inline void apply_move(const Dag& dag, PebbleConfig& config, Move move, Game game) {
  const VertexIndex v = move.vertex;
  if (v >= dag.size()) throw Error(ErrorKind::UnknownVertex, "vertex index " + std::to_string(v));
  const bool preds_ok = config.contains_all(dag.preds(v));
  if (move.kind == MoveKind::Place) {
    if (config.contains(v))
      throw Error(ErrorKind::IllegalPlacement, "'" + dag.name(v) + "' already holds a pebble");
    if (!preds_ok)
      throw Error(ErrorKind::IllegalPlacement, "predecessors of '" + dag.name(v) + "' not all pebbled");
    config.insert(v);
  } else {
    if (!config.contains(v))
      throw Error(ErrorKind::IllegalRemoval, "'" + dag.name(v) + "' holds no pebble");
    if (game == Game::Reversible && !preds_ok)
      throw Error(ErrorKind::IllegalRemoval,
                  "reversible removal from '" + dag.name(v) + "' needs its predecessors pebbled");
    config.erase(v);
  }
}

inline PebbleConfig step(const Dag& dag, PebbleConfig config, Move move, Game game) {
  apply_move(dag, config, move, game);
  return config;
}

// Is the move legal from `config`? Never throws for in-range vertices.
inline bool is_legal(const Dag& dag, const PebbleConfig& config, Move move, Game game) {
  if (move.vertex >= dag.size()) return false;
  const bool occupied = config.contains(move.vertex);
  if (move.kind == MoveKind::Place) return !occupied && config.contains_all(dag.preds(move.vertex));
  if (!occupied) return false;
  return game == Game::Standard || config.contains_all(dag.preds(move.vertex));
}

// Replays `moves` from the empty configuration, calling `visit(i, config)`
// after each move i (1-based) and once with i = 0 before any move.
// Throws IllegalMoveAt with the offending 1-based step.
template <typename Visitor>
void replay(const Dag& dag, std::span<const Move> moves, Game game, Visitor&& visit) {
  PebbleConfig config(dag.size());
  visit(std::size_t{0}, static_cast<const PebbleConfig&>(config));
  for (std::size_t i = 0; i < moves.size(); ++i) {
    try {
      apply_move(dag, config, moves[i], game);
    } catch (const Error& e) {
      throw Error(ErrorKind::IllegalMoveAt, e.what(), i + 1, e.kind());
    }
    visit(i + 1, static_cast<const PebbleConfig&>(config));
  }
}

inline std::vector<PebbleConfig> configurations(const Dag& dag, std::span<const Move> moves, Game game) {
  std::vector<PebbleConfig> out;
  out.reserve(moves.size() + 1);
  replay(dag, moves, game, [&](std::size_t, const PebbleConfig& c) { out.push_back(c); });
  return out;
}

inline PebblingMetrics verify_strategy(const Dag& dag, const Strategy& strategy) {
  const VertexIndex z = dag.sink();
  PebblingMetrics m;
  bool seen_sink = false;
  PebbleConfig last(dag.size());
  replay(dag, strategy.moves, strategy.game, [&](std::size_t i, const PebbleConfig& c) {
    m.space = std::max(m.space, c.size());
    if (!seen_sink && c.contains(z)) {
      seen_sink = true;
      m.first_sink_step = i;
    }
    if (i == strategy.moves.size()) last = c;
  });
  m.time = strategy.moves.size();
  if (!seen_sink) throw Error(ErrorKind::SinkNeverPebbled, "the sink '" + dag.name(z) + "' is never pebbled");
  if (strategy.flavor == Flavor::Visiting) {
    if (!last.empty())
      throw Error(ErrorKind::BadFinalConfig,
                  "visiting pebbling must end empty, " + std::to_string(last.size()) + " pebbles remain");
  } else {
    if (last.size() != 1 || !last.contains(z))
      throw Error(ErrorKind::BadFinalConfig, "persistent pebbling must end with exactly the sink pebbled");
  }
  return m;
}

// Move-wise inverse in reverse order.
inline std::vector<Move> reversed_moves(std::span<const Move> moves) {
  std::vector<Move> out;
  out.reserve(moves.size());
  for (auto it = moves.rbegin(); it != moves.rend(); ++it) out.push_back(it->inverse());
  return out;
}

// Prefix followed by its reversal: a visiting reversible pebbling.
inline Strategy mirror_extend(const Dag& dag, std::span<const Move> prefix) {
  const VertexIndex z = dag.sink();
  PebbleConfig last(dag.size());
  try {
    replay(dag, prefix, Game::Reversible, [&](std::size_t i, const PebbleConfig& c) {
      if (i == prefix.size()) last = c;
    });
  } catch (const Error& e) {
    throw Error(ErrorKind::PrefixIllegal, e.what());
  }
  if (!last.contains(z))
    throw Error(ErrorKind::SinkNotReached, "prefix does not end with the sink pebbled");
  Strategy s{Game::Reversible, Flavor::Visiting, {prefix.begin(), prefix.end()}};
  auto back = reversed_moves(prefix);
  s.moves.insert(s.moves.end(), back.begin(), back.end());
  return s;
}

// Moves up to and including the first one that pebbles the sink.
inline std::size_t sink_prefix_length(const Dag& dag, std::span<const Move> moves, Game game) {
  const VertexIndex z = dag.sink();
  std::size_t t = 0;
  bool seen = false;
  replay(dag, moves, game, [&](std::size_t i, const PebbleConfig& c) {
    if (!seen && c.contains(z)) {
      seen = true;
      t = i;
    }
  });
  if (!seen) throw Error(ErrorKind::SinkNotReached, "the sink is never pebbled");
  return t;
}

}  // namespace revpeb
