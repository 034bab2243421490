#pragma once

// Constructive reversible pebbling strategies.
//
// Line strategies are produced first as schedules of positions on an
// abstract line 1..L (position 0 is the base, either a pebbled vertex or
// the start of the line). Each entry toggles the pebble on that position;
// the kind of the move follows from the current configuration. The graph
// strategies below drive these schedules and service the extra predecessor
// of every line vertex they touch.

#include <algorithm>
#include <string>
#include <vector>

#include "revpeb/dag.hpp"
#include "revpeb/pebbling.hpp"

namespace revpeb {

namespace line_schedule {

using Schedule = std::vector<std::size_t>;

inline void append_shifted(Schedule& out, const Schedule& part, std::size_t offset) {
  for (std::size_t p : part) out.push_back(p + offset);
}

// Toggles position d using ceil(log2 d) + 1 pebbles (the base excluded).
// The schedule is a palindrome, so running it again undoes it.
inline Schedule toggle(std::size_t d) {
  if (d == 0) return {};
  if (d == 1) return {1};
  std::size_t half = std::size_t{1} << floor_log2(d - 1);  // largest power of two < d
  Schedule a = toggle(half);
  Schedule out = a;
  append_shifted(out, toggle(d - half), half);
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

// Prefix of a visiting pebbling of positions 1..L: ends right after L is
// placed. Uses ceil(log2(L + 1)) pebbles.
inline Schedule visit_prefix(std::size_t length) {
  Schedule out;
  std::size_t base = 0;
  std::size_t budget = 0;
  while ((std::size_t{1} << budget) <= length) ++budget;  // ceil(log2(length + 1))
  while (length > 0) {
    std::size_t d = std::min(std::size_t{1} << (budget - 1), length);
    Schedule part = toggle(d);
    if (d == length) part.erase(std::find(part.begin(), part.end(), d) + 1, part.end());
    append_shifted(out, part, base);
    base += d;
    length -= d;
    --budget;
  }
  return out;
}

// Smallest m with m^k >= n, i.e. ceil(n^(1/k)).
inline std::size_t ceil_root(std::size_t n, std::size_t k) {
  if (n <= 1 || k <= 1) return n;
  auto pow_at_least = [&](std::size_t m) {
    std::size_t acc = 1;
    for (std::size_t i = 0; i < k; ++i) {
      acc *= m;
      if (acc >= n) return true;
    }
    return acc >= n;
  };
  std::size_t m = 1;
  while (!pow_at_least(m)) ++m;
  return m;
}

// Toggles position d with k levels of checkpoints. Level 1 sweeps forward
// and cleans up behind itself; level k places ceil(d^(1/k)) evenly spaced
// checkpoints with level k-1 toggles, then removes all but the last.
inline Schedule checkpoint_toggle(std::size_t d, std::size_t k) {
  if (d == 0) return {};
  if (d == 1) return {1};
  Schedule out;
  if (k <= 1) {
    for (std::size_t p = 1; p <= d; ++p) out.push_back(p);
    for (std::size_t p = d - 1; p >= 1; --p) out.push_back(p);
    return out;
  }
  const std::size_t segments = ceil_root(d, k);
  const std::size_t seg = (d + segments - 1) / segments;
  std::vector<std::size_t> marks;
  for (std::size_t m = seg; m < d; m += seg) marks.push_back(m);
  marks.push_back(d);
  std::size_t prev = 0;
  for (std::size_t m : marks) {
    append_shifted(out, checkpoint_toggle(m - prev, k - 1), prev);
    prev = m;
  }
  for (std::size_t i = marks.size() - 1; i-- > 0;) {
    std::size_t from = i == 0 ? 0 : marks[i - 1];
    append_shifted(out, checkpoint_toggle(marks[i] - from, k - 1), from);
  }
  return out;
}

// Prefix of a visiting pebbling of 1..L with k levels: the checkpoints are
// left in place, the last of them being L itself.
inline Schedule checkpoint_visit_prefix(std::size_t length, std::size_t k) {
  Schedule out;
  if (length == 0) return out;
  if (k <= 1) {
    for (std::size_t p = 1; p <= length; ++p) out.push_back(p);
    return out;
  }
  const std::size_t segments = ceil_root(length, k);
  const std::size_t seg = (length + segments - 1) / segments;
  std::size_t prev = 0;
  while (prev < length) {
    std::size_t m = std::min(prev + seg, length);
    append_shifted(out, checkpoint_toggle(m - prev, k - 1), prev);
    prev = m;
  }
  return out;
}

}  // namespace line_schedule

// Accumulates a reversible move sequence while tracking the configuration.
// Every move is checked as it is appended; an illegal one is a bug in the
// construction and raises Internal.
class StrategyBuilder {
 public:
  explicit StrategyBuilder(const Dag& dag) : dag_(&dag), config_(dag.size()) {}

  const Dag& dag() const noexcept { return *dag_; }
  const PebbleConfig& config() const noexcept { return config_; }
  const std::vector<Move>& moves() const noexcept { return moves_; }
  std::size_t mark() const noexcept { return moves_.size(); }

  void toggle(VertexIndex v) {
    Move m{config_.contains(v) ? MoveKind::Remove : MoveKind::Place, v};
    try {
      apply_move(*dag_, config_, m, Game::Reversible);
    } catch (const Error& e) {
      throw Error(ErrorKind::Internal, std::string("strategy construction produced an illegal move: ") + e.what());
    }
    moves_.push_back(m);
  }
  void toggle(std::string_view name) { toggle(dag_->index_of(name)); }

  // Undoes moves [from, to) by replaying their inverses backwards.
  void undo(std::size_t from, std::size_t to) {
    for (std::size_t i = to; i-- > from;) toggle(moves_[i].vertex);
  }
  void undo_since(std::size_t from) { undo(from, moves_.size()); }

  // Adds `v` to the configuration and leaves every other vertex as it was.
  // Missing predecessors are pebbled recursively, all but the last kept in
  // place while the next is built, then everything is unwound.
  void persist(VertexIndex v) {
    if (config_.contains(v)) return;
    std::vector<std::pair<std::size_t, std::size_t>> held;
    for (VertexIndex u : dag_->preds(v)) {
      if (config_.contains(u)) continue;
      std::size_t from = mark();
      persist(u);
      held.emplace_back(from, mark());
    }
    toggle(v);
    for (auto it = held.rbegin(); it != held.rend(); ++it) undo(it->first, it->second);
  }

  Strategy finish(Flavor flavor) && { return {Game::Reversible, flavor, std::move(moves_)}; }

 private:
  const Dag* dag_;
  PebbleConfig config_;
  std::vector<Move> moves_;
};

namespace detail {

inline Strategy mirrored(const Dag& dag, const std::vector<Move>& prefix) { return mirror_extend(dag, prefix); }

inline void check_line_n(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::ParamOutOfRange, "line strategies need n >= 1");
}

}  // namespace detail

// Visiting strategy on line(n) in space ceil(log2(n + 1)).
inline Strategy strat_line_visiting(std::size_t n) {
  detail::check_line_n(n);
  Dag g = line(n);
  StrategyBuilder b(g);
  for (std::size_t p : line_schedule::visit_prefix(n)) b.toggle(static_cast<VertexIndex>(p - 1));
  return detail::mirrored(g, b.moves());
}

// Persistent strategy on line(n) in space floor(log2(n - 1)) + 2 (1 for n = 1).
inline Strategy strat_line_persistent(std::size_t n) {
  detail::check_line_n(n);
  Dag g = line(n);
  StrategyBuilder b(g);
  for (std::size_t p : line_schedule::toggle(n)) b.toggle(static_cast<VertexIndex>(p - 1));
  return std::move(b).finish(Flavor::Persistent);
}

// Visiting strategy on line(n) with k checkpoint levels:
// space <= 2k * ceil(n^(1/k)), time <= 2^k * n when n is a perfect k-th power.
inline Strategy strat_line_checkpoint(std::size_t n, std::size_t k) {
  detail::check_line_n(n);
  if (k < 1) throw Error(ErrorKind::ParamOutOfRange, "checkpoint levels k must be >= 1");
  Dag g = line(n);
  StrategyBuilder b(g);
  for (std::size_t p : line_schedule::checkpoint_visit_prefix(n, k)) b.toggle(static_cast<VertexIndex>(p - 1));
  return detail::mirrored(g, b.moves());
}

// Persistent strategy in space at most depth * max_indegree + 1.
inline Strategy strat_by_depth(const Dag& dag) {
  StrategyBuilder b(dag);
  b.persist(dag.sink());
  return std::move(b).finish(Flavor::Persistent);
}

inline Dag carlson_savage_single_sink(std::size_t c, std::size_t r, std::size_t sink_index) {
  if (sink_index < 1 || sink_index > c)
    throw Error(ErrorKind::ParamOutOfRange, "sink index must lie in 1.." + std::to_string(c));
  return single_sink_restriction(carlson_savage(c, r), carlson_savage_sink_name(c, r, sink_index));
}

namespace detail {

// Leaves sink j of the copy of G(c, r) at `prefix` pebbled. The spine is
// walked with the line visiting schedule; each spine move is bracketed by
// pebbling and unpebbling its pyramid or sub-graph predecessor.
inline void cs_reach(StrategyBuilder& b, std::size_t c, std::size_t r, std::size_t j, const std::string& prefix) {
  if (r == 1) {
    b.toggle(prefix + "s1");
    b.toggle(prefix + "s2");
    b.toggle(prefix + "z" + std::to_string(j));
    return;
  }
  const std::size_t section = 2 * c;
  for (std::size_t pos : line_schedule::visit_prefix((r - 1) * section)) {
    const std::size_t sec = (pos - 1) / section + 1;
    const std::size_t i = (pos - 1) % section + 1;
    std::size_t from = b.mark();
    if (i <= c) {
      b.persist(b.dag().index_of(prefix + "pyr" + std::to_string(i) + "/v" + std::to_string(r - 1) + "_1"));
    } else {
      cs_reach(b, c, r - 1, i - c, prefix + "sub/");
    }
    std::size_t to = b.mark();
    b.toggle(prefix + "spine" + std::to_string(j) + "/sec" + std::to_string(sec) + "/v" + std::to_string(i));
    b.undo(from, to);
  }
}

}  // namespace detail

// Visiting strategy on carlson_savage_single_sink(c, r, sink_index) in
// space at most r * (log2(c r) + 3).
inline Strategy strat_carlson_savage(std::size_t c, std::size_t r, std::size_t sink_index) {
  Dag g = carlson_savage_single_sink(c, r, sink_index);
  StrategyBuilder b(g);
  detail::cs_reach(b, c, r, sink_index, "");
  return detail::mirrored(g, b.moves());
}

namespace detail {

inline void check_bit_reversal_n(std::size_t n) {
  if (n < 2 || !is_power_of_two(n))
    throw Error(ErrorKind::ParamOutOfRange, "bit-reversal strategies need n a power of two >= 2");
}

inline VertexIndex bottom(std::size_t i) { return static_cast<VertexIndex>(i - 1); }
inline VertexIndex top(std::size_t n, std::size_t j) { return static_cast<VertexIndex>(n + j - 1); }

}  // namespace detail

// Visiting strategy on bit_reversal(n) in space at most 2 log2 n + 2: the
// top line is walked with the line visiting schedule and each of its moves
// fetches the needed bottom vertex with a fresh bottom-line visit.
inline Strategy strat_bit_reversal_small_space(std::size_t n) {
  detail::check_bit_reversal_n(n);
  Dag g = bit_reversal(n);
  StrategyBuilder b(g);
  for (std::size_t j : line_schedule::visit_prefix(n)) {
    const std::size_t p = bit_reverse_index(j, n);
    std::size_t from = b.mark();
    for (std::size_t q : line_schedule::visit_prefix(p)) b.toggle(detail::bottom(q));
    std::size_t to = b.mark();
    b.toggle(detail::top(n, j));
    b.undo(from, to);
  }
  return detail::mirrored(g, b.moves());
}

// Two-phase visiting strategy on bit_reversal(n): first ceil(n^(1/k))
// evenly spaced fixed pebbles on the bottom line, then the top line with k
// checkpoint levels, fetching each bottom vertex from the nearest fixed
// pebble to its left with k-1 levels.
inline Strategy strat_bit_reversal_checkpoint(std::size_t n, std::size_t k) {
  detail::check_bit_reversal_n(n);
  if (k < 1) throw Error(ErrorKind::ParamOutOfRange, "checkpoint levels k must be >= 1");
  Dag g = bit_reversal(n);
  StrategyBuilder b(g);
  const std::size_t fixed = line_schedule::ceil_root(n, k);
  const std::size_t seg = (n + fixed - 1) / fixed;

  for (std::size_t prev = 0; prev + seg <= n; prev += seg)
    for (std::size_t q : line_schedule::checkpoint_toggle(seg, k - 1)) b.toggle(detail::bottom(prev + q));

  for (std::size_t j : line_schedule::checkpoint_visit_prefix(n, k)) {
    const std::size_t p = bit_reverse_index(j, n);
    const std::size_t anchor = (p / seg) * seg;
    std::size_t from = b.mark();
    if (p != anchor)
      for (std::size_t q : line_schedule::checkpoint_visit_prefix(p - anchor, k - 1))
        b.toggle(detail::bottom(anchor + q));
    std::size_t to = b.mark();
    b.toggle(detail::top(n, j));
    b.undo(from, to);
  }
  return detail::mirrored(g, b.moves());
}

}  // namespace revpeb
