#include <gtest/gtest.h>

#include <random>

#include "revpeb/pebbling.hpp"

using namespace revpeb;

namespace {

PebbleConfig config_of(const Dag& g, std::initializer_list<const char*> names) {
  PebbleConfig c(g.size());
  for (const char* n : names) c.insert(g.index_of(n));
  return c;
}

Move pl(const Dag& g, const char* n) { return place(g.index_of(n)); }
Move rm(const Dag& g, const char* n) { return remove(g.index_of(n)); }

template <typename Fn>
Error error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  return Error(ErrorKind::Internal, "no error");
}

// A random legal reversible walk from the empty configuration.
std::vector<Move> random_walk(const Dag& g, std::mt19937_64& rng, std::size_t length) {
  PebbleConfig c(g.size());
  std::vector<Move> out;
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<Move> options;
    for (VertexIndex v = 0; v < g.size(); ++v) {
      Move m = c.contains(v) ? remove(v) : place(v);
      if (is_legal(g, c, m, Game::Reversible)) options.push_back(m);
    }
    Move m = options[rng() % options.size()];
    apply_move(g, c, m, Game::Reversible);
    out.push_back(m);
  }
  return out;
}

}  // namespace

TEST(Step, SourcePlacement) {
  Dag g = line(2);
  EXPECT_EQ(step(g, PebbleConfig(2), pl(g, "v1"), Game::Reversible), config_of(g, {"v1"}));
}

TEST(Step, SourceRemovalIsReversible) {
  Dag g = line(2);
  EXPECT_EQ(step(g, config_of(g, {"v1", "v2"}), rm(g, "v1"), Game::Reversible), config_of(g, {"v2"}));
}

TEST(Step, ReversibleRemovalNeedsPredecessors) {
  Dag g = line(2);
  auto c = config_of(g, {"v2"});
  EXPECT_EQ(error_of([&] { step(g, c, rm(g, "v2"), Game::Reversible); }).kind(), ErrorKind::IllegalRemoval);
  EXPECT_TRUE(step(g, c, rm(g, "v2"), Game::Standard).empty());
}

TEST(Step, IllegalPlacements) {
  Dag g = line(2);
  EXPECT_EQ(error_of([&] { step(g, PebbleConfig(2), pl(g, "v2"), Game::Standard); }).kind(),
            ErrorKind::IllegalPlacement);
  EXPECT_EQ(error_of([&] { step(g, config_of(g, {"v1"}), pl(g, "v1"), Game::Reversible); }).kind(),
            ErrorKind::IllegalPlacement);
  EXPECT_EQ(error_of([&] { step(g, PebbleConfig(2), rm(g, "v1"), Game::Standard); }).kind(),
            ErrorKind::IllegalRemoval);
}

TEST(Verify, SingleVertexLine) {
  Dag g = line(1);
  auto m = verify_strategy(g, {Game::Reversible, Flavor::Visiting, {pl(g, "v1"), rm(g, "v1")}});
  EXPECT_EQ(m.time, 2u);
  EXPECT_EQ(m.space, 1u);
  EXPECT_EQ(m.first_sink_step, 1u);
}

TEST(Verify, PyramidOne) {
  Dag g = pyramid(1);
  Strategy s{Game::Reversible,
             Flavor::Visiting,
             {pl(g, "v0_1"), pl(g, "v0_2"), pl(g, "v1_1"), rm(g, "v1_1"), rm(g, "v0_2"), rm(g, "v0_1")}};
  auto m = verify_strategy(g, s);
  EXPECT_EQ(m.time, 6u);
  EXPECT_EQ(m.space, 3u);
  EXPECT_EQ(m.first_sink_step, 3u);
}

TEST(Verify, IllegalMoveReportsStep) {
  Dag g = line(2);
  Strategy s{Game::Reversible, Flavor::Visiting, {pl(g, "v1"), pl(g, "v2"), rm(g, "v1"), rm(g, "v2")}};
  Error e = error_of([&] { verify_strategy(g, s); });
  EXPECT_EQ(e.kind(), ErrorKind::IllegalMoveAt);
  EXPECT_EQ(e.step(), 4u);
  EXPECT_EQ(e.cause(), ErrorKind::IllegalRemoval);
}

TEST(Verify, FlavorEndings) {
  Dag g = line(2);
  Strategy never{Game::Reversible, Flavor::Visiting, {pl(g, "v1"), rm(g, "v1")}};
  EXPECT_EQ(error_of([&] { verify_strategy(g, never); }).kind(), ErrorKind::SinkNeverPebbled);

  Strategy left_over{Game::Reversible, Flavor::Visiting, {pl(g, "v1"), pl(g, "v2")}};
  EXPECT_EQ(error_of([&] { verify_strategy(g, left_over); }).kind(), ErrorKind::BadFinalConfig);

  Strategy persistent{Game::Reversible, Flavor::Persistent, {pl(g, "v1"), pl(g, "v2"), rm(g, "v1")}};
  EXPECT_EQ(verify_strategy(g, persistent).space, 2u);
  persistent.moves.pop_back();
  EXPECT_EQ(error_of([&] { verify_strategy(g, persistent); }).kind(), ErrorKind::BadFinalConfig);

  Strategy standard{Game::Standard, Flavor::Visiting, {pl(g, "v1"), pl(g, "v2"), rm(g, "v1"), rm(g, "v2")}};
  EXPECT_EQ(verify_strategy(g, standard).time, 4u);
}

TEST(Mirror, Examples) {
  Dag one = line(1);
  Strategy s = mirror_extend(one, std::vector<Move>{pl(one, "v1")});
  ASSERT_EQ(s.moves.size(), 2u);
  EXPECT_EQ(s.moves[1], rm(one, "v1"));

  Dag g = line(2);
  Strategy t = mirror_extend(g, std::vector<Move>{pl(g, "v1"), pl(g, "v2")});
  EXPECT_EQ(verify_strategy(g, t).time, 4u);
  EXPECT_EQ(t.flavor, Flavor::Visiting);

  EXPECT_EQ(error_of([&] { mirror_extend(g, std::vector<Move>{pl(g, "v1")}); }).kind(), ErrorKind::SinkNotReached);
  EXPECT_EQ(error_of([&] { mirror_extend(g, std::vector<Move>{pl(g, "v2")}); }).kind(), ErrorKind::PrefixIllegal);
}

TEST(Mirror, MetricsOnRandomPrefixes) {
  std::mt19937_64 rng(11);
  Dag g = pyramid(3);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto walk = random_walk(g, rng, 40);
    std::size_t t = 0;
    try {
      t = sink_prefix_length(g, walk, Game::Reversible);
    } catch (const Error&) {
      continue;
    }
    std::vector<Move> prefix(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(t));
    std::size_t space = 0;
    for (const auto& c : configurations(g, prefix, Game::Reversible)) space = std::max(space, c.size());
    auto m = verify_strategy(g, mirror_extend(g, prefix));
    EXPECT_EQ(m.time, 2 * prefix.size());
    EXPECT_EQ(m.space, space);
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(Properties, ReversalClosure) {
  std::mt19937_64 rng(3);
  for (const Dag& g : {pyramid(2), bit_reversal(4), line(5)}) {
    for (int trial = 0; trial < 100; ++trial) {
      auto walk = random_walk(g, rng, 30);
      auto configs = configurations(g, walk, Game::Reversible);
      PebbleConfig c = configs.back();
      std::size_t i = configs.size() - 1;
      for (Move m : reversed_moves(walk)) {
        ASSERT_TRUE(is_legal(g, c, m, Game::Reversible));
        apply_move(g, c, m, Game::Reversible);
        EXPECT_EQ(c, configs[--i]);
      }
      EXPECT_TRUE(c.empty());
    }
  }
}

TEST(Properties, StandardIsRelaxation) {
  std::mt19937_64 rng(5);
  Dag g = pyramid(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto walk = random_walk(g, rng, 50);
    auto rev = configurations(g, walk, Game::Reversible);
    auto std_configs = configurations(g, walk, Game::Standard);
    EXPECT_EQ(rev, std_configs);
  }
}

TEST(Properties, ReplayVisitsEveryConfiguration) {
  Dag g = line(3);
  std::vector<Move> moves{pl(g, "v1"), pl(g, "v2"), rm(g, "v1"), pl(g, "v3")};
  std::vector<std::size_t> sizes;
  replay(g, moves, Game::Standard, [&](std::size_t, const PebbleConfig& c) { sizes.push_back(c.size()); });
  EXPECT_EQ(sizes, (std::vector<std::size_t>{0, 1, 2, 1, 2}));
}

TEST(PebbleConfig, LargeUniverse) {
  PebbleConfig c(130);
  c.insert(0);
  c.insert(64);
  c.insert(129);
  EXPECT_EQ(c.size(), 3u);
  EXPECT_EQ(c.vertices(), (std::vector<VertexIndex>{0, 64, 129}));
  c.flip(64);
  EXPECT_FALSE(c.contains(64));
}
