#include <gtest/gtest.h>

#include <random>

#include "juniper/errors.hpp"
#include "juniper/simplify.hpp"
#include "juniper/solver.hpp"
#include "oracle.hpp"

using namespace juniper;

namespace {

std::uint64_t mask_of(const VertexSet& s) { return s.words()[0]; }

Position position_of(int n, std::uint64_t mask, int current) {
  Position p;
  p.n = n;
  p.remaining = VertexSet(n);
  for (int v = 1; v <= n; ++v) {
    if (mask >> v & 1U) p.remaining.set(v);
  }
  p.current = current;
  return p;
}

}  // namespace

TEST(StripTrivial, RemovesOneAndLargePrimes) {
  const PrimeTable t(100);
  const SimplifiedStart s = strip_trivial(20, t);
  EXPECT_EQ(s.stripped_primes, (std::vector<int>{11, 13, 17, 19}));
  EXPECT_TRUE(s.stripped_one);
  EXPECT_EQ(s.removed_count, 5);
  EXPECT_EQ(s.kept.count(), 15);
  EXPECT_FALSE(s.kept.test(1));
  EXPECT_FALSE(s.kept.test(13));
  EXPECT_TRUE(s.kept.test(9));
}

TEST(StripTrivial, CoreHasSameValueAsFullGame) {
  const PrimeTable t(100);
  for (int n = 4; n <= 26; ++n) {
    oracle::BruteSolver brute(n);
    const SimplifiedStart s = strip_trivial(n, t);
    const std::uint64_t core = mask_of(s.kept);
    bool core_win = false;
    for (int v = 2; v <= n && !core_win; v += 2) {
      if (core >> v & 1U) core_win = !brute.wins(core & ~(std::uint64_t{1} << v), v);
    }
    EXPECT_EQ(core_win, brute.first_player_wins(true)) << n;
  }
}

TEST(PruneUnreachable, NeedsCurrent) {
  const DivisorGraph g(10);
  EXPECT_THROW(prune_unreachable(g, initial_position(10)), NotApplicable);
}

TEST(PruneUnreachable, KeepsOnlyConnectedPart) {
  const DivisorGraph g(30);
  // 1 gone: 17, 19, 23, 29 are now unreachable from 3.
  const Position p = replay(30, true, {2, 1, 3});
  const Position q = prune_unreachable(g, p);
  for (int v : {17, 19, 23, 29, 11, 13}) EXPECT_FALSE(q.remaining.test(v)) << v;
  EXPECT_TRUE(q.remaining.test(9));
  EXPECT_TRUE(q.remaining.test(10));
  EXPECT_TRUE(q.remaining.is_subset_of(p.remaining));
}

TEST(PrunePendantPairs, OnlyGuardedLeavesSurvive) {
  // A leaf may stay only when it touches the current vertex, or when its
  // neighbor is the current vertex's last way out.
  const DivisorGraph g(40);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto [mask, cur] = oracle::random_position(40, rng);
    const Position q = prune_pendant_pairs(g, position_of(40, mask, cur));
    std::vector<int> exits;
    q.remaining.for_each([&](int w) {
      if (oracle::divides_either_way(w, cur)) exits.push_back(w);
    });
    q.remaining.for_each([&](int v) {
      std::vector<int> nb;
      q.remaining.for_each([&](int w) {
        if (oracle::divides_either_way(v, w)) nb.push_back(w);
      });
      if (nb.size() != 1 || oracle::divides_either_way(v, cur)) return;
      EXPECT_EQ(exits, nb) << "leaf " << v << " next to " << nb[0];
    });
  }
}

TEST(Reduce, PreservesValueOnEveryReachablePosition) {
  for (int n = 2; n <= 12; ++n) {
    const DivisorGraph g(n);
    oracle::BruteSolver brute(n);
    for (const auto& [mask, cur] : oracle::reachable_positions(n)) {
      const Position r = reduce(g, position_of(n, mask, cur));
      ASSERT_EQ(brute.wins(mask, cur), brute.wins(mask_of(r.remaining), cur)) << n << " " << cur;
    }
  }
}

TEST(Reduce, PreservesValueOnRandomPositions) {
  std::mt19937_64 rng(5);
  for (int n = 13; n <= 20; ++n) {
    const DivisorGraph g(n);
    oracle::BruteSolver brute(n);
    for (int i = 0; i < 10000 / 8; ++i) {
      const auto [mask, cur] = oracle::random_position(n, rng);
      const Position r = reduce(g, position_of(n, mask, cur));
      ASSERT_EQ(brute.wins(mask, cur), brute.wins(mask_of(r.remaining), cur)) << n << " " << cur;
    }
  }
}

TEST(Reduce, SolverWithAndWithoutReductionsAgree) {
  std::mt19937_64 rng(17);
  for (int n = 2; n <= 20; ++n) {
    const DivisorGraph g(n);
    oracle::BruteSolver brute(n);
    SolverOptions plain;
    plain.reductions = false;
    Solver with(g), without(g, plain);
    const int samples = n <= 12 ? 0 : 10000 / 8;
    std::vector<std::pair<std::uint64_t, int>> positions =
        n <= 12 ? oracle::reachable_positions(n) : std::vector<std::pair<std::uint64_t, int>>{};
    for (int i = 0; i < samples; ++i) positions.push_back(oracle::random_position(n, rng));
    for (const auto& [mask, cur] : positions) {
      const Position p = position_of(n, mask, cur);
      const Outcome expected = brute.wins(mask, cur) ? Outcome::Win : Outcome::Loss;
      ASSERT_EQ(*with.solve(p).verdict, expected) << n;
      ASSERT_EQ(*without.solve(p).verdict, expected) << n;
    }
  }
}
