#include <gtest/gtest.h>

#include <algorithm>

#include "juniper/divisor_graph.hpp"
#include "juniper/errors.hpp"
#include "oracle.hpp"

using namespace juniper;

TEST(VertexSet, BitStringRoundTrip) {
  VertexSet s(70, {1, 5, 64, 70});
  EXPECT_EQ(s.count(), 4);
  EXPECT_EQ(s.first(), 1);
  const std::string bits = s.to_bit_string();
  EXPECT_EQ(bits.size(), 70u);
  EXPECT_EQ(VertexSet::from_bit_string(bits), s);
  EXPECT_EQ(s.to_vector(), (std::vector<int>{1, 5, 64, 70}));
}

TEST(VertexSet, SetAlgebra) {
  const VertexSet a = VertexSet::interval(10, 1, 6);
  const VertexSet b(10, {4, 5, 6, 7, 8});
  EXPECT_EQ((a & b).to_vector(), (std::vector<int>{4, 5, 6}));
  EXPECT_EQ((a - b).to_vector(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ((a | b).count(), 8);
  EXPECT_TRUE((a & b).is_subset_of(a));
  EXPECT_FALSE(a.is_subset_of(b));
  EXPECT_TRUE(a.intersects(b));
  EXPECT_TRUE(VertexSet(10).none());
  EXPECT_EQ(VertexSet(10).first(), -1);
}

TEST(DivisorGraph, EdgeCountMatchesDoubleLoop) {
  for (int n = 1; n <= 300; ++n) {
    const DivisorGraph g(n);
    int edges = 0;
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) edges += b % a == 0;
    }
    ASSERT_EQ(g.edge_count(), edges) << n;
  }
}

TEST(DivisorGraph, AdjacencyMatchesDivisibility) {
  const DivisorGraph g(120);
  for (int a = 1; a <= 120; ++a) {
    std::vector<int> expected;
    for (int b = 1; b <= 120; ++b) {
      if (oracle::divides_either_way(a, b)) expected.push_back(b);
    }
    ASSERT_EQ(g.neighbors(a), expected) << a;
    ASSERT_EQ(g.degree(a), static_cast<int>(expected.size()));
    ASSERT_EQ(g.neighbor_set(a).to_vector(), expected);
    for (int b = 1; b <= 120; ++b) ASSERT_EQ(g.adjacent(a, b), oracle::divides_either_way(a, b));
  }
}

TEST(DivisorGraph, SmallExamples) {
  const DivisorGraph g(8);
  EXPECT_EQ(g.neighbors(1), (std::vector<int>{2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(g.neighbors(2), (std::vector<int>{1, 4, 6, 8}));
  EXPECT_EQ(g.neighbors(7), (std::vector<int>{1}));
  EXPECT_FALSE(g.adjacent(3, 3));
  EXPECT_EQ(g.edge_count(), 7 + 3 + 1 + 1);
}

TEST(Position, EvenRuleOpening) {
  const Position p = initial_position(10);
  EXPECT_FALSE(p.current.has_value());
  EXPECT_EQ(p.remaining.count(), 10);
  EXPECT_EQ(legal_moves(DivisorGraph(10), p), (std::vector<int>{2, 4, 6, 8, 10}));
  EXPECT_FALSE(is_legal_move(p, 3));
  EXPECT_THROW(apply_move(p, 3), IllegalMove);

  const Position free = initial_position(10, false);
  EXPECT_EQ(legal_moves(DivisorGraph(10), free).size(), 10u);
}

TEST(Position, MovesFollowDivisibility) {
  const Position p = replay(12, true, {4, 12, 6});
  EXPECT_EQ(*p.current, 6);
  EXPECT_EQ(legal_moves(DivisorGraph(12), p), (std::vector<int>{1, 2, 3}));
  EXPECT_THROW(replay(12, true, {4, 4}), IllegalMove);
  EXPECT_THROW(replay(12, true, {4, 5}), IllegalMove);
  EXPECT_THROW(replay(12, true, {13}), IllegalMove);
}

TEST(Position, RandomPlayoutsStayLegal) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 60);
    const DivisorGraph g(n);
    Position p = initial_position(n);
    std::vector<int> used;
    for (;;) {
      const std::vector<int> moves = legal_moves(g, p);
      for (int v = 1; v <= n; ++v) {
        const bool expect = std::find(used.begin(), used.end(), v) == used.end() &&
                            (p.current ? oracle::divides_either_way(v, *p.current) : v % 2 == 0);
        ASSERT_EQ(std::find(moves.begin(), moves.end(), v) != moves.end(), expect);
      }
      if (moves.empty()) break;
      const int m = moves[rng() % moves.size()];
      p = apply_move(p, m);
      used.push_back(m);
    }
  }
}

TEST(GraphExport, NodesAndEdges) {
  const DivisorGraph g(6);
  const Position p = replay(6, true, {2, 6});
  const GraphDocument doc = export_graph(g, p);
  EXPECT_EQ(doc.n, 6);
  ASSERT_EQ(doc.nodes.size(), 6u);
  EXPECT_TRUE(doc.nodes[5].current);
  EXPECT_TRUE(doc.nodes[1].used);
  EXPECT_FALSE(doc.nodes[1].remaining);
  EXPECT_TRUE(doc.nodes[2].remaining);
  EXPECT_EQ(static_cast<int>(doc.edges.size()), g.edge_count());
  for (auto [a, b] : doc.edges) {
    EXPECT_LT(a, b);
    EXPECT_EQ(b % a, 0);
  }
  const std::string dot = to_dot(doc);
  EXPECT_NE(dot.find("graph"), std::string::npos);
  EXPECT_NE(dot.find("--"), std::string::npos);
}
