#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "juniper/vertex_set.hpp"

namespace juniper {

/// Vertices 1..n, an edge between two numbers when one divides the other.
class DivisorGraph {
 public:
  explicit DivisorGraph(int n);

  int n() const noexcept { return n_; }
  /// Sorted neighbors of v.
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  const VertexSet& neighbor_set(int v) const { return neighbor_sets_.at(static_cast<std::size_t>(v)); }
  const std::vector<VertexSet>& neighbor_sets() const noexcept { return neighbor_sets_; }
  bool adjacent(int a, int b) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  int edge_count() const noexcept { return edge_count_; }

 private:
  int n_;
  int edge_count_ = 0;
  std::vector<std::vector<int>> adjacency_;  // index 0 unused
  std::vector<VertexSet> neighbor_sets_;
};

DivisorGraph build_graph(int n);

/// Live game state. A chosen number leaves `remaining` for good; `current`
/// is the last number chosen, absent before the first move.
struct Position {
  int n = 0;
  VertexSet remaining;
  std::optional<int> current;
  bool even_rule = true;  // first move must be even

  friend bool operator==(const Position&, const Position&) = default;
};

Position initial_position(int n, bool even_rule = true);

/// Move legality straight from divisibility.
bool is_legal_move(const Position& p, int m);
std::vector<int> legal_moves(const DivisorGraph& g, const Position& p);
/// Returns the successor position; throws IllegalMove.
Position apply_move(const Position& p, int m);
/// Replays a move list from the initial position.
Position replay(int n, bool even_rule, const std::vector<int>& moves);

struct GraphNode {
  int number = 0;
  bool remaining = false;
  bool used = false;
  bool current = false;
};

/// Node flags and the undirected edge list (a < b, each pair once).
struct GraphDocument {
  int n = 0;
  std::vector<GraphNode> nodes;
  std::vector<std::pair<int, int>> edges;
};

GraphDocument export_graph(const DivisorGraph& g, const Position& p);
std::string to_dot(const GraphDocument& doc);

}  // namespace juniper
