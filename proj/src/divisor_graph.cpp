#include "juniper/divisor_graph.hpp"

#include <algorithm>
#include <sstream>

#include "juniper/errors.hpp"

namespace juniper {

DivisorGraph::DivisorGraph(int n) : n_(n) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  adjacency_.resize(static_cast<std::size_t>(n) + 1);
  for (int d = 1; d <= n; ++d) {
    for (int m = 2 * d; m <= n; m += d) {
      adjacency_[static_cast<std::size_t>(d)].push_back(m);
      adjacency_[static_cast<std::size_t>(m)].push_back(d);
      ++edge_count_;
    }
  }
  neighbor_sets_.reserve(adjacency_.size());
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    neighbor_sets_.push_back(VertexSet::from_vector(n, adj));
  }
}

bool DivisorGraph::adjacent(int a, int b) const {
  if (a < 1 || b < 1 || a > n_ || b > n_ || a == b) return false;
  return a % b == 0 || b % a == 0;
}

DivisorGraph build_graph(int n) { return DivisorGraph(n); }

Position initial_position(int n, bool even_rule) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  return Position{n, VertexSet::interval(n, 1, n), std::nullopt, even_rule};
}

bool is_legal_move(const Position& p, int m) {
  if (!p.remaining.contains(m)) return false;
  if (!p.current) return !p.even_rule || m % 2 == 0;
  const int c = *p.current;
  return m % c == 0 || c % m == 0;
}

std::vector<int> legal_moves(const DivisorGraph& g, const Position& p) {
  if (g.n() != p.n) throw InvalidArgument("position and graph disagree on n");
  std::vector<int> out;
  if (!p.current) {
    p.remaining.for_each([&](int v) {
      if (!p.even_rule || v % 2 == 0) out.push_back(v);
    });
    return out;
  }
  for (int v : g.neighbors(*p.current)) {
    if (p.remaining.contains(v)) out.push_back(v);
  }
  return out;
}

Position apply_move(const Position& p, int m) {
  if (!is_legal_move(p, m)) throw IllegalMove(m);
  Position next = p;
  next.remaining.reset(m);
  next.current = m;
  return next;
}

Position replay(int n, bool even_rule, const std::vector<int>& moves) {
  Position p = initial_position(n, even_rule);
  for (int m : moves) p = apply_move(p, m);
  return p;
}

GraphDocument export_graph(const DivisorGraph& g, const Position& p) {
  if (g.n() != p.n) throw InvalidArgument("position and graph disagree on n");
  GraphDocument doc;
  doc.n = g.n();
  for (int v = 1; v <= g.n(); ++v) {
    const bool rem = p.remaining.contains(v);
    doc.nodes.push_back({v, rem, !rem, p.current == v});
    for (int u : g.neighbors(v)) {
      if (u > v) doc.edges.emplace_back(v, u);
    }
  }
  return doc;
}

std::string to_dot(const GraphDocument& doc) {
  std::ostringstream out;
  out << "graph jg" << doc.n << " {\n";
  for (const auto& node : doc.nodes) {
    out << "  " << node.number;
    if (node.current) {
      out << " [style=filled, fillcolor=red]";
    } else if (node.used) {
      out << " [style=filled, fillcolor=gray]";
    }
    out << ";\n";
  }
  for (const auto& [a, b] : doc.edges) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace juniper
