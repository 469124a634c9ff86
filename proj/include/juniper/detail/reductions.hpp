#pragma once

#include <vector>

// Position reductions written once for both VertexSet and FixedBits<W>.
// `adj[v]` is the neighbor set of v, `rem` the unused vertices and `cur` the
// vertex the token sits on (never a member of rem).

namespace juniper::detail {

/// Vertices of rem reachable from cur through rem.
template <class Set>
Set reachable_from(const std::vector<Set>& adj, const Set& rem, int cur) {
  Set seen = adj[static_cast<std::size_t>(cur)] & rem;
  Set frontier = seen;
  while (frontier.any()) {
    Set next = rem;
    next.clear();
    frontier.for_each([&](int v) { next |= adj[static_cast<std::size_t>(v)]; });
    next &= rem;
    next -= seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

/// Removes leaf pairs {v, u} until none is left. Returns whether anything was
/// removed.
///
/// A leaf v has exactly one neighbor u among rem and is not adjacent to cur;
/// some maximum matching of rem + cur then contains v-u, so dropping both
/// keeps the mover's status. When v touches cur it is not a leaf of that
/// graph and stays. The pair is also kept when u is cur's only way out.
template <class Set>
int remove_pendant_pairs(const std::vector<Set>& adj, Set& rem, int cur) {
  const Set& cur_adj = adj[static_cast<std::size_t>(cur)];
  int removed = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    const Set snapshot = rem;
    snapshot.for_each([&](int v) {
      if (!rem.test(v) || cur_adj.test(v)) return;
      const Set nv = adj[static_cast<std::size_t>(v)] & rem;
      if (nv.count() != 1) return;
      const int u = nv.first();
      const Set exits = cur_adj & rem;
      if (exits.count() == 1 && exits.test(u)) return;
      rem.reset(v);
      rem.reset(u);
      changed = true;
      ++removed;
    });
  }
  return removed;
}

/// Unreachable pruning, leaf pairs to a fixpoint, then pruning again.
/// Returns the number of leaf pairs removed.
template <class Set>
int reduce_position(const std::vector<Set>& adj, Set& rem, int cur) {
  rem = reachable_from(adj, rem, cur);
  const int pairs = remove_pendant_pairs(adj, rem, cur);
  if (pairs > 0) rem = reachable_from(adj, rem, cur);
  return pairs;
}

}  // namespace juniper::detail
