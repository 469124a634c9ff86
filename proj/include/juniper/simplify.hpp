#pragma once

#include <vector>

#include "juniper/divisor_graph.hpp"
#include "juniper/primes.hpp"

namespace juniper {

/// The start position with 1 and the primes in (n/2, n] taken out.
///
/// Nobody enters 1 voluntarily since the reply is a large prime that ends the
/// game, so the initial position of JG-n has the same value as the game on
/// `kept` where a stuck player loses. This holds for the start of the game
/// only, and only for n >= 4 where no large prime is even.
struct SimplifiedStart {
  int n = 0;
  VertexSet kept;
  std::vector<int> stripped_primes;
  bool stripped_one = true;
  int removed_count = 0;
};

SimplifiedStart strip_trivial(int n, const PrimeTable& table);

/// Drops remaining vertices that cannot be reached from the current one.
/// Throws NotApplicable before the first move.
Position prune_unreachable(const DivisorGraph& g, const Position& p);

/// Removes leaf pairs (leaf, its only neighbor) to a fixpoint.
Position prune_pendant_pairs(const DivisorGraph& g, const Position& p);

/// The solver's per-node reduction: unreachable, leaf pairs, unreachable.
Position reduce(const DivisorGraph& g, const Position& p);

}  // namespace juniper
