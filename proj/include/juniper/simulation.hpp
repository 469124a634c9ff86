#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "juniper/divisor_graph.hpp"

namespace juniper {

struct Verified {
  std::uint64_t states = 0;
  /// Every number played in some explored line (a superset when a safety
  /// cut closed off subtrees).
  VertexSet played;
};

struct Counterexample {
  std::vector<int> line;  // full game from the first move
  std::string reason;
};

struct BudgetExhausted {
  std::uint64_t states = 0;
};

/// Outcome of exhaustively checking a deterministic strategy.
using StrategyCheck = std::variant<Verified, Counterexample, BudgetExhausted>;

inline bool is_verified(const StrategyCheck& c) { return std::holds_alternative<Verified>(c); }
std::string describe(const StrategyCheck& c);

/// The strategist's reply, given the position right after the opponent's
/// move. nullopt means the policy has nothing to say there.
using Policy = std::function<std::optional<int>(const Position&)>;

/// Optional shortcut: returns true when a static argument already shows that
/// the policy wins every line from this position (opponent to move). On
/// success it adds every number that could still be played to `reach`.
using SafetyCut = std::function<bool(const Position&, VertexSet& reach)>;

struct SimulationOptions {
  std::optional<std::uint64_t> state_budget;
  SafetyCut cut;
};

/// Explores every opponent choice from `start` (opponent to move), answering
/// with `policy`, memoized on (remaining, current). `prefix` holds the moves
/// already played and is only used to report counterexamples.
StrategyCheck simulate_lines(const DivisorGraph& g, const Position& start, std::vector<int> prefix,
                             const Policy& policy, const SimulationOptions& options = {});

/// Every complete line of the policy where the opponent never steps on 1
/// (that move loses at once to a large prime). A line ends when the
/// opponent has nothing but 1 left, or nothing at all. Stops after
/// `max_lines`.
std::vector<std::vector<int>> principal_lines(const DivisorGraph& g, const Position& start, std::vector<int> prefix,
                                              const Policy& policy, std::size_t max_lines = 1000);

/// Smallest remaining prime in (n/2, n], the reply that punishes a move to 1.
std::optional<int> smallest_remaining_large_prime(const Position& p);

}  // namespace juniper
