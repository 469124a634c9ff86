#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "juniper/divisor_graph.hpp"

namespace juniper {

/// Value of a position for the player to move.
enum class Outcome { Win, Loss };

/// Initial positions are written G (first player wins) or P.
inline char to_gp(Outcome o) { return o == Outcome::Win ? 'G' : 'P'; }
inline Outcome flip(Outcome o) { return o == Outcome::Win ? Outcome::Loss : Outcome::Win; }

struct SearchStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t memo_entries = 0;  // entries added by this call
  std::chrono::nanoseconds elapsed{0};
  bool budget_exhausted = false;
};

struct SolveResult {
  std::optional<Outcome> verdict;  // empty iff the budget ran out
  /// Plies of the line the search settled on: the first refutation found for
  /// a win, the longest resistance for a loss.
  int depth = 0;
  SearchStats stats;
};

struct SolverOptions {
  bool reductions = true;
  bool memoize = true;
  bool move_ordering = true;
  std::optional<std::uint64_t> node_budget;  // per call
};

struct MoveEvaluation {
  int move = 0;
  Outcome for_opponent = Outcome::Win;
  int depth = 0;  // depth of the resulting position
};

/// Memoized negamax over one divisor graph.
///
/// The transposition table survives across calls, so repeated queries on
/// positions of the same game get cheaper. Not thread-safe: use one Solver
/// per thread or serialize access.
class Solver {
 public:
  explicit Solver(int n, SolverOptions options = {});
  explicit Solver(const DivisorGraph& graph, SolverOptions options = {});
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;
  ~Solver();

  int n() const noexcept;
  const SolverOptions& options() const noexcept;
  void set_node_budget(std::optional<std::uint64_t> budget);

  SolveResult solve(const Position& p);
  /// Every legal move with the value of the position it leads to. Empty
  /// vector if there is no legal move; nullopt if the budget ran out.
  std::optional<std::vector<MoveEvaluation>> evaluate_moves(const Position& p);
  /// A winning move when one exists (fastest found), otherwise the move
  /// with the longest resistance. Empty when no move is legal or the budget
  /// ran out.
  std::optional<int> best_move(const Position& p);

  std::size_t memo_size() const noexcept;
  /// Up to `limit` memoized (reduced) positions with their values, in table
  /// order, for consistency checks.
  std::vector<std::pair<Position, Outcome>> memo_entries(std::size_t limit) const;
  void clear_memo();

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

SolveResult solve_position(const DivisorGraph& g, const Position& p,
                           std::optional<std::uint64_t> budget = std::nullopt);

/// Value of JG-n under the even-first rule. n >= 4 is solved on the
/// stripped core; n = 2, 3 on the full board. Throws UndefinedGame for n = 1.
SolveResult solve_initial(int n, SolverOptions options = {});

std::optional<int> best_move(const DivisorGraph& g, const Position& p);

/// A full game with both sides following best_move, from the even-rule start.
std::vector<int> principal_line(int n);

}  // namespace juniper
