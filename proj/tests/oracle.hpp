// Independent reference implementations used as test oracles. Nothing here
// calls into the library under test.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

namespace oracle {

inline bool is_prime_by_trial_division(int k) {
  if (k < 2) return false;
  for (int d = 2; d * d <= k; ++d) {
    if (k % d == 0) return false;
  }
  return true;
}

inline bool divides_either_way(int a, int b) { return a != b && (a % b == 0 || b % a == 0); }

/// Plain negamax on bitmasks, memoized on (mask, current). Bit v of `mask`
/// means v is still available. Only for n <= 62.
class BruteSolver {
 public:
  explicit BruteSolver(int n) : n_(n) {}

  /// True when the player to move from `current` wins.
  bool wins(std::uint64_t mask, int current) {
    const auto key = std::make_pair(mask, current);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = false;
    for (int v = 1; v <= n_ && !result; ++v) {
      if ((mask >> v & 1U) && divides_either_way(v, current)) result = !wins(mask & ~(std::uint64_t{1} << v), v);
    }
    memo_[key] = result;
    return result;
  }

  /// Value of the opening position for the first player.
  bool first_player_wins(bool even_rule) {
    const std::uint64_t full = ((std::uint64_t{1} << (n_ + 1)) - 1) & ~std::uint64_t{1};
    for (int v = even_rule ? 2 : 1; v <= n_; v += even_rule ? 2 : 1) {
      if (!wins(full & ~(std::uint64_t{1} << v), v)) return true;
    }
    return false;
  }

  /// Longest game from (mask, current), in plies.
  int longest_game(std::uint64_t mask, int current) {
    int best = 0;
    for (int v = 1; v <= n_; ++v) {
      if ((mask >> v & 1U) && divides_either_way(v, current)) {
        best = std::max(best, 1 + longest_game(mask & ~(std::uint64_t{1} << v), v));
      }
    }
    return best;
  }

  /// Plain recursion with no memo at all.
  bool wins_unmemoized(std::uint64_t mask, int current) const {
    for (int v = 1; v <= n_; ++v) {
      if ((mask >> v & 1U) && divides_either_way(v, current) && !wins_unmemoized(mask & ~(std::uint64_t{1} << v), v)) {
        return true;
      }
    }
    return false;
  }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, int>& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.first * 31 + static_cast<std::uint64_t>(k.second));
    }
  };
  int n_;
  std::unordered_map<std::pair<std::uint64_t, int>, bool, PairHash> memo_;
};

/// Every (mask, current) reachable from the start with the even rule off.
inline std::vector<std::pair<std::uint64_t, int>> reachable_positions(int n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  std::map<std::pair<std::uint64_t, int>, bool> seen;
  const std::uint64_t full = ((std::uint64_t{1} << (n + 1)) - 1) & ~std::uint64_t{1};
  std::vector<std::pair<std::uint64_t, int>> stack;
  for (int v = 1; v <= n; ++v) stack.emplace_back(full & ~(std::uint64_t{1} << v), v);
  while (!stack.empty()) {
    const auto s = stack.back();
    stack.pop_back();
    if (seen.count(s)) continue;
    seen[s] = true;
    out.push_back(s);
    for (int v = 1; v <= n; ++v) {
      if ((s.first >> v & 1U) && divides_either_way(v, s.second)) {
        stack.emplace_back(s.first & ~(std::uint64_t{1} << v), v);
      }
    }
  }
  return out;
}

/// A random position reached by a random playout of random length.
inline std::pair<std::uint64_t, int> random_position(int n, std::mt19937_64& rng) {
  const std::uint64_t full = ((std::uint64_t{1} << (n + 1)) - 1) & ~std::uint64_t{1};
  int current = static_cast<int>(rng() % static_cast<std::uint64_t>(n)) + 1;
  std::uint64_t mask = full & ~(std::uint64_t{1} << current);
  const int steps = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  for (int i = 0; i < steps; ++i) {
    std::vector<int> moves;
    for (int v = 1; v <= n; ++v) {
      if ((mask >> v & 1U) && divides_either_way(v, current)) moves.push_back(v);
    }
    if (moves.empty()) break;
    current = moves[rng() % moves.size()];
    mask &= ~(std::uint64_t{1} << current);
  }
  return {mask, current};
}

}  // namespace oracle
