#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "juniper/primes.hpp"
#include "juniper/simulation.hpp"

namespace juniper {

/// Opening prime for the rule-off trap: open a prime above n/2, the reply
/// is forced to 1, answer with a second such prime. Needs two of them.
std::optional<int> elementary_strategy(int n, const PrimeTable& table);

/// Cycle through 2 and 3 using three primes p < q < r in (n/4, n/3]. Every
/// multiple 2x, 3x (x in {p,q,r}) has only 1, x and 2 or 3 as neighbors.
struct ThreePrimePlan {
  int n = 0;
  int p = 0;
  int q = 0;
  int r = 0;
  int opening = 0;
  /// Replies tried in order, first unused wins.
  std::vector<std::pair<int, std::vector<int>>> reply_table;
};

std::optional<ThreePrimePlan> three_prime_strategy(int n, const PrimeTable& table);
Policy three_prime_policy(const ThreePrimePlan& plan);

struct TwoPrimeScript {
  int n_low = 0;
  int n_high = 0;
  std::vector<std::vector<int>> chains;
  /// Numbers flagged with '*' in the source, as written.
  std::vector<int> marked;
  int a = 0;  // largest number the first player plays
  int b = 0;  // smallest number the first player plays

  int opening() const { return chains.at(0).at(1); }
  bool covers(int n) const { return n_low <= n && n <= n_high; }
};

/// Parses lines "low high : [2 22 11 33 3][...]" with '*' marks; '#' starts
/// a comment. Checks that the marks and the chains agree with the interval.
/// Throws ParseError.
std::vector<TwoPrimeScript> parse_two_prime_scripts(std::string_view text);
const std::vector<TwoPrimeScript>& builtin_two_prime_scripts();
std::string format_script(const TwoPrimeScript& s);

/// Opponent at x: the first unused successor of x along any chain. Opponent
/// at 1: the smallest remaining prime above n/2. With `require_cover` off
/// the script may be played at an n outside its interval.
Policy script_to_policy(const TwoPrimeScript& s, int n, bool require_cover = true);

/// Plays `opening` then checks every opponent line against `policy`.
StrategyCheck simulate_strategy(int n, int opening, const Policy& policy, bool even_rule = true,
                                std::optional<std::uint64_t> budget = std::nullopt);

struct EquivalenceLink {
  enum class Kind { PrimeTop, TwicePrime };
  int n = 0;
  Kind kind = Kind::PrimeTop;
  int prime = 0;
  int equivalent_to = 0;
};

std::string to_string(EquivalenceLink::Kind kind);

/// n prime >= 5 ties to n - 1; n = 2p with p prime >= 3 ties to n - 1.
std::optional<EquivalenceLink> equivalent_predecessor(int n, const PrimeTable& table);

/// Scripts whose interval contains n, in table order.
std::vector<const TwoPrimeScript*> scripts_covering(int n);
/// True when a three-prime plan or a two-prime script applies to n.
bool covered_by_script(int n, const PrimeTable& table);

}  // namespace juniper
