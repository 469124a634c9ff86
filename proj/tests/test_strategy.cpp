#include <gtest/gtest.h>

#include <set>

#include "juniper/errors.hpp"
#include "juniper/solver.hpp"
#include "juniper/strategy.hpp"
#include "oracle.hpp"

using namespace juniper;

namespace {

const PrimeTable& primes() {
  static const PrimeTable t(2000);
  return t;
}

std::vector<int> band_primes(int n) {
  std::vector<int> out;
  for (int p = 2; 3 * p <= n; ++p) {
    if (oracle::is_prime_by_trial_division(p) && 4 * p > n) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Elementary, NeedsTwoLargePrimes) {
  for (int n = 1; n <= 200; ++n) {
    int large = 0;
    for (int p = 2; p <= n; ++p) large += oracle::is_prime_by_trial_division(p) && 2 * p > n;
    EXPECT_EQ(elementary_strategy(n, primes()).has_value(), large >= 2) << n;
  }
  EXPECT_EQ(elementary_strategy(20, primes()), 11);
}

TEST(Elementary, WinsWithoutTheEvenRule) {
  for (int n = 3; n <= 30; ++n) {
    const auto opening = elementary_strategy(n, primes());
    if (!opening) continue;
    // The only reply to a large prime is 1; answering with another large
    // prime leaves the opponent stuck.
    oracle::BruteSolver brute(n);
    const std::uint64_t full = ((std::uint64_t{1} << (n + 1)) - 1) & ~std::uint64_t{1};
    EXPECT_FALSE(brute.wins(full & ~(std::uint64_t{1} << *opening), *opening)) << n;
    const DivisorGraph g(n);
    const Position after = apply_move(initial_position(n, false), *opening);
    EXPECT_EQ(legal_moves(g, after), (std::vector<int>{1})) << n;
  }
}

TEST(ThreePrime, PlanUsesTheBandPrimes) {
  for (int n = 1; n <= 300; ++n) {
    const auto band = band_primes(n);
    const auto plan = three_prime_strategy(n, primes());
    ASSERT_EQ(plan.has_value(), band.size() >= 3) << n;
    if (!plan) continue;
    EXPECT_EQ(plan->p, band[0]);
    EXPECT_EQ(plan->q, band[1]);
    EXPECT_EQ(plan->r, band[2]);
    EXPECT_EQ(plan->opening, 2 * plan->p);
  }
}

TEST(ThreePrime, MultiplesHaveOnlyTheExpectedNeighbors) {
  for (int n : {111, 150, 200, 300}) {
    const auto plan = three_prime_strategy(n, primes());
    ASSERT_TRUE(plan);
    for (int x : {plan->p, plan->q, plan->r}) {
      for (int k : {2, 3}) {
        std::set<int> nb;
        for (int v = 1; v <= n; ++v) {
          if (oracle::divides_either_way(v, k * x)) nb.insert(v);
        }
        EXPECT_EQ(nb, (std::set<int>{1, k, x})) << n << " " << k * x;
      }
    }
  }
}

TEST(ThreePrime, VerifiedUpToThreeHundred) {
  for (int n = 1; n <= 300; ++n) {
    const auto plan = three_prime_strategy(n, primes());
    if (!plan) continue;
    const StrategyCheck r = simulate_strategy(n, plan->opening, three_prime_policy(*plan));
    ASSERT_TRUE(is_verified(r)) << n << ": " << describe(r);
  }
}

TEST(ThreePrime, TwoHundredLines) {
  const auto plan = three_prime_strategy(200, primes());
  ASSERT_TRUE(plan);
  const DivisorGraph g(200);
  const auto lines =
      principal_lines(g, apply_move(initial_position(200), plan->opening), {plan->opening}, three_prime_policy(*plan));
  const std::set<std::vector<int>> got(lines.begin(), lines.end());
  const std::set<std::vector<int>> expected = {
      {106, 2, 118, 59, 177, 3, 183, 61, 122},
      {106, 53, 159, 3, 177, 59, 118, 2, 122, 61, 183},
  };
  EXPECT_EQ(got, expected);
}

TEST(Scripts, BuiltinTableParses) {
  const auto& scripts = builtin_two_prime_scripts();
  ASSERT_EQ(scripts.size(), 10u);
  EXPECT_EQ(scripts[0].n_low, 39);
  EXPECT_EQ(scripts[0].n_high, 41);
  EXPECT_EQ(scripts[0].opening(), 22);
  EXPECT_EQ(scripts[0].a, 39);
  EXPECT_EQ(scripts[0].b, 21);
  for (const auto& s : scripts) {
    EXPECT_EQ(s.a, s.n_low);
    EXPECT_EQ(2 * s.b - 1, s.n_high);
    const auto again = parse_two_prime_scripts(format_script(s));
    ASSERT_EQ(again.size(), 1u);
    EXPECT_EQ(again[0].chains, s.chains);
  }
}

TEST(Scripts, ChainsAreDivisorPaths) {
  for (const auto& s : builtin_two_prime_scripts()) {
    for (const auto& chain : s.chains) {
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        EXPECT_TRUE(oracle::divides_either_way(chain[i], chain[i + 1])) << chain[i] << "-" << chain[i + 1];
      }
    }
  }
}

TEST(Scripts, ParserRejectsBadMarks) {
  EXPECT_THROW(parse_two_prime_scripts("39 41 : [2 22 11 33 3][2 26 13 39 3][3 *21 7 35 5 25]"), ParseError);
  EXPECT_THROW(parse_two_prime_scripts("39 40 : [2 22 11 33 3][2 26 13 *39 3][3 *21 7 35 5 25]"), ParseError);
  EXPECT_THROW(parse_two_prime_scripts("39 41 [2 22]"), ParseError);
  EXPECT_NO_THROW(parse_two_prime_scripts("# only a comment\n"));
}

TEST(Scripts, VerifiedOnTheirIntervals) {
  for (const auto& s : builtin_two_prime_scripts()) {
    for (int n = s.n_low; n <= s.n_high; ++n) {
      if (n > 129 && n != 161 && n != 185) continue;
      const StrategyCheck r = simulate_strategy(n, s.opening(), script_to_policy(s, n));
      ASSERT_TRUE(is_verified(r)) << s.n_low << ".." << s.n_high << " at " << n << ": " << describe(r);
    }
  }
}

TEST(Scripts, FortyOneScriptFailsAtFortyTwo) {
  const TwoPrimeScript& s = builtin_two_prime_scripts()[0];
  EXPECT_THROW(script_to_policy(s, 42), InvalidArgument);
  const StrategyCheck r = simulate_strategy(42, s.opening(), script_to_policy(s, 42, false));
  ASSERT_TRUE(std::holds_alternative<Counterexample>(r)) << describe(r);
  // The refutation is a legal game.
  Position p = initial_position(42);
  for (int m : std::get<Counterexample>(r).line) {
    ASSERT_TRUE(is_legal_move(p, m));
    p = apply_move(p, m);
  }
}

TEST(Scripts, Coverage) {
  EXPECT_EQ(scripts_covering(65).size(), 2u);
  EXPECT_TRUE(scripts_covering(42).empty());
  EXPECT_TRUE(covered_by_script(40, primes()));
  EXPECT_FALSE(covered_by_script(42, primes()));
  EXPECT_TRUE(covered_by_script(111, primes()));
}

TEST(Equivalence, LinksFollowTheirRule) {
  for (int n = 2; n <= 200; ++n) {
    const auto link = equivalent_predecessor(n, primes());
    const bool prime_top = n >= 5 && oracle::is_prime_by_trial_division(n);
    const bool twice = n % 2 == 0 && n / 2 >= 3 && oracle::is_prime_by_trial_division(n / 2);
    EXPECT_EQ(link.has_value(), prime_top || twice) << n;
    if (link) {
      EXPECT_EQ(link->equivalent_to, n - 1);
    }
  }
}

TEST(Equivalence, LinkedValuesAgreeBySearch) {
  for (int n = 5; n <= 48; ++n) {
    if (!equivalent_predecessor(n, primes())) continue;
    EXPECT_EQ(*solve_initial(n).verdict, *solve_initial(n - 1).verdict) << n;
  }
}

TEST(Simulation, DetectsMissingReply) {
  // A policy that never answers loses to the first opponent move.
  const Policy silent = [](const Position&) -> std::optional<int> { return std::nullopt; };
  const StrategyCheck r = simulate_strategy(10, 2, silent);
  ASSERT_TRUE(std::holds_alternative<Counterexample>(r));
  EXPECT_EQ(std::get<Counterexample>(r).line.size(), 2u);
}

TEST(Simulation, DetectsIllegalReply) {
  const Policy bad = [](const Position&) -> std::optional<int> { return 7; };
  EXPECT_TRUE(std::holds_alternative<Counterexample>(simulate_strategy(10, 2, bad)));
}
