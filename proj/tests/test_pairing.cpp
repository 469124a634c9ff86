#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "juniper/data.hpp"
#include "juniper/errors.hpp"
#include "juniper/pairing.hpp"
#include "oracle.hpp"

using namespace juniper;

namespace {

const PrimeTable& primes() {
  static const PrimeTable t(1000);
  return t;
}

// {2..n} without primes above n/2, by trial division.
std::set<int> core_of(int n) {
  std::set<int> core;
  for (int v = 2; v <= n; ++v) {
    if (!(oracle::is_prime_by_trial_division(v) && 2 * v > n)) core.insert(v);
  }
  return core;
}

// Leaf closure taking any leaf (the smallest one here). Returns the pairs as
// a set of (min, max) and the vertices left without neighbors.
std::pair<std::set<std::pair<int, int>>, std::set<int>> closure_oracle(int n) {
  std::set<int> alive = core_of(n);
  std::set<std::pair<int, int>> pairs;
  std::set<int> isolated;
  for (bool changed = true; changed;) {
    changed = false;
    for (int v : alive) {
      std::vector<int> nb;
      for (int w : alive) {
        if (oracle::divides_either_way(v, w)) nb.push_back(w);
      }
      if (nb.size() == 1) {
        pairs.insert({std::min(v, nb[0]), std::max(v, nb[0])});
        alive.erase(v);
        alive.erase(nb[0]);
        changed = true;
        break;
      }
    }
  }
  for (int v : alive) {
    bool any = false;
    for (int w : alive) any = any || oracle::divides_either_way(v, w);
    if (!any) isolated.insert(v);
  }
  return {pairs, isolated};
}

std::set<std::pair<int, int>> normalized(const std::vector<NumberPair>& pairs) {
  std::set<std::pair<int, int>> out;
  for (auto [a, b] : pairs) out.insert({std::min(a, b), std::max(a, b)});
  return out;
}

// Independent certificate check: divisor pairs, and pairs plus opening plus
// exclusions cover the core exactly once.
bool oracle_valid(const PairingCertificate& c) {
  std::multiset<int> seen;
  for (auto [a, b] : c.pairs) {
    if (!oracle::divides_either_way(a, b)) return false;
    seen.insert(a);
    seen.insert(b);
  }
  if (c.first_move) seen.insert(*c.first_move);
  seen.insert(c.excluded.begin(), c.excluded.end());
  const std::set<int> core = core_of(c.n);
  return seen.size() == core.size() && std::set<int>(seen.begin(), seen.end()) == core;
}

std::vector<PairingCertificate> corpus() { return parse_appendix(data::certificate_corpus(), primes()); }

const PairingCertificate& entry(const std::vector<PairingCertificate>& all, int n) {
  return *std::find_if(all.begin(), all.end(), [n](const PairingCertificate& c) { return c.n == n; });
}

}  // namespace

TEST(ForcedPairs, AgreesWithOracleWhereConfluent) {
  for (int n = 4; n <= 130; ++n) {
    if (n == 49 || n == 92) continue;
    const ForcedPairing f = forced_pairs(n, primes());
    const auto [pairs, isolated] = closure_oracle(n);
    EXPECT_EQ(normalized(f.pairs), pairs) << n;
    EXPECT_EQ(std::set<int>(f.isolated.begin(), f.isolated.end()), isolated) << n;
  }
}

TEST(ForcedPairs, ShuffledOrderIsConfluentOnOtherCorpusEntries) {
  for (const auto& c : corpus()) {
    const int n = c.n;
    if (n == 49 || n == 92) continue;
    const auto base = normalized(forced_pairs(n, primes()).pairs);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      ASSERT_EQ(normalized(forced_pairs_shuffled(n, primes(), seed).pairs), base) << n << " seed " << seed;
    }
  }
}

TEST(ForcedPairs, OrderMattersAtFortyNineAndNinetyTwo) {
  for (int n : {49, 92}) {
    std::set<std::set<std::pair<int, int>>> outcomes;
    for (std::uint64_t seed = 1; seed <= 64; ++seed) outcomes.insert(normalized(forced_pairs_shuffled(n, primes(), seed).pairs));
    EXPECT_GT(outcomes.size(), 1u) << n;
  }
}

TEST(ForcedPairs, FortyNine) {
  const ForcedPairing f = forced_pairs(49, primes());
  EXPECT_EQ(normalized(f.pairs), (std::set<std::pair<int, int>>{{17, 34}, {19, 38}, {23, 46}, {5, 25}, {7, 49}}));
  EXPECT_EQ(f.isolated, (std::vector<int>{35}));
}

TEST(ForcedPairs, NinetyTwoIsolatesNinetyOne) {
  const ForcedPairing f = forced_pairs(92, primes());
  EXPECT_EQ(f.isolated, (std::vector<int>{91}));
  const auto pairs = normalized(f.pairs);
  for (auto p : {std::pair{7, 49}, {11, 77}, {5, 55}, {13, 65}}) EXPECT_TRUE(pairs.count(p)) << p.first;
}

TEST(Corpus, ParsesEveryEntry) {
  const auto all = corpus();
  EXPECT_EQ(all.size(), 44u);
  for (const auto& c : all) {
    EXPECT_TRUE(validate_certificate(c, primes()).ok()) << c.n << ": " << validate_certificate(c, primes()).detail;
    EXPECT_TRUE(oracle_valid(c)) << c.n;
  }
  const auto& e49 = entry(all, 49);
  EXPECT_EQ(e49.first_move, 48);
  EXPECT_EQ(e49.excluded, (std::vector<int>{35}));
  EXPECT_EQ(e49.claim, Outcome::Win);
  EXPECT_EQ(entry(all, 92).excluded, (std::vector<int>{91}));
  EXPECT_EQ(entry(all, 92).claim, Outcome::Loss);
  EXPECT_EQ(entry(all, 12).first_move, 6);
}

TEST(Corpus, FormatRoundTrips) {
  for (const auto& c : corpus()) {
    const auto again = parse_appendix(format_certificate(c), primes());
    ASSERT_EQ(again.size(), 1u);
    EXPECT_EQ(again[0].pairs, c.pairs) << c.n;
    EXPECT_EQ(again[0].first_move, c.first_move) << c.n;
    EXPECT_EQ(again[0].excluded, c.excluded) << c.n;
  }
}

TEST(Corpus, ParseErrorsCarryLineNumbers) {
  try {
    parse_appendix("4 (2,4)\n\n8 (3,6)(2,x) 4\n", primes());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_appendix("12 (5,10)(3,9)(2,12)(4,8) 6 7\n", primes()), ParseError);
  EXPECT_THROW(parse_appendix("(2,4)\n", primes()), ParseError);
}

TEST(Validation, EachRuleFires) {
  PairingCertificate good;
  good.n = 12;
  good.pairs = {{5, 10}, {3, 9}, {2, 12}, {4, 8}};
  good.first_move = 6;
  good.claim = Outcome::Win;
  ASSERT_TRUE(validate_certificate(good, primes()).ok());

  auto with = [&](auto edit) {
    PairingCertificate c = good;
    edit(c);
    return validate_certificate(c, primes()).rule;
  };
  EXPECT_EQ(with([](auto& c) { c.pairs[0] = {5, 13}; }), ValidationRule::Range);
  EXPECT_EQ(with([](auto& c) { c.pairs[1] = {3, 5}; }), ValidationRule::Duplicate);
  EXPECT_EQ(with([](auto& c) { c.claim = Outcome::Loss; }), ValidationRule::Claim);
  EXPECT_EQ(with([](auto& c) {
              c.pairs[0] = {5, 6};
              c.first_move = 10;
            }),
            ValidationRule::Adjacency);
  EXPECT_EQ(with([](auto& c) { c.pairs.pop_back(); }), ValidationRule::Partition);
  EXPECT_EQ(with([](auto& c) {
              c.pairs.pop_back();
              c.pairs.push_back({4, 8});
              c.first_move.reset();
              c.claim = Outcome::Loss;
              c.excluded = {6};
            }),
            ValidationRule::ExcludedNotIsolated);
}

TEST(Strategy, CorruptedOpeningIsRefuted) {
  PairingCertificate c = entry(corpus(), 12);
  c.first_move = 4;  // 4 is also paired with 8
  const StrategyCheck r = verify_pairing_strategy(c);
  ASSERT_TRUE(std::holds_alternative<Counterexample>(r)) << describe(r);
  const auto& line = std::get<Counterexample>(r).line;
  ASSERT_FALSE(line.empty());
  EXPECT_EQ(line.front(), 4);
}

TEST(Strategy, SmallEntriesVerifyExhaustively) {
  PairingVerifyOptions exhaustive;
  exhaustive.closure_cut = false;
  for (const auto& c : corpus()) {
    if (c.n > 56) continue;
    const StrategyCheck r = verify_pairing_strategy(c, exhaustive);
    EXPECT_TRUE(is_verified(r)) << c.n << ": " << describe(r);
  }
}

TEST(Strategy, CutAgreesWithExhaustiveSearch) {
  PairingVerifyOptions exhaustive;
  exhaustive.closure_cut = false;
  for (const auto& c : corpus()) {
    if (c.n > 40) continue;
    EXPECT_EQ(is_verified(verify_pairing_strategy(c)), is_verified(verify_pairing_strategy(c, exhaustive))) << c.n;
    // Broken certificates must fail both ways.
    PairingCertificate broken = c;
    if (broken.pairs.size() < 2) continue;
    std::swap(broken.pairs[0].second, broken.pairs[1].second);
    EXPECT_EQ(is_verified(verify_pairing_strategy(broken)), is_verified(verify_pairing_strategy(broken, exhaustive)))
        << c.n;
  }
}

TEST(Strategy, ExcludedNumbersAreNeverPlayed) {
  PairingVerifyOptions exhaustive;
  exhaustive.closure_cut = false;
  const StrategyCheck r = verify_pairing_strategy(entry(corpus(), 49), exhaustive);
  ASSERT_TRUE(is_verified(r)) << describe(r);
  EXPECT_FALSE(std::get<Verified>(r).played.test(35));
}

TEST(Strategy, BudgetIsReported) {
  PairingVerifyOptions tiny;
  tiny.closure_cut = false;
  tiny.state_budget = 10;
  EXPECT_TRUE(std::holds_alternative<BudgetExhausted>(verify_pairing_strategy(entry(corpus(), 56), tiny)));
}

TEST(Greedy, CertificatesAreValid) {
  for (int n = 4; n <= 130; ++n) {
    const auto c = greedy_pairing(n, primes());
    if (!c) continue;
    EXPECT_TRUE(oracle_valid(*c)) << n;
    EXPECT_TRUE(validate_certificate(*c, primes()).ok()) << n;
  }
}

TEST(Greedy, PerfectPairingsWin) {
  // With nothing excluded every opponent move has a free partner.
  PairingVerifyOptions exhaustive;
  exhaustive.closure_cut = false;
  for (int n = 4; n <= 40; ++n) {
    const auto c = greedy_pairing(n, primes());
    if (!c || !c->excluded.empty()) continue;
    EXPECT_TRUE(is_verified(verify_pairing_strategy(*c, exhaustive))) << n;
    if (c->first_move) {
      EXPECT_EQ(*c->first_move % 2, 0) << n;
    }
  }
}

TEST(Greedy, ExclusionsAreNotAlwaysSafe) {
  // At 40 the forced pairs isolate 39, but 13 leads back to it.
  const auto c = greedy_pairing(40, primes());
  ASSERT_TRUE(c);
  EXPECT_EQ(c->excluded, (std::vector<int>{39}));
  PairingVerifyOptions exhaustive;
  exhaustive.closure_cut = false;
  EXPECT_TRUE(std::holds_alternative<Counterexample>(verify_pairing_strategy(*c, exhaustive)));
  EXPECT_TRUE(std::holds_alternative<Counterexample>(verify_pairing_strategy(*c)));
}

TEST(Parity, ExceptionsAreExactlyFortyNineAndNinetyTwo) {
  std::set<int> flipped;
  EXPECT_THROW(predict_by_parity(3, primes()), InvalidArgument);
  for (int n = 4; n <= 118; ++n) {
    const ParityPrediction p = predict_by_parity(n, primes());
    if (p.applicable && p.exception_applied) flipped.insert(n);
    // Raw parity: an odd core needs an opening, so the first player wins.
    EXPECT_EQ(p.raw == Outcome::Win, p.core_size % 2 == 1) << n;
  }
  EXPECT_EQ(flipped, (std::set<int>{49, 92}));
}

TEST(Parity, AgreesWithCertificates) {
  for (const auto& c : corpus()) {
    const ParityPrediction p = predict_by_parity(c.n, primes());
    if (!p.applicable) continue;
    EXPECT_EQ(p.predicted, c.claim) << c.n;
  }
}

TEST(Parity, PairingPolicyAnswersWithPartner) {
  const PairingCertificate& c = entry(corpus(), 12);
  const Policy policy = pairing_policy(c);
  Position p = replay(12, true, {6, 3});
  EXPECT_EQ(policy(p), 9);
  p = replay(12, true, {6, 1});
  EXPECT_EQ(policy(p), 7);
}
