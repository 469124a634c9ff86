#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "juniper/primes.hpp"
#include "juniper/simplify.hpp"
#include "juniper/simulation.hpp"
#include "juniper/solver.hpp"

namespace juniper {

using NumberPair = std::pair<int, int>;

/// Partition of the stripped core into divisor-adjacent pairs, plus an
/// optional opening and vertices that are never played.
///
/// The second player answers every number with its partner, and 1 with a
/// prime above n/2. With an opening the first player plays it and then takes
/// the answering role, which proves G; without one the certificate proves P.
struct PairingCertificate {
  int n = 0;
  std::vector<NumberPair> pairs;
  std::optional<int> first_move;
  std::vector<int> excluded;
  Outcome claim = Outcome::Loss;  // Win reads G
};

struct ForcedPairing {
  std::vector<NumberPair> pairs;  // (leaf, partner) in discovery order
  VertexSet residual;             // unpaired vertices that still have neighbors
  std::vector<int> isolated;      // unpaired vertices left without neighbors
};

/// Pairs every degree-1 vertex with its neighbor until none is left. The
/// next leaf is the one with the lowest degree in the starting core, ties to
/// the smaller number.
ForcedPairing forced_pairs(int n, const PrimeTable& table);
/// Same closure taking leaves in random order; for confluence checks.
ForcedPairing forced_pairs_shuffled(int n, const PrimeTable& table, std::uint64_t seed);

struct GreedyOptions {
  int repair_depth = 8;
  int restarts = 32;
};

/// Forced pairs, then minimum-degree greedy pairing, then alternating-path
/// repair of leftovers. A single leftover becomes the opening; an even
/// opening is preferred when one can be reached by an alternating path.
std::optional<PairingCertificate> greedy_pairing(int n, const PrimeTable& table, GreedyOptions options = {});

/// Parses the certificate corpus format. Trailing bare numbers that are
/// isolated by the forced closure are exclusions, any other one is the
/// opening. Throws ParseError.
std::vector<PairingCertificate> parse_appendix(std::string_view text, const PrimeTable& table);
std::string format_certificate(const PairingCertificate& cert);

enum class ValidationRule {
  Ok,
  Range,
  Duplicate,
  Claim,
  Adjacency,
  Partition,
  ExcludedNotIsolated,
};

struct ValidationResult {
  ValidationRule rule = ValidationRule::Ok;
  std::string detail;
  bool ok() const noexcept { return rule == ValidationRule::Ok; }
};

std::string to_string(ValidationRule rule);

ValidationResult validate_certificate(const PairingCertificate& cert, const PrimeTable& table);

struct PairingVerifyOptions {
  std::optional<std::uint64_t> state_budget;
  /// Stop exploring a subtree once the opponent provably can only reach
  /// paired vertices from it. Off means plain exhaustive exploration.
  bool closure_cut = true;
};

/// Plays the partner-answer policy on the full board [1..n] against every
/// opponent choice. For a G certificate the opening is played first (its
/// parity is not checked here).
StrategyCheck verify_pairing_strategy(const PairingCertificate& cert, PairingVerifyOptions options = {});

/// Reply function of the partner-answer policy.
Policy pairing_policy(const PairingCertificate& cert);

struct ParityPrediction {
  int n = 0;
  int removed = 0;
  int core_size = 0;
  Outcome raw = Outcome::Loss;
  Outcome predicted = Outcome::Loss;
  /// The forced closure leaves an odd number of never-played vertices, which
  /// flips the raw parity.
  bool exception_applied = false;
  /// False for n handled by the scripted strategies.
  bool applicable = true;
};

ParityPrediction predict_by_parity(int n, const PrimeTable& table);

}  // namespace juniper
