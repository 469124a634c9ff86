#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "juniper/pairing.hpp"
#include "juniper/primes.hpp"
#include "juniper/strategy.hpp"

namespace juniper {

enum class Effort { Fast, Verified };

enum class Method {
  None,  // n = 1
  Solver,
  EquivalenceLink,
  ThreePrimeScript,
  TwoPrimeScript,
  PairingCertificate,
  ParityRule,
};

std::string to_string(Method m);

/// A winning (or best resisting) opening found by search.
struct SolverEvidence {
  std::optional<int> opening;
  SearchStats stats;
};

using Evidence = std::variant<std::monostate, SolverEvidence, EquivalenceLink, ThreePrimePlan, TwoPrimeScript,
                              PairingCertificate, ParityPrediction>;

struct ClassificationReport {
  int n = 0;
  std::optional<Outcome> verdict;  // empty: undefined game
  Method method = Method::None;
  Evidence evidence;
  bool verified = false;
  /// Human-readable account of how the evidence was checked.
  std::string detail;

  bool is_script() const { return method == Method::ThreePrimeScript || method == Method::TwoPrimeScript; }
  /// "-", "|", "G" or "P", as in the published table.
  std::string symbol() const;
  /// Opening the evidence recommends for the first player, if any.
  std::optional<int> opening() const;
};

struct ClassifierOptions {
  Effort effort = Effort::Fast;
  /// Per-simulation state budget; empty means unbounded.
  std::optional<std::uint64_t> simulation_budget = 5'000'000;
  /// Node budget for the search fallback.
  std::uint64_t solver_budget = 20'000'000;
  /// Corpus text in the certificate format; empty uses the built-in copy.
  std::optional<std::string> corpus;
};

class Classifier {
 public:
  explicit Classifier(ClassifierOptions options = {}, int prime_limit = kDefaultPrimeLimit);

  ClassificationReport classify(int n);
  std::vector<ClassificationReport> full_table(int max_n);

  const PrimeTable& primes() const { return table_; }
  const ClassifierOptions& options() const { return options_; }
  /// Corpus certificate for n, if the corpus has one.
  const PairingCertificate* corpus_entry(int n) const;
  /// The certificate behind classify(n), following links down to the
  /// certificate they rest on.
  std::optional<PairingCertificate> effective_certificate(int n);

 private:
  ClassificationReport compute(int n);
  std::optional<ClassificationReport> by_script(int n);
  std::optional<ClassificationReport> by_certificate(int n);
  std::optional<ClassificationReport> by_certificate(const PairingCertificate& cert, const std::string& source);
  ClassificationReport by_solver(int n);

  ClassifierOptions options_;
  PrimeTable table_;
  std::map<int, PairingCertificate> corpus_;
  std::map<int, ClassificationReport> cache_;
};

ClassificationReport classify(int n, Effort effort);
std::vector<ClassificationReport> full_table(int max_n, Effort effort);

/// Aligned text, one row per n: number, symbol, method, verified flag.
std::string render_table(const std::vector<ClassificationReport>& rows);

/// One row of the published results table.
struct PublishedRow {
  int n = 0;
  bool and_above = false;  // the row stands for every n >= this one
  std::string symbol;
  bool green = false;
};

std::vector<PublishedRow> parse_published_table(std::string_view text);
const std::vector<PublishedRow>& published_table();
/// The published row that covers n.
std::optional<PublishedRow> published_row(int n);

/// Mismatches between computed rows and the published table, one line each.
std::vector<std::string> diff_against_published(const std::vector<ClassificationReport>& rows);

/// Carries a certificate for n - 1 across a link: same pairs for a prime
/// top, plus the pair (p, 2p) for twice a prime.
PairingCertificate lift_certificate(const PairingCertificate& cert, const EquivalenceLink& link);

/// Corpus text chosen by an explicit path, then JUNIPER_CORPUS, then the
/// built-in copy. Throws Error if a named file cannot be read.
std::string resolve_corpus(const std::optional<std::string>& path);

}  // namespace juniper
