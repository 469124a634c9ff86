#include "juniper/classify.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "juniper/data.hpp"
#include "juniper/errors.hpp"

namespace juniper {

std::string to_string(Method m) {
  switch (m) {
    case Method::None: return "none";
    case Method::Solver: return "solver";
    case Method::EquivalenceLink: return "equivalence-link";
    case Method::ThreePrimeScript: return "three-prime-script";
    case Method::TwoPrimeScript: return "two-prime-script";
    case Method::PairingCertificate: return "pairing-certificate";
    case Method::ParityRule: return "parity-rule";
  }
  return "unknown";
}

std::string ClassificationReport::symbol() const {
  if (!verdict) return "-";
  if (method == Method::EquivalenceLink) return "|";
  return std::string(1, to_gp(*verdict));
}

std::optional<int> ClassificationReport::opening() const {
  if (const auto* plan = std::get_if<ThreePrimePlan>(&evidence)) return plan->opening;
  if (const auto* script = std::get_if<TwoPrimeScript>(&evidence)) return script->opening();
  if (const auto* cert = std::get_if<PairingCertificate>(&evidence)) return cert->first_move;
  if (const auto* solved = std::get_if<SolverEvidence>(&evidence)) return solved->opening;
  return std::nullopt;
}

Classifier::Classifier(ClassifierOptions options, int prime_limit)
    : options_(std::move(options)), table_(prime_limit) {
  const std::string_view text = options_.corpus ? std::string_view(*options_.corpus) : data::certificate_corpus();
  for (auto& cert : parse_appendix(text, table_)) corpus_[cert.n] = std::move(cert);
}

const PairingCertificate* Classifier::corpus_entry(int n) const {
  const auto it = corpus_.find(n);
  return it == corpus_.end() ? nullptr : &it->second;
}

ClassificationReport Classifier::classify(int n) {
  if (n < 1) throw InvalidArgument("n must be positive");
  if (n > table_.limit()) throw TableTooSmall("n = " + std::to_string(n) + " exceeds the prime table");
  if (const auto it = cache_.find(n); it != cache_.end()) return it->second;
  ClassificationReport report = compute(n);
  cache_[n] = report;
  return report;
}

std::vector<ClassificationReport> Classifier::full_table(int max_n) {
  if (max_n < 2) throw InvalidArgument("max_n must be at least 2");
  std::vector<ClassificationReport> rows;
  rows.reserve(static_cast<std::size_t>(max_n));
  for (int n = 1; n <= max_n; ++n) rows.push_back(classify(n));
  return rows;
}

ClassificationReport Classifier::compute(int n) {
  ClassificationReport report;
  report.n = n;
  if (n == 1) {
    report.verified = true;
    report.detail = "no even first move";
    return report;
  }
  if (auto scripted = by_script(n)) return *scripted;

  if (const auto link = equivalent_predecessor(n, table_)) {
    const ClassificationReport prev = classify(n - 1);
    report.verdict = prev.verdict;
    report.method = Method::EquivalenceLink;
    report.evidence = *link;
    report.verified = prev.verified;
    report.detail = to_string(link->kind) + " link to " + std::to_string(n - 1);
    const std::optional<PairingCertificate> cert = effective_certificate(n - 1);
    if (cert && options_.effort == Effort::Verified) {
      PairingVerifyOptions verify;
      verify.state_budget = options_.simulation_budget;
      const StrategyCheck check = verify_pairing_strategy(lift_certificate(*cert, *link), verify);
      report.detail += ", lifted certificate " + describe(check);
      report.verified = report.verified && is_verified(check);
    }
    return report;
  }
  if (auto certified = by_certificate(n)) return *certified;

  if (options_.effort == Effort::Fast && n >= 4) {
    const ParityPrediction pred = predict_by_parity(n, table_);
    if (pred.applicable) {
      report.verdict = pred.predicted;
      report.method = Method::ParityRule;
      report.evidence = pred;
      report.detail = "core of " + std::to_string(pred.core_size) + " numbers";
      return report;
    }
  }
  return by_solver(n);
}

std::optional<PairingCertificate> Classifier::effective_certificate(int n) {
  const ClassificationReport report = classify(n);
  if (const auto* cert = std::get_if<PairingCertificate>(&report.evidence)) return *cert;
  if (const auto* link = std::get_if<EquivalenceLink>(&report.evidence)) {
    if (auto below = effective_certificate(n - 1)) return lift_certificate(*below, *link);
  }
  return std::nullopt;
}

std::optional<ClassificationReport> Classifier::by_script(int n) {
  const std::optional<std::uint64_t> budget = options_.simulation_budget;
  ClassificationReport report;
  report.n = n;
  report.verdict = Outcome::Win;
  if (auto plan = three_prime_strategy(n, table_)) {
    const StrategyCheck check = simulate_strategy(n, plan->opening, three_prime_policy(*plan), true, budget);
    if (!std::holds_alternative<Counterexample>(check)) {
      report.method = Method::ThreePrimeScript;
      report.evidence = *plan;
      report.verified = is_verified(check);
      report.detail = describe(check);
      return report;
    }
  }
  for (const TwoPrimeScript* script : scripts_covering(n)) {
    const StrategyCheck check = simulate_strategy(n, script->opening(), script_to_policy(*script, n), true, budget);
    if (std::holds_alternative<Counterexample>(check)) continue;
    report.method = Method::TwoPrimeScript;
    report.evidence = *script;
    report.verified = is_verified(check);
    report.detail = describe(check);
    return report;
  }
  return std::nullopt;
}

std::optional<ClassificationReport> Classifier::by_certificate(int n) {
  if (const PairingCertificate* cert = corpus_entry(n)) {
    if (auto report = by_certificate(*cert, "corpus")) return report;
  }
  if (n >= 4) {
    if (auto greedy = greedy_pairing(n, table_)) {
      if (auto report = by_certificate(*greedy, "greedy")) return report;
    }
  }
  return std::nullopt;
}

std::optional<ClassificationReport> Classifier::by_certificate(const PairingCertificate& cert,
                                                              const std::string& source) {
  // The first move must obey the even rule to settle the real game.
  if (cert.first_move && *cert.first_move % 2 != 0) return std::nullopt;
  const ValidationResult valid = validate_certificate(cert, table_);
  if (!valid.ok()) return std::nullopt;

  ClassificationReport report;
  report.n = cert.n;
  report.verdict = cert.claim;
  report.method = Method::PairingCertificate;
  report.evidence = cert;
  report.detail = source + " certificate, valid";
  // Excluded numbers rest on a reachability argument, so those always get
  // simulated; a plain pairing is only simulated when asked to.
  if (options_.effort == Effort::Verified || !cert.excluded.empty()) {
    PairingVerifyOptions verify;
    verify.state_budget = options_.simulation_budget;
    const StrategyCheck check = verify_pairing_strategy(cert, verify);
    if (std::holds_alternative<Counterexample>(check)) return std::nullopt;
    report.verified = is_verified(check);
    report.detail += ", " + describe(check);
  }
  return report;
}

ClassificationReport Classifier::by_solver(int n) {
  ClassificationReport report;
  report.n = n;
  report.method = Method::Solver;
  SolverOptions opts;
  opts.node_budget = options_.solver_budget;
  const SolveResult result = solve_initial(n, opts);
  SolverEvidence evidence;
  evidence.stats = result.stats;
  report.verdict = result.verdict;
  if (result.verdict) {
    report.verified = true;
    Solver full(n, opts);
    evidence.opening = full.best_move(initial_position(n, true));
    report.detail = "searched " + std::to_string(result.stats.nodes_expanded) + " nodes";
  } else {
    report.detail = "search budget exhausted after " + std::to_string(result.stats.nodes_expanded) + " nodes";
  }
  report.evidence = evidence;
  return report;
}

ClassificationReport classify(int n, Effort effort) {
  ClassifierOptions options;
  options.effort = effort;
  return Classifier(options).classify(n);
}

std::vector<ClassificationReport> full_table(int max_n, Effort effort) {
  ClassifierOptions options;
  options.effort = effort;
  return Classifier(options).full_table(max_n);
}

std::string render_table(const std::vector<ClassificationReport>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(6) << "n" << std::setw(4) << "G/P" << std::setw(22) << "method"
      << "verified\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(6) << r.n << std::setw(4) << r.symbol() << std::setw(22)
        << (r.is_script() ? to_string(r.method) + " *" : to_string(r.method)) << (r.verified ? "yes" : "no")
        << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

std::vector<PublishedRow> parse_published_table(std::string_view text) {
  std::vector<PublishedRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string number, symbol, tag;
    if (!(fields >> number >> symbol)) throw ParseError(line_no, "expected 'n symbol [green]'");
    PublishedRow row;
    if (!number.empty() && number.back() == '+') {
      row.and_above = true;
      number.pop_back();
    }
    try {
      row.n = std::stoi(number);
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad number '" + number + "'");
    }
    if (symbol != "-" && symbol != "|" && symbol != "G" && symbol != "P") {
      throw ParseError(line_no, "bad symbol '" + symbol + "'");
    }
    row.symbol = symbol;
    if (fields >> tag) {
      if (tag != "green") throw ParseError(line_no, "unknown tag '" + tag + "'");
      row.green = true;
    }
    rows.push_back(row);
  }
  return rows;
}

const std::vector<PublishedRow>& published_table() {
  static const std::vector<PublishedRow> rows = parse_published_table(data::published_results());
  return rows;
}

std::optional<PublishedRow> published_row(int n) {
  for (const auto& row : published_table()) {
    if (row.n == n || (row.and_above && n >= row.n)) {
      PublishedRow out = row;
      out.n = n;
      return out;
    }
  }
  return std::nullopt;
}

std::vector<std::string> diff_against_published(const std::vector<ClassificationReport>& rows) {
  std::vector<std::string> diffs;
  for (const auto& r : rows) {
    const auto expected = published_row(r.n);
    if (!expected) continue;
    if (expected->symbol != r.symbol() || expected->green != r.is_script()) {
      diffs.push_back("n=" + std::to_string(r.n) + ": expected " + expected->symbol +
                      (expected->green ? " (script)" : "") + ", got " + r.symbol() +
                      (r.is_script() ? " (script)" : ""));
    }
  }
  return diffs;
}

PairingCertificate lift_certificate(const PairingCertificate& cert, const EquivalenceLink& link) {
  if (cert.n != link.equivalent_to) throw InvalidArgument("certificate is not for n - 1");
  PairingCertificate out = cert;
  out.n = link.n;
  if (link.kind == EquivalenceLink::Kind::TwicePrime) out.pairs.emplace_back(link.prime, link.n);
  return out;
}

std::string resolve_corpus(const std::optional<std::string>& path) {
  std::optional<std::string> chosen = path;
  if (!chosen) {
    if (const char* env = std::getenv("JUNIPER_CORPUS"); env && *env) chosen = env;
  }
  if (!chosen) return std::string(data::certificate_corpus());
  std::ifstream in(*chosen, std::ios::binary);
  if (!in) throw Error("cannot read corpus file " + *chosen);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace juniper
