#include "juniper/cli.hpp"

#include <algorithm>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "juniper/classify.hpp"
#include "juniper/errors.hpp"
#include "juniper/service.hpp"

namespace juniper {

namespace {

using nlohmann::json;

std::string ranges(const std::set<int>& values) {
  std::string out;
  for (auto it = values.begin(); it != values.end();) {
    const int lo = *it;
    int hi = lo;
    while (++it != values.end() && *it == hi + 1) hi = *it;
    if (!out.empty()) out += ", ";
    out += lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
  }
  return out.empty() ? "none" : out;
}

std::set<int> interval_union(std::initializer_list<std::pair<int, int>> parts) {
  std::set<int> out;
  for (auto [lo, hi] : parts) {
    for (int n = lo; n <= hi; ++n) out.insert(n);
  }
  return out;
}

std::string line_text(const std::vector<int>& line) {
  std::string out;
  for (int m : line) out += (out.empty() ? "" : ", ") + std::to_string(m);
  return out;
}

struct TableArgs {
  int max_n = 0;
  bool verified = false;
  bool as_json = false;
  std::string corpus;
  std::uint64_t budget = 5'000'000;
};

int run_table(const TableArgs& a, std::ostream& out) {
  ClassifierOptions options;
  options.effort = a.verified ? Effort::Verified : Effort::Fast;
  options.simulation_budget = a.budget;
  options.corpus = resolve_corpus(a.corpus.empty() ? std::nullopt : std::optional<std::string>(a.corpus));
  Classifier classifier(options);
  const std::vector<ClassificationReport> rows = classifier.full_table(a.max_n);
  const std::vector<std::string> diffs = diff_against_published(rows);
  const bool unproved = a.verified && std::any_of(rows.begin(), rows.end(), [](const auto& r) { return !r.verified; });
  if (a.as_json) {
    json records = json::array();
    for (const auto& r : rows) records.push_back(to_json(r));
    out << json{{"rows", records}, {"diffs", diffs}}.dump(2) << '\n';
  } else {
    out << render_table(rows);
    out << "diffs against the published table: " << diffs.size() << '\n';
    for (const auto& d : diffs) out << "  " << d << '\n';
  }
  return diffs.empty() && !unproved ? kExitOk : kExitVerificationFailed;
}

struct SolveArgs {
  int n = 0;
  bool no_even_rule = false;
  std::uint64_t budget = 0;
  bool stats = false;
  bool line = false;
};

int run_solve(const SolveArgs& a, std::ostream& out) {
  SolverOptions options;
  if (a.budget) options.node_budget = a.budget;
  SolveResult result;
  if (a.no_even_rule) {
    const DivisorGraph g(a.n);
    result = solve_position(g, initial_position(a.n, false), options.node_budget);
  } else {
    if (a.n == 1) {
      out << "-\n";
      return kExitOk;
    }
    result = solve_initial(a.n, options);
  }
  if (!result.verdict) {
    out << "unknown (budget exhausted)\n";
  } else {
    out << to_gp(*result.verdict) << '\n';
  }
  if (a.stats) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(result.stats.elapsed).count();
    out << "nodes " << result.stats.nodes_expanded << ", memo hits " << result.stats.memo_hits << ", memo entries "
        << result.stats.memo_entries << ", " << ms << " ms\n";
  }
  if (a.line && result.verdict && !a.no_even_rule) out << "line: " << line_text(principal_line(a.n)) << '\n';
  return result.verdict ? kExitOk : kExitVerificationFailed;
}

struct PairingArgs {
  int n = 0;
  std::string corpus;
  bool simulate = false;
  bool no_cut = false;
  bool greedy = false;
  std::uint64_t budget = 0;
};

bool report_certificate(const PairingCertificate& cert, const PrimeTable& table, const PairingArgs& a,
                        std::ostream& out) {
  out << format_certificate(cert) << '\n';
  out << "  claim " << to_gp(cert.claim);
  if (cert.first_move) out << ", opening " << *cert.first_move << (*cert.first_move % 2 ? " (odd)" : "");
  if (!cert.excluded.empty()) {
    out << ", never played:";
    for (int x : cert.excluded) out << ' ' << x;
  }
  out << '\n';
  const ValidationResult valid = validate_certificate(cert, table);
  out << "  validation: " << to_string(valid.rule) << (valid.detail.empty() ? "" : " (" + valid.detail + ")") << '\n';
  bool ok = valid.ok();
  if (a.simulate && ok) {
    PairingVerifyOptions options;
    options.closure_cut = !a.no_cut;
    if (a.budget) options.state_budget = a.budget;
    const StrategyCheck check = verify_pairing_strategy(cert, options);
    out << "  simulation: " << describe(check) << '\n';
    ok = !std::holds_alternative<Counterexample>(check);
  }
  return ok;
}

int run_pairing(const PairingArgs& a, std::ostream& out, std::ostream& err) {
  if ((a.n != 0) == !a.corpus.empty()) {
    err << "pairing: give exactly one of --n or --corpus\n";
    return kExitUsage;
  }
  if (!a.corpus.empty()) {
    const PrimeTable table(kDefaultPrimeLimit);
    const std::vector<PairingCertificate> certs = parse_appendix(resolve_corpus(a.corpus), table);
    int failures = 0;
    for (const auto& cert : certs) {
      out << "n=" << cert.n << ": ";
      if (!report_certificate(cert, table, a, out)) ++failures;
    }
    out << certs.size() << " entries, " << failures << " failed\n";
    return failures == 0 ? kExitOk : kExitVerificationFailed;
  }
  const PrimeTable table(std::max(a.n, kDefaultPrimeLimit));
  std::optional<PairingCertificate> cert;
  if (!a.greedy) {
    for (auto& c : parse_appendix(resolve_corpus(std::nullopt), table)) {
      if (c.n == a.n) cert = std::move(c);
    }
  }
  const ForcedPairing forced = forced_pairs(a.n, table);
  out << "forced pairs: " << forced.pairs.size() << ", isolated: "
      << (forced.isolated.empty() ? "none" : line_text(forced.isolated)) << '\n';
  if (!cert) cert = greedy_pairing(a.n, table);
  if (!cert) {
    out << "no certificate found\n";
    return kExitVerificationFailed;
  }
  const ParityPrediction pred = predict_by_parity(a.n, table);
  out << "parity: core " << pred.core_size << ", predicted " << to_gp(pred.predicted)
      << (pred.exception_applied ? " (flipped by a never-played number)" : "")
      << (pred.applicable ? "" : " (n is settled by a script)") << '\n';
  return report_certificate(*cert, table, a, out) ? kExitOk : kExitVerificationFailed;
}

struct StrategyArgs {
  int n = 0;
  std::string kind = "auto";
  std::uint64_t budget = 0;
  bool lines = false;
};

int run_strategy(const StrategyArgs& a, std::ostream& out) {
  const PrimeTable table(std::max(a.n, kDefaultPrimeLimit));
  const std::optional<std::uint64_t> budget = a.budget ? std::optional(a.budget) : std::nullopt;
  const DivisorGraph g(a.n);
  int verified = 0, failed = 0;
  auto check = [&](int opening, const Policy& policy, bool even_rule) {
    const StrategyCheck result = simulate_strategy(a.n, opening, policy, even_rule, budget);
    out << "  simulation: " << describe(result) << '\n';
    if (is_verified(result)) ++verified;
    if (std::holds_alternative<Counterexample>(result)) ++failed;
    if (a.lines) {
      const Position start = apply_move(initial_position(a.n, even_rule), opening);
      for (const auto& line : principal_lines(g, start, {opening}, policy)) out << "  line: " << line_text(line) << '\n';
    }
  };

  const bool any = a.kind == "auto";
  bool found = false;
  if (a.kind == "elementary") {
    if (const auto p = elementary_strategy(a.n, table)) {
      found = true;
      out << "elementary: open " << *p << " (even rule off), answer 1 with another prime above n/2\n";
      check(*p, [](const Position& pos) -> std::optional<int> {
        if (*pos.current == 1) return smallest_remaining_large_prime(pos);
        return std::nullopt;
      }, false);
    }
  }
  if (a.kind == "three-prime" || any) {
    if (const auto plan = three_prime_strategy(a.n, table)) {
      found = true;
      out << "three-prime: p=" << plan->p << " q=" << plan->q << " r=" << plan->r << ", open " << plan->opening << '\n';
      check(plan->opening, three_prime_policy(*plan), true);
    }
  }
  if (a.kind == "script" || (any && !found)) {
    for (const TwoPrimeScript* s : scripts_covering(a.n)) {
      found = true;
      out << "script " << format_script(*s) << ", open " << s->opening() << '\n';
      check(s->opening(), script_to_policy(*s, a.n), true);
    }
  }
  if (!found) {
    out << "no " << (any ? "scripted" : a.kind) << " strategy for n=" << a.n << '\n';
    return kExitVerificationFailed;
  }
  return failed == 0 ? kExitOk : kExitVerificationFailed;
}

int run_check_bounds(int limit, std::ostream& out) {
  const PrimeTable table(limit);
  const AppendixBoundsReport report = verify_appendix_bounds(table);
  std::set<int> two_from_three;
  for (int n : report.two_prime_exceptions) {
    if (n >= 3) two_from_three.insert(n);
  }
  const std::set<int> expected_two{4, 6, 10};
  const std::set<int> expected_three = interval_union({{1, 110}, {116, 122}, {124, 128}, {172, 176}});
  out << "two primes in (n/2, n], n <= " << report.two_prime_checked_up_to
      << ": exceptions " << ranges(report.two_prime_exceptions) << " (from n = 3: " << ranges(two_from_three) << ")\n";
  out << "three primes in (n/4, n/3], n <= " << report.three_prime_checked_up_to
      << ": exceptions " << ranges(report.three_prime_exceptions) << '\n';
  const bool ok = two_from_three == expected_two && report.three_prime_exceptions == expected_three;
  out << (ok ? "matches the published exception lists\n" : "DIFFERS from the published exception lists\n");
  return ok ? kExitOk : kExitVerificationFailed;
}

struct GraphArgs {
  int n = 0;
  bool dot = false;
  bool as_json = false;
  std::vector<int> moves;
  bool no_even_rule = false;
};

int run_graph(const GraphArgs& a, std::ostream& out) {
  const DivisorGraph g(a.n);
  const Position p = replay(a.n, !a.no_even_rule, a.moves);
  const GraphDocument doc = export_graph(g, p);
  if (a.dot) {
    out << to_dot(doc);
  } else {
    out << to_json(doc).dump(a.as_json ? 2 : -1) << '\n';
  }
  return kExitOk;
}

struct ServeArgs {
  int port = 8080;
  std::string host = "0.0.0.0";
  int max_n = 500;
  int exact_threshold = 48;
  std::string history_dir;
  std::string corpus;
};

int run_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  ServiceConfig config;
  config.max_n = a.max_n;
  config.engine.exact_threshold = a.exact_threshold;
  if (!a.history_dir.empty()) config.history_dir = a.history_dir;
  config.classifier.corpus = resolve_corpus(a.corpus.empty() ? std::nullopt : std::optional<std::string>(a.corpus));
  GameService service(config);
  out << "serving on " << a.host << ':' << a.port << std::endl;
  if (!serve_http(service, a.host, a.port)) {
    err << "could not listen on " << a.host << ':' << a.port << '\n';
    return kExitVerificationFailed;
  }
  return kExitOk;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Juniper Green solver and certificate checker", "juniper"};
  app.require_subcommand(1);

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "Classify every n up to --max-n and compare with the published table");
  table->add_option("--max-n", table_args.max_n, "Largest n")->required()->check(CLI::Range(2, kDefaultPrimeLimit));
  table->add_flag("--verified", table_args.verified, "Re-prove every piece of evidence");
  table->add_flag("--json", table_args.as_json, "Structured output");
  table->add_option("--corpus", table_args.corpus, "Certificate corpus file");
  table->add_option("--budget", table_args.budget, "State budget per simulation");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Exact search from the initial position");
  solve->add_option("--n", solve_args.n, "Board size")->required()->check(CLI::Range(1, 511));
  solve->add_flag("--no-even-rule", solve_args.no_even_rule, "Allow an odd first move");
  solve->add_option("--budget", solve_args.budget, "Node budget");
  solve->add_flag("--stats", solve_args.stats, "Print search statistics");
  solve->add_flag("--line", solve_args.line, "Print a principal line");

  PairingArgs pairing_args;
  auto* pairing = app.add_subcommand("pairing", "Check pairing certificates");
  pairing->add_option("--n", pairing_args.n, "Board size")->check(CLI::Range(4, kDefaultPrimeLimit));
  pairing->add_option("--corpus", pairing_args.corpus, "Certificate corpus file");
  pairing->add_flag("--simulate", pairing_args.simulate, "Play the pairing strategy against every defence");
  pairing->add_flag("--no-cut", pairing_args.no_cut, "Explore every line instead of closing safe subtrees");
  pairing->add_flag("--greedy", pairing_args.greedy, "Build a certificate instead of reading the corpus");
  pairing->add_option("--budget", pairing_args.budget, "State budget");

  StrategyArgs strategy_args;
  auto* strategy = app.add_subcommand("strategy", "Check a scripted first-player strategy");
  strategy->add_option("--n", strategy_args.n, "Board size")->required()->check(CLI::Range(2, kDefaultPrimeLimit));
  strategy->add_option("--kind", strategy_args.kind, "elementary, three-prime, script or auto")
      ->check(CLI::IsMember({"auto", "elementary", "three-prime", "script"}));
  strategy->add_option("--budget", strategy_args.budget, "State budget");
  strategy->add_flag("--lines", strategy_args.lines, "Print every line where 1 is avoided");

  int bounds_limit = kDefaultPrimeLimit;
  auto* primes = app.add_subcommand("primes", "Prime interval checks");
  primes->require_subcommand(1);
  auto* bounds = primes->add_subcommand("check-bounds", "Scan both prime-existence conditions");
  bounds->add_option("--limit", bounds_limit, "Sieve limit")->check(CLI::Range(kThreePrimeVerifiedFrom, 10'000'000));

  GraphArgs graph_args;
  auto* graph = app.add_subcommand("graph", "Export the divisor graph of a position");
  graph->add_option("--n", graph_args.n, "Board size")->required()->check(CLI::Range(1, 5000));
  auto* dot_flag = graph->add_flag("--dot", graph_args.dot, "Graphviz output");
  graph->add_flag("--json", graph_args.as_json, "Indented JSON output")->excludes(dot_flag);
  graph->add_option("--moves", graph_args.moves, "Moves played so far")->delimiter(',');
  graph->add_flag("--no-even-rule", graph_args.no_even_rule, "Allow an odd first move");

  ServeArgs serve_args;
  auto* serve = app.add_subcommand("serve", "Run the HTTP game service");
  serve->add_option("--port", serve_args.port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", serve_args.host, "Address to bind");
  serve->add_option("--max-n", serve_args.max_n, "Largest n for new games")->check(CLI::Range(2, 500));
  serve->add_option("--exact-threshold", serve_args.exact_threshold, "Largest n played by exact search");
  serve->add_option("--history-dir", serve_args.history_dir, "Directory for move logs");
  serve->add_option("--corpus", serve_args.corpus, "Certificate corpus file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*table) return run_table(table_args, out);
    if (*solve) return run_solve(solve_args, out);
    if (*pairing) return run_pairing(pairing_args, out, err);
    if (*strategy) return run_strategy(strategy_args, out);
    if (*bounds) return run_check_bounds(bounds_limit, out);
    if (*graph) return run_graph(graph_args, out);
    if (*serve) return run_serve(serve_args, out, err);
  } catch (const IllegalMove& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "corpus " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitVerificationFailed;
  }
  return kExitUsage;
}

}  // namespace juniper
