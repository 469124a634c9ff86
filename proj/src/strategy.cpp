#include "juniper/strategy.hpp"

#include <algorithm>
#include <sstream>

#include "juniper/data.hpp"
#include "juniper/errors.hpp"

namespace juniper {

std::optional<int> elementary_strategy(int n, const PrimeTable& table) {
  if (n < 2) return std::nullopt;
  const std::vector<int> large = table.large_primes(n);
  if (large.size() < 2) return std::nullopt;
  return large.front();
}

// ---------------------------------------------------------------------------

std::optional<ThreePrimePlan> three_prime_strategy(int n, const PrimeTable& table) {
  if (n < 12) return std::nullopt;
  const std::vector<int> band = table.third_band_primes(n);
  if (band.size() < 3) return std::nullopt;
  ThreePrimePlan plan;
  plan.n = n;
  plan.p = band[0];
  plan.q = band[1];
  plan.r = band[2];
  plan.opening = 2 * plan.p;
  const int p = plan.p, q = plan.q, r = plan.r;
  plan.reply_table = {
      {p, {3 * p, 2 * p}},
      {q, {2 * q, 3 * q}},
      {r, {2 * r, 3 * r}},
      {2, {2 * q, 2 * r}},
      {3, {3 * q, 3 * r}},
  };
  return plan;
}

namespace {

std::optional<int> first_unused(const Position& pos, const std::vector<int>& candidates) {
  for (int c : candidates) {
    if (pos.remaining.contains(c)) return c;
  }
  return std::nullopt;
}

}  // namespace

Policy three_prime_policy(const ThreePrimePlan& plan) {
  return [table = plan.reply_table](const Position& pos) -> std::optional<int> {
    const int x = *pos.current;
    if (x == 1) return smallest_remaining_large_prime(pos);
    for (const auto& [at, replies] : table) {
      if (at == x) return first_unused(pos, replies);
    }
    return std::nullopt;
  };
}

// ---------------------------------------------------------------------------

namespace {

TwoPrimeScript parse_script_line(std::string_view line, int line_no) {
  const std::size_t colon = line.find(':');
  if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'low high : chains'");
  TwoPrimeScript s;
  {
    std::istringstream head{std::string(line.substr(0, colon))};
    if (!(head >> s.n_low >> s.n_high)) throw ParseError(line_no, "expected the interval bounds");
    std::string extra;
    if (head >> extra) throw ParseError(line_no, "unexpected text before ':'");
  }
  std::string_view rest = line.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    const char c = rest[pos];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++pos;
      continue;
    }
    if (c != '[') throw ParseError(line_no, "expected '['");
    const std::size_t close = rest.find(']', pos);
    if (close == std::string_view::npos) throw ParseError(line_no, "unterminated chain");
    std::istringstream body{std::string(rest.substr(pos + 1, close - pos - 1))};
    std::vector<int> chain;
    std::string tok;
    while (body >> tok) {
      const bool marked = tok.front() == '*';
      if (marked) tok.erase(0, 1);
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
        throw ParseError(line_no, "bad chain entry '" + tok + "'");
      }
      const int v = std::stoi(tok);
      chain.push_back(v);
      if (marked) s.marked.push_back(v);
    }
    if (chain.size() < 2) throw ParseError(line_no, "chain too short");
    s.chains.push_back(std::move(chain));
    pos = close + 1;
  }
  if (s.chains.empty()) throw ParseError(line_no, "no chains");

  // The first player plays every second entry, starting from the second.
  std::vector<int> own;
  for (const auto& chain : s.chains) {
    for (std::size_t i = 1; i < chain.size(); i += 2) own.push_back(chain[i]);
  }
  s.a = *std::max_element(own.begin(), own.end());
  s.b = *std::min_element(own.begin(), own.end());
  if (s.a != s.n_low || 2 * s.b - 1 != s.n_high) {
    throw ParseError(line_no, "chains give [" + std::to_string(s.a) + ", " + std::to_string(2 * s.b - 1) +
                                  "], header says [" + std::to_string(s.n_low) + ", " + std::to_string(s.n_high) + "]");
  }
  std::vector<int> marks = s.marked;
  std::sort(marks.begin(), marks.end());
  if (marks != std::vector<int>{s.b, s.a} && !(s.a == s.b && marks == std::vector<int>{s.a})) {
    throw ParseError(line_no, "marked numbers do not match the extreme first-player numbers");
  }
  return s;
}

}  // namespace

std::vector<TwoPrimeScript> parse_two_prime_scripts(std::string_view text) {
  std::vector<TwoPrimeScript> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_script_line(line, line_no));
  }
  return out;
}

const std::vector<TwoPrimeScript>& builtin_two_prime_scripts() {
  static const std::vector<TwoPrimeScript> scripts = parse_two_prime_scripts(data::two_prime_scripts());
  return scripts;
}

std::string format_script(const TwoPrimeScript& s) {
  std::ostringstream out;
  out << s.n_low << ' ' << s.n_high << " :";
  bool first_chain = true;
  for (const auto& chain : s.chains) {
    out << (first_chain ? " [" : "[");
    first_chain = false;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (i) out << ' ';
      if (std::find(s.marked.begin(), s.marked.end(), chain[i]) != s.marked.end()) out << '*';
      out << chain[i];
    }
    out << ']';
  }
  return out.str();
}

Policy script_to_policy(const TwoPrimeScript& s, int n, bool require_cover) {
  if (require_cover && !s.covers(n)) throw InvalidArgument("script does not cover n = " + std::to_string(n));
  // successors[x]: the strategist's candidate replies when the opponent is at x.
  std::vector<std::vector<int>> successors(static_cast<std::size_t>(std::max(n, s.n_high)) + 1);
  for (const auto& chain : s.chains) {
    for (std::size_t i = 0; i + 1 < chain.size(); i += 2) {
      successors[static_cast<std::size_t>(chain[i])].push_back(chain[i + 1]);
    }
  }
  return [successors = std::move(successors)](const Position& pos) -> std::optional<int> {
    const int x = *pos.current;
    if (x == 1) return smallest_remaining_large_prime(pos);
    return first_unused(pos, successors[static_cast<std::size_t>(x)]);
  };
}

StrategyCheck simulate_strategy(int n, int opening, const Policy& policy, bool even_rule,
                                std::optional<std::uint64_t> budget) {
  const DivisorGraph g(n);
  const Position start = initial_position(n, even_rule);
  if (!is_legal_move(start, opening)) {
    return Counterexample{{opening}, "opening " + std::to_string(opening) + " is illegal"};
  }
  SimulationOptions options;
  options.state_budget = budget;
  return simulate_lines(g, apply_move(start, opening), {opening}, policy, options);
}

// ---------------------------------------------------------------------------

std::string to_string(EquivalenceLink::Kind kind) {
  return kind == EquivalenceLink::Kind::PrimeTop ? "prime-top" : "twice-prime";
}

std::optional<EquivalenceLink> equivalent_predecessor(int n, const PrimeTable& table) {
  if (n < 5) return std::nullopt;
  if (n > table.limit()) throw TableTooSmall("n = " + std::to_string(n) + " exceeds the prime table");
  if (table.is_prime(n)) return EquivalenceLink{n, EquivalenceLink::Kind::PrimeTop, n, n - 1};
  if (n % 2 == 0 && table.is_prime(n / 2) && n / 2 >= 3) {
    return EquivalenceLink{n, EquivalenceLink::Kind::TwicePrime, n / 2, n - 1};
  }
  return std::nullopt;
}

std::vector<const TwoPrimeScript*> scripts_covering(int n) {
  std::vector<const TwoPrimeScript*> out;
  for (const auto& s : builtin_two_prime_scripts()) {
    if (s.covers(n)) out.push_back(&s);
  }
  return out;
}

bool covered_by_script(int n, const PrimeTable& table) {
  return three_prime_strategy(n, table).has_value() || !scripts_covering(n).empty();
}

}  // namespace juniper
