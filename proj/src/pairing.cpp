#include "juniper/pairing.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>

#include "juniper/errors.hpp"
#include "juniper/strategy.hpp"

namespace juniper {

namespace {

int degree_in(const DivisorGraph& g, int v, const VertexSet& within) {
  return (g.neighbor_set(v) & within).count();
}

// Settles one leaf (or isolated vertex) at a time. The deterministic order
// takes the leaf with the lowest degree in the starting core, then the
// smallest number; with `rng` any current leaf may go next.
ForcedPairing forced_closure(const DivisorGraph& g, VertexSet residual, std::mt19937_64* rng) {
  ForcedPairing out;
  std::vector<int> start_degree(static_cast<std::size_t>(g.n()) + 1, 0);
  residual.for_each([&](int v) { start_degree[static_cast<std::size_t>(v)] = degree_in(g, v, residual); });
  while (true) {
    std::vector<int> leaves;
    residual.for_each([&](int v) {
      if (degree_in(g, v, residual) <= 1) leaves.push_back(v);
    });
    if (leaves.empty()) break;
    int v = 0;
    if (rng) {
      v = leaves[(*rng)() % leaves.size()];
    } else {
      v = *std::min_element(leaves.begin(), leaves.end(), [&](int a, int b) {
        const int da = start_degree[static_cast<std::size_t>(a)];
        const int db = start_degree[static_cast<std::size_t>(b)];
        return da != db ? da < db : a < b;
      });
    }
    const VertexSet nv = g.neighbor_set(v) & residual;
    residual.reset(v);
    if (nv.none()) {
      out.isolated.push_back(v);
    } else {
      const int u = nv.first();
      out.pairs.emplace_back(v, u);
      residual.reset(u);
    }
  }
  std::sort(out.isolated.begin(), out.isolated.end());
  out.residual = residual;
  return out;
}

// Matching over the residual vertices, with alternating-path search.
class ResidualMatching {
 public:
  ResidualMatching(const DivisorGraph& g, VertexSet residual) : g_(g), residual_(std::move(residual)) {
    mate_.assign(static_cast<std::size_t>(g.n()) + 1, 0);
  }

  void greedy(std::mt19937_64* rng) {
    VertexSet work = residual_;
    while (work.any()) {
      int best_deg = INT32_MAX;
      std::vector<int> candidates;
      work.for_each([&](int v) {
        const int d = degree_in(g_, v, work);
        if (d < best_deg) {
          best_deg = d;
          candidates.assign(1, v);
        } else if (d == best_deg) {
          candidates.push_back(v);
        }
      });
      const int v = rng ? candidates[(*rng)() % candidates.size()] : candidates.front();
      work.reset(v);
      if (best_deg == 0) {
        leftovers_.push_back(v);
        continue;
      }
      const std::vector<int> nbrs = (g_.neighbor_set(v) & work).to_vector();
      const int u = rng ? nbrs[(*rng)() % nbrs.size()] : nbrs.back();
      work.reset(u);
      match(v, u);
    }
  }

  // Joins leftover pairs through augmenting paths while any can be found.
  void repair(int max_depth) {
    bool progress = true;
    while (progress && leftovers_.size() >= 2) {
      progress = false;
      for (std::size_t i = 0; i < leftovers_.size() && !progress; ++i) {
        const int start = leftovers_[i];
        std::vector<int> path{start};
        VertexSet visited(g_.n());
        visited.set(start);
        if (augment_from(start, start, 0, max_depth, visited, path)) {
          const int end = path.back();
          for (std::size_t k = 0; k + 1 < path.size(); k += 2) match(path[k], path[k + 1]);
          std::erase(leftovers_, start);
          std::erase(leftovers_, end);
          progress = true;
        }
      }
    }
  }

  // Moves a single odd leftover to an even vertex along an alternating path.
  void shift_to_even(int max_depth) {
    if (leftovers_.size() != 1 || leftovers_[0] % 2 == 0) return;
    const int start = leftovers_[0];
    std::vector<int> path{start};
    VertexSet visited(g_.n());
    visited.set(start);
    if (shift_from(start, 0, max_depth, visited, path)) {
      for (std::size_t k = 0; k + 1 < path.size(); k += 2) match(path[k], path[k + 1]);
      mate_[static_cast<std::size_t>(path.back())] = 0;
      leftovers_[0] = path.back();
    }
  }

  const std::vector<int>& leftovers() const { return leftovers_; }

  std::vector<NumberPair> pairs() const {
    std::vector<NumberPair> out;
    for (int v = 1; v <= g_.n(); ++v) {
      const int u = mate_[static_cast<std::size_t>(v)];
      if (u != 0 && v < u) out.emplace_back(v, u);
    }
    return out;
  }

 private:
  void match(int a, int b) {
    mate_[static_cast<std::size_t>(a)] = b;
    mate_[static_cast<std::size_t>(b)] = a;
  }
  int mate(int v) const { return mate_[static_cast<std::size_t>(v)]; }
  bool is_leftover(int v) const { return std::find(leftovers_.begin(), leftovers_.end(), v) != leftovers_.end(); }

  // path alternates free/outer vertex, then (inner, its mate) pairs.
  bool augment_from(int v, int start, int depth, int max_depth, VertexSet& visited, std::vector<int>& path) {
    bool found = false;
    (g_.neighbor_set(v) & residual_).for_each([&](int u) {
      if (found || visited.contains(u)) return;
      if (u != start && is_leftover(u)) {
        path.push_back(u);
        found = true;
        return;
      }
      const int w = mate(u);
      if (w == 0 || visited.contains(w) || depth >= max_depth) return;
      visited.set(u);
      visited.set(w);
      path.push_back(u);
      path.push_back(w);
      if (augment_from(w, start, depth + 1, max_depth, visited, path)) {
        found = true;
        return;
      }
      path.pop_back();
      path.pop_back();
    });
    return found;
  }

  bool shift_from(int v, int depth, int max_depth, VertexSet& visited, std::vector<int>& path) {
    if (depth >= max_depth) return false;
    bool found = false;
    (g_.neighbor_set(v) & residual_).for_each([&](int u) {
      if (found || visited.contains(u)) return;
      const int w = mate(u);
      if (w == 0 || visited.contains(w)) return;
      visited.set(u);
      visited.set(w);
      path.push_back(u);
      path.push_back(w);
      if (w % 2 == 0 || shift_from(w, depth + 1, max_depth, visited, path)) {
        found = true;
        return;
      }
      path.pop_back();
      path.pop_back();
    });
    return found;
  }

  const DivisorGraph& g_;
  VertexSet residual_;
  std::vector<int> mate_;
  std::vector<int> leftovers_;
};

}  // namespace

ForcedPairing forced_pairs(int n, const PrimeTable& table) {
  const SimplifiedStart start = strip_trivial(n, table);
  const DivisorGraph g(n);
  return forced_closure(g, start.kept, nullptr);
}

ForcedPairing forced_pairs_shuffled(int n, const PrimeTable& table, std::uint64_t seed) {
  const SimplifiedStart start = strip_trivial(n, table);
  const DivisorGraph g(n);
  std::mt19937_64 rng(seed);
  return forced_closure(g, start.kept, &rng);
}

std::optional<PairingCertificate> greedy_pairing(int n, const PrimeTable& table, GreedyOptions options) {
  if (n < 4) return std::nullopt;
  const DivisorGraph g(n);
  const ForcedPairing forced = forced_pairs(n, table);

  std::optional<PairingCertificate> fallback;
  for (int attempt = 0; attempt <= options.restarts; ++attempt) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(attempt));
    ResidualMatching matching(g, forced.residual);
    matching.greedy(attempt == 0 ? nullptr : &rng);
    matching.repair(options.repair_depth);
    matching.shift_to_even(options.repair_depth);
    if (matching.leftovers().size() > 1) continue;

    PairingCertificate cert;
    cert.n = n;
    cert.pairs = forced.pairs;
    for (auto p : matching.pairs()) cert.pairs.push_back(p);
    cert.excluded = forced.isolated;
    if (!matching.leftovers().empty()) {
      cert.first_move = matching.leftovers().front();
      cert.claim = Outcome::Win;
    }
    if (!cert.first_move || *cert.first_move % 2 == 0) return cert;
    if (!fallback) fallback = std::move(cert);
  }
  return fallback;
}

// ---------------------------------------------------------------------------
// Corpus format

namespace {

struct Token {
  enum Kind { Number, PairTok } kind;
  int a = 0;
  int b = 0;
  int line = 0;
};

class EntryLexer {
 public:
  EntryLexer(std::string_view text, int first_line) : text_(text), line_(first_line) {}

  std::vector<Token> tokens() {
    std::vector<Token> out;
    while (true) {
      skip_separators();
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      if (c == '(') {
        ++pos_;
        Token t{Token::PairTok, 0, 0, line_};
        t.a = number("pair");
        skip_spaces();
        expect(',');
        t.b = number("pair");
        skip_spaces();
        expect(')');
        out.push_back(t);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back(Token{Token::Number, number("entry"), 0, line_});
      } else {
        throw ParseError(line_, std::string("unexpected character '") + c + "'");
      }
    }
    return out;
  }

 private:
  void skip_spaces() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }
  void skip_separators() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
      } else if (c != ' ' && c != '\t' && c != '\r' && c != ',') {
        break;
      }
      ++pos_;
    }
  }
  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(line_, std::string("malformed pair, expected '") + c + "'");
    ++pos_;
  }
  int number(const char* what) {
    skip_spaces();
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (begin == pos_) throw ParseError(line_, std::string("malformed ") + what + ": expected a number");
    if (pos_ - begin > 9) throw ParseError(line_, "number too large");
    return std::stoi(std::string(text_.substr(begin, pos_ - begin)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
};

PairingCertificate parse_entry(std::string_view block, int first_line, const PrimeTable& table) {
  const std::vector<Token> tokens = EntryLexer(block, first_line).tokens();
  if (tokens.empty() || tokens[0].kind != Token::Number) throw ParseError(first_line, "entry must start with n");
  PairingCertificate cert;
  cert.n = tokens[0].a;
  if (cert.n < 2) throw ParseError(first_line, "n must be at least 2");
  if (cert.n > table.limit()) throw ParseError(first_line, "n exceeds the prime table");

  VertexSet seen(cert.n);
  auto claim_number = [&](int v, int line) {
    if (v < 2 || v > cert.n) throw ParseError(line, "number " + std::to_string(v) + " out of range");
    if (seen.contains(v)) throw ParseError(line, "duplicate number " + std::to_string(v));
    seen.set(v);
  };

  std::vector<Token> trailing;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.kind == Token::PairTok) {
      if (!trailing.empty()) throw ParseError(t.line, "pair after trailing numbers");
      claim_number(t.a, t.line);
      claim_number(t.b, t.line);
      cert.pairs.emplace_back(t.a, t.b);
    } else {
      claim_number(t.a, t.line);
      trailing.push_back(t);
    }
  }

  const std::vector<int> isolated = forced_pairs(cert.n, table).isolated;
  for (const Token& t : trailing) {
    if (std::find(isolated.begin(), isolated.end(), t.a) != isolated.end()) {
      cert.excluded.push_back(t.a);
    } else if (cert.first_move) {
      throw ParseError(t.line, "more than one opening number");
    } else {
      cert.first_move = t.a;
    }
  }
  cert.claim = cert.first_move ? Outcome::Win : Outcome::Loss;
  return cert;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

std::vector<PairingCertificate> parse_appendix(std::string_view text, const PrimeTable& table) {
  std::vector<PairingCertificate> out;
  std::size_t pos = 0;
  int line_no = 1;
  std::size_t block_begin = std::string_view::npos;
  int block_line = 0;
  auto flush = [&](std::size_t end) {
    if (block_begin == std::string_view::npos) return;
    out.push_back(parse_entry(text.substr(block_begin, end - block_begin), block_line, table));
    block_begin = std::string_view::npos;
  };
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    if (blank(line)) {
      flush(pos);
    } else if (block_begin == std::string_view::npos) {
      block_begin = pos;
      block_line = line_no;
    }
    pos = eol + 1;
    ++line_no;
  }
  flush(text.size());
  return out;
}

std::string format_certificate(const PairingCertificate& cert) {
  std::ostringstream out;
  out << cert.n << ' ';
  for (auto [a, b] : cert.pairs) out << '(' << a << ',' << b << ')';
  std::vector<int> trailing = cert.excluded;
  if (cert.first_move) trailing.push_back(*cert.first_move);
  for (std::size_t i = 0; i < trailing.size(); ++i) out << (i == 0 ? " " : ",") << trailing[i];
  return out.str();
}

// ---------------------------------------------------------------------------
// Validation

std::string to_string(ValidationRule rule) {
  switch (rule) {
    case ValidationRule::Ok: return "ok";
    case ValidationRule::Range: return "range";
    case ValidationRule::Duplicate: return "duplicate";
    case ValidationRule::Claim: return "claim";
    case ValidationRule::Adjacency: return "adjacency";
    case ValidationRule::Partition: return "partition";
    case ValidationRule::ExcludedNotIsolated: return "excluded-not-isolated";
  }
  return "unknown";
}

ValidationResult validate_certificate(const PairingCertificate& cert, const PrimeTable& table) {
  if (cert.n < 2) return {ValidationRule::Range, "n must be at least 2"};
  if (cert.n > table.limit()) return {ValidationRule::Range, "n exceeds the prime table"};

  std::vector<int> all;
  for (auto [a, b] : cert.pairs) {
    all.push_back(a);
    all.push_back(b);
  }
  if (cert.first_move) all.push_back(*cert.first_move);
  all.insert(all.end(), cert.excluded.begin(), cert.excluded.end());

  VertexSet covered(cert.n);
  for (int v : all) {
    if (v < 2 || v > cert.n) return {ValidationRule::Range, std::to_string(v) + " is outside [2.." + std::to_string(cert.n) + "]"};
    if (covered.contains(v)) return {ValidationRule::Duplicate, std::to_string(v) + " appears twice"};
    covered.set(v);
  }
  if ((cert.claim == Outcome::Win) != cert.first_move.has_value()) {
    return {ValidationRule::Claim, "a G claim needs exactly one opening number"};
  }
  for (auto [a, b] : cert.pairs) {
    if (a % b != 0 && b % a != 0) {
      return {ValidationRule::Adjacency, "(" + std::to_string(a) + "," + std::to_string(b) + ") is not a divisor pair"};
    }
  }
  const VertexSet kept = strip_trivial(cert.n, table).kept;
  if (covered != kept) {
    std::ostringstream detail;
    const VertexSet missing = kept - covered;
    const VertexSet extra = covered - kept;
    if (missing.any()) {
      detail << "uncovered:";
      missing.for_each([&](int v) { detail << ' ' << v; });
    }
    if (extra.any()) {
      detail << (missing.any() ? "; " : "") << "not in the core:";
      extra.for_each([&](int v) { detail << ' ' << v; });
    }
    return {ValidationRule::Partition, detail.str()};
  }
  if (!cert.excluded.empty()) {
    const std::vector<int> isolated = forced_pairs(cert.n, table).isolated;
    for (int x : cert.excluded) {
      if (std::find(isolated.begin(), isolated.end(), x) == isolated.end()) {
        return {ValidationRule::ExcludedNotIsolated, std::to_string(x) + " keeps a neighbor after the forced pairs"};
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Strategy check

namespace {

std::map<int, int> partner_map(const PairingCertificate& cert) {
  std::map<int, int> partner;
  for (auto [a, b] : cert.pairs) {
    partner[a] = b;
    partner[b] = a;
  }
  return partner;
}

// True when, from p (opponent to move), every number the opponent could ever
// reach has an unused partner. Over-approximates the opponent's reach as a
// least fixpoint: neighbors of the current vertex, then neighbors of the
// partners of anything reachable.
bool closure_is_safe(const DivisorGraph& g, const std::map<int, int>& partner, const Position& p, VertexSet& reach) {
  VertexSet opp(p.n);
  if (p.current) {
    opp = g.neighbor_set(*p.current) & p.remaining;
  } else {
    p.remaining.for_each([&](int v) {
      if (!p.even_rule || v % 2 == 0) opp.set(v);
    });
  }
  VertexSet strat(p.n);
  std::vector<int> stack = opp.to_vector();
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    if (x == 1) {
      const std::optional<int> prime = smallest_remaining_large_prime(p);
      if (!prime) return false;
      strat.set(*prime);
      continue;
    }
    const auto it = partner.find(x);
    if (it == partner.end() || !p.remaining.contains(it->second) || !g.adjacent(x, it->second)) return false;
    const int y = it->second;
    if (strat.contains(y)) continue;
    strat.set(y);
    const VertexSet fresh = (g.neighbor_set(y) & p.remaining) - opp;
    opp |= fresh;
    fresh.for_each([&](int v) { stack.push_back(v); });
  }
  reach |= opp;
  reach |= strat;
  return true;
}

}  // namespace

Policy pairing_policy(const PairingCertificate& cert) {
  return [partner = partner_map(cert)](const Position& p) -> std::optional<int> {
    const int x = *p.current;
    if (x == 1) return smallest_remaining_large_prime(p);
    const auto it = partner.find(x);
    if (it == partner.end()) return std::nullopt;
    return it->second;
  };
}

StrategyCheck verify_pairing_strategy(const PairingCertificate& cert, PairingVerifyOptions options) {
  const DivisorGraph g(cert.n);
  const Policy policy = pairing_policy(cert);
  SimulationOptions sim;
  sim.state_budget = options.state_budget;
  if (options.closure_cut) {
    sim.cut = [&g, partner = partner_map(cert)](const Position& p, VertexSet& reach) {
      return closure_is_safe(g, partner, p, reach);
    };
  }
  if (cert.first_move) {
    const Position start = initial_position(cert.n, true);
    Position opened = start;
    if (!opened.remaining.contains(*cert.first_move)) {
      return Counterexample{{*cert.first_move}, "opening is not on the board"};
    }
    opened.remaining.reset(*cert.first_move);
    opened.current = *cert.first_move;
    return simulate_lines(g, opened, {*cert.first_move}, policy, sim);
  }
  return simulate_lines(g, initial_position(cert.n, true), {}, policy, sim);
}

// ---------------------------------------------------------------------------

ParityPrediction predict_by_parity(int n, const PrimeTable& table) {
  if (n < 4) throw InvalidArgument("parity prediction needs n >= 4");
  ParityPrediction pred;
  pred.n = n;
  const SimplifiedStart start = strip_trivial(n, table);
  pred.removed = start.removed_count;
  pred.core_size = n - pred.removed;
  pred.raw = pred.core_size % 2 == 0 ? Outcome::Loss : Outcome::Win;
  const std::size_t never_played = forced_pairs(n, table).isolated.size();
  pred.exception_applied = never_played % 2 == 1;
  pred.predicted = pred.exception_applied ? flip(pred.raw) : pred.raw;
  pred.applicable = !covered_by_script(n, table);
  return pred;
}

}  // namespace juniper
