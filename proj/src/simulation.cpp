#include "juniper/simulation.hpp"

#include <sstream>
#include <unordered_set>

namespace juniper {

namespace {

struct StateKey {
  VertexSet remaining;
  int current = 0;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    return k.remaining.hash() ^ (static_cast<std::size_t>(k.current) * 0x9e3779b97f4a7c15ULL);
  }
};

struct OutOfBudget {};

class Explorer {
 public:
  Explorer(const DivisorGraph& g, const Policy& policy, const SimulationOptions& options)
      : g_(g), policy_(policy), options_(options), played_(g.n()) {}

  StrategyCheck run(const Position& start, std::vector<int> prefix) {
    line_ = std::move(prefix);
    try {
      if (!explore(start)) return failure_;
    } catch (const OutOfBudget&) {
      return BudgetExhausted{states_};
    }
    return Verified{states_, played_};
  }

 private:
  bool explore(const Position& p) {
    StateKey key{p.remaining, p.current.value_or(0)};
    if (done_.contains(key)) return true;
    if (options_.state_budget && states_ >= *options_.state_budget) throw OutOfBudget{};
    ++states_;
    if (options_.cut && options_.cut(p, played_)) {
      done_.insert(std::move(key));
      return true;
    }

    for (int m : legal_moves(g_, p)) {
      line_.push_back(m);
      played_.set(m);
      const Position after = apply_move(p, m);
      const std::optional<int> reply = policy_(after);
      if (!reply) return fail("no reply defined after " + std::to_string(m));
      if (!is_legal_move(after, *reply)) return fail("reply " + std::to_string(*reply) + " is illegal");
      line_.push_back(*reply);
      played_.set(*reply);
      if (!explore(apply_move(after, *reply))) return false;
      line_.pop_back();
      line_.pop_back();
    }
    done_.insert(std::move(key));
    return true;
  }

  bool fail(std::string reason) {
    failure_ = Counterexample{line_, std::move(reason)};
    return false;
  }

  const DivisorGraph& g_;
  const Policy& policy_;
  const SimulationOptions& options_;
  std::unordered_set<StateKey, StateKeyHash> done_;
  std::vector<int> line_;
  std::uint64_t states_ = 0;
  VertexSet played_;
  Counterexample failure_;
};

}  // namespace

std::string describe(const StrategyCheck& c) {
  std::ostringstream out;
  if (const auto* v = std::get_if<Verified>(&c)) {
    out << "Verified (" << v->states << " states)";
  } else if (const auto* ce = std::get_if<Counterexample>(&c)) {
    out << "Counterexample:";
    for (int m : ce->line) out << ' ' << m;
    out << " (" << ce->reason << ')';
  } else {
    out << "BudgetExhausted (" << std::get<BudgetExhausted>(c).states << " states)";
  }
  return out.str();
}

StrategyCheck simulate_lines(const DivisorGraph& g, const Position& start, std::vector<int> prefix,
                             const Policy& policy, const SimulationOptions& options) {
  Explorer explorer(g, policy, options);
  return explorer.run(start, std::move(prefix));
}

namespace {

void collect_lines(const DivisorGraph& g, const Position& p, std::vector<int>& line, const Policy& policy,
                   std::size_t max_lines, std::vector<std::vector<int>>& out) {
  if (out.size() >= max_lines) return;
  bool extended = false;
  for (int m : legal_moves(g, p)) {
    if (m == 1) continue;
    const Position after = apply_move(p, m);
    const std::optional<int> reply = policy(after);
    line.push_back(m);
    if (reply && is_legal_move(after, *reply)) {
      line.push_back(*reply);
      collect_lines(g, apply_move(after, *reply), line, policy, max_lines, out);
      line.pop_back();
    } else if (out.size() < max_lines) {
      out.push_back(line);
    }
    line.pop_back();
    extended = true;
  }
  if (!extended && out.size() < max_lines) out.push_back(line);
}

}  // namespace

std::vector<std::vector<int>> principal_lines(const DivisorGraph& g, const Position& start, std::vector<int> prefix,
                                              const Policy& policy, std::size_t max_lines) {
  std::vector<std::vector<int>> out;
  collect_lines(g, start, prefix, policy, max_lines, out);
  return out;
}

std::optional<int> smallest_remaining_large_prime(const Position& p) {
  for (int v = p.n / 2 + 1; v <= p.n; ++v) {
    if (!p.remaining.contains(v) || v < 2) continue;
    bool prime = true;
    for (int d = 2; d * d <= v; ++d) {
      if (v % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) return v;
  }
  return std::nullopt;
}

}  // namespace juniper
