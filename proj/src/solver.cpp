#include "juniper/solver.hpp"

#include <algorithm>
#include <unordered_map>

#include "juniper/detail/fixed_bits.hpp"
#include "juniper/detail/reductions.hpp"
#include "juniper/errors.hpp"
#include "juniper/primes.hpp"
#include "juniper/simplify.hpp"

namespace juniper {

namespace {

constexpr std::uint32_t kWinBit = 0x80000000U;
constexpr std::uint32_t kDepthMask = 0xffffU;

struct BudgetExceeded {};

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

template <std::size_t W>
struct Key {
  detail::FixedBits<W> rem;
  int cur = 0;
  friend bool operator==(const Key&, const Key&) = default;
};

template <std::size_t W>
struct KeyHash {
  std::size_t operator()(const Key<W>& k) const noexcept {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(k.cur) + 0x9e3779b97f4a7c15ULL);
    for (auto x : k.rem.w) h = mix64(h ^ x);
    return static_cast<std::size_t>(h);
  }
};

Outcome outcome_of(std::uint32_t packed) { return (packed & kWinBit) != 0 ? Outcome::Win : Outcome::Loss; }
int depth_of(std::uint32_t packed) { return static_cast<int>(packed & kDepthMask); }

}  // namespace

struct Solver::Impl {
  virtual ~Impl() = default;
  virtual std::uint32_t search_child(const Position& p, int move) = 0;
  virtual std::uint32_t search_position(const Position& p) = 0;
  virtual std::size_t memo_size() const = 0;
  virtual std::vector<std::pair<Position, Outcome>> memo_entries(std::size_t limit) const = 0;
  virtual void clear_memo() = 0;

  Impl(const DivisorGraph& g, SolverOptions opts_) : graph(g), n(g.n()), opts(opts_) {}

  void begin_call() {
    stats = {};
    budget_limit = opts.node_budget.value_or(UINT64_MAX);
  }

  DivisorGraph graph;
  int n;
  SolverOptions opts;
  SearchStats stats;
  std::uint64_t budget_limit = UINT64_MAX;
};

namespace {

template <std::size_t W>
class SolverImpl final : public Solver::Impl {
 public:
  using Bits = detail::FixedBits<W>;

  SolverImpl(const DivisorGraph& g, SolverOptions o) : Impl(g, o) {
    adj_.reserve(static_cast<std::size_t>(g.n()) + 1);
    for (const auto& s : g.neighbor_sets()) adj_.push_back(Bits::from(s));
  }

  std::uint32_t search_child(const Position& p, int move) override {
    Bits rem = Bits::from(p.remaining);
    rem.reset(move);
    return search(rem, move);
  }

  std::uint32_t search_position(const Position& p) override {
    const Bits rem = Bits::from(p.remaining);
    if (p.current) return search(rem, *p.current);
    // Opening: no current vertex, so no reduction and no memo entry.
    count_node();
    std::uint32_t best_loss = 0;
    bool found_win = false;
    std::uint32_t win_depth = 0;
    for (int m : order_moves(opening_moves(p), rem)) {
      Bits child = rem;
      child.reset(m);
      const std::uint32_t r = search(child, m);
      if (outcome_of(r) == Outcome::Loss) {
        found_win = true;
        win_depth = static_cast<std::uint32_t>(depth_of(r) + 1);
        break;
      }
      best_loss = std::max(best_loss, static_cast<std::uint32_t>(depth_of(r) + 1));
    }
    return found_win ? (kWinBit | win_depth) : best_loss;
  }

  std::size_t memo_size() const override { return memo_.size(); }

  std::vector<std::pair<Position, Outcome>> memo_entries(std::size_t limit) const override {
    std::vector<std::pair<Position, Outcome>> out;
    for (const auto& [key, value] : memo_) {
      if (out.size() >= limit) break;
      Position p{n, key.rem.to_vertex_set(n), key.cur, false};
      out.emplace_back(std::move(p), outcome_of(value));
    }
    return out;
  }

  void clear_memo() override { memo_.clear(); }

 private:
  void count_node() {
    if (++stats.nodes_expanded > budget_limit) {
      stats.budget_exhausted = true;
      throw BudgetExceeded{};
    }
  }

  Bits opening_moves(const Position& p) const {
    Bits moves = Bits::from(p.remaining);
    if (p.even_rule) {
      for (int v = 1; v <= n; v += 2) moves.reset(v);
    }
    return moves;
  }

  // Lowest remaining degree first; ties by number.
  std::vector<int> order_moves(const Bits& moves, const Bits& rem) const {
    std::vector<std::pair<int, int>> keyed;
    moves.for_each([&](int m) {
      const int deg = opts.move_ordering ? (adj_[static_cast<std::size_t>(m)] & rem).count() : 0;
      keyed.emplace_back(deg, m);
    });
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    out.reserve(keyed.size());
    for (auto [deg, m] : keyed) out.push_back(m);
    return out;
  }

  std::uint32_t search(Bits rem, int cur) {
    count_node();
    // A removed leaf pair stands for two plies that are played or not at no
    // cost to the result; count them so depths stay comparable.
    const int pairs = opts.reductions ? detail::reduce_position(adj_, rem, cur) : 0;
    return with_extra_depth(solve_reduced(rem, cur), 2 * pairs);
  }

  static std::uint32_t with_extra_depth(std::uint32_t r, int extra) {
    const int d = std::min(depth_of(r) + extra, static_cast<int>(kDepthMask));
    return (r & kWinBit) | static_cast<std::uint32_t>(d);
  }

  std::uint32_t solve_reduced(const Bits& rem, int cur) {
    const Bits moves = adj_[static_cast<std::size_t>(cur)] & rem;
    if (moves.none()) return 0;  // stuck: loss in 0 plies

    Key<W> key{rem, cur};
    if (opts.memoize) {
      if (auto it = memo_.find(key); it != memo_.end()) {
        ++stats.memo_hits;
        return it->second;
      }
    }

    std::uint32_t result = 0;
    bool won = false;
    std::uint32_t longest = 0;
    for (int m : order_moves(moves, rem)) {
      Bits child = rem;
      child.reset(m);
      const std::uint32_t r = search(child, m);
      const auto d = static_cast<std::uint32_t>(std::min(depth_of(r) + 1, static_cast<int>(kDepthMask)));
      if (outcome_of(r) == Outcome::Loss) {
        result = kWinBit | d;
        won = true;
        break;
      }
      longest = std::max(longest, d);
    }
    if (!won) result = longest;

    if (opts.memoize) {
      memo_.emplace(key, result);
      ++stats.memo_entries;
    }
    return result;
  }

  std::vector<Bits> adj_;
  std::unordered_map<Key<W>, std::uint32_t, KeyHash<W>> memo_;
};

std::unique_ptr<Solver::Impl> make_impl(const DivisorGraph& g, SolverOptions opts) {
  const int n = g.n();
  if (n < 64) return std::make_unique<SolverImpl<1>>(g, opts);
  if (n < 128) return std::make_unique<SolverImpl<2>>(g, opts);
  if (n < 256) return std::make_unique<SolverImpl<4>>(g, opts);
  if (n < 512) return std::make_unique<SolverImpl<8>>(g, opts);
  throw InvalidArgument("solver supports n < 512");
}

void check_position(const Solver::Impl& impl, const Position& p) {
  if (p.n != impl.n) throw InvalidArgument("position and solver disagree on n");
  if (p.current && p.remaining.contains(*p.current)) {
    throw InvalidArgument("current vertex must not be remaining");
  }
}

}  // namespace

Solver::Solver(int n, SolverOptions options) : Solver(DivisorGraph(n), options) {}

Solver::Solver(const DivisorGraph& graph, SolverOptions options) : impl_(make_impl(graph, options)) {}

Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;
Solver::~Solver() = default;

int Solver::n() const noexcept { return impl_->n; }
const SolverOptions& Solver::options() const noexcept { return impl_->opts; }
void Solver::set_node_budget(std::optional<std::uint64_t> budget) { impl_->opts.node_budget = budget; }

SolveResult Solver::solve(const Position& p) {
  check_position(*impl_, p);
  const auto start = std::chrono::steady_clock::now();
  impl_->begin_call();
  SolveResult result;
  try {
    const std::uint32_t r = impl_->search_position(p);
    result.verdict = outcome_of(r);
    result.depth = depth_of(r);
  } catch (const BudgetExceeded&) {
    result.verdict.reset();
  }
  result.stats = impl_->stats;
  result.stats.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

std::optional<std::vector<MoveEvaluation>> Solver::evaluate_moves(const Position& p) {
  check_position(*impl_, p);
  impl_->begin_call();
  std::vector<MoveEvaluation> out;
  try {
    for (int m : legal_moves(impl_->graph, p)) {
      const std::uint32_t r = impl_->search_child(p, m);
      out.push_back({m, outcome_of(r), depth_of(r)});
    }
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
  return out;
}

std::optional<int> Solver::best_move(const Position& p) {
  const auto evals = evaluate_moves(p);
  if (!evals || evals->empty()) return std::nullopt;
  const MoveEvaluation* best = nullptr;
  for (const auto& e : *evals) {
    if (best == nullptr) {
      best = &e;
      continue;
    }
    const bool e_wins = e.for_opponent == Outcome::Loss;
    const bool best_wins = best->for_opponent == Outcome::Loss;
    if (e_wins != best_wins) {
      if (e_wins) best = &e;
    } else if (e_wins ? e.depth < best->depth : e.depth > best->depth) {
      best = &e;
    }
  }
  return best->move;
}

std::size_t Solver::memo_size() const noexcept { return impl_->memo_size(); }

std::vector<std::pair<Position, Outcome>> Solver::memo_entries(std::size_t limit) const {
  return impl_->memo_entries(limit);
}

void Solver::clear_memo() { impl_->clear_memo(); }

SolveResult solve_position(const DivisorGraph& g, const Position& p, std::optional<std::uint64_t> budget) {
  SolverOptions opts;
  opts.node_budget = budget;
  Solver solver(g, opts);
  return solver.solve(p);
}

SolveResult solve_initial(int n, SolverOptions options) {
  if (n == 1) throw UndefinedGame("JG-1 has no even first move");
  if (n < 1) throw InvalidArgument("n must be at least 1");
  Solver solver(n, options);
  if (n < 4) return solver.solve(initial_position(n, true));
  const PrimeTable table(n);
  Position core = initial_position(n, true);
  core.remaining = strip_trivial(n, table).kept;
  return solver.solve(core);
}

std::optional<int> best_move(const DivisorGraph& g, const Position& p) {
  Solver solver(g);
  return solver.best_move(p);
}

std::vector<int> principal_line(int n) {
  if (n < 2) throw InvalidArgument("principal line needs n >= 2");
  Solver solver(n);
  Position p = initial_position(n, true);
  std::vector<int> line;
  while (auto m = solver.best_move(p)) {
    line.push_back(*m);
    p = apply_move(p, *m);
  }
  return line;
}

}  // namespace juniper
