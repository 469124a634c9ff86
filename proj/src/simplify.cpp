#include "juniper/simplify.hpp"

#include "juniper/detail/reductions.hpp"
#include "juniper/errors.hpp"

namespace juniper {

SimplifiedStart strip_trivial(int n, const PrimeTable& table) {
  if (n < 2) throw NotApplicable("nothing to strip for n < 2");
  SimplifiedStart s;
  s.n = n;
  s.stripped_primes = table.large_primes(n);
  s.kept = VertexSet::interval(n, 2, n);
  for (int p : s.stripped_primes) s.kept.reset(p);
  s.stripped_one = true;
  s.removed_count = 1 + static_cast<int>(s.stripped_primes.size());
  return s;
}

namespace {

void require_current(const DivisorGraph& g, const Position& p) {
  if (!p.current) throw NotApplicable("position has no current vertex");
  if (g.n() != p.n) throw InvalidArgument("position and graph disagree on n");
}

}  // namespace

Position prune_unreachable(const DivisorGraph& g, const Position& p) {
  require_current(g, p);
  Position out = p;
  out.remaining = detail::reachable_from(g.neighbor_sets(), p.remaining, *p.current);
  return out;
}

Position prune_pendant_pairs(const DivisorGraph& g, const Position& p) {
  require_current(g, p);
  Position out = p;
  detail::remove_pendant_pairs(g.neighbor_sets(), out.remaining, *p.current);
  return out;
}

Position reduce(const DivisorGraph& g, const Position& p) {
  require_current(g, p);
  Position out = p;
  detail::reduce_position(g.neighbor_sets(), out.remaining, *p.current);
  return out;
}

}  // namespace juniper
