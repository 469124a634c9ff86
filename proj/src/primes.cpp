#include "juniper/primes.hpp"

#include <string>

#include "juniper/errors.hpp"

namespace juniper {

PrimeTable::PrimeTable(int limit) : limit_(limit) {
  if (limit < 2) throw InvalidArgument("prime table limit must be at least 2");
  sieve_.assign(static_cast<std::size_t>(limit) + 1, 1);
  sieve_[0] = sieve_[1] = 0;
  for (int i = 2; static_cast<std::int64_t>(i) * i <= limit; ++i) {
    if (!sieve_[static_cast<std::size_t>(i)]) continue;
    for (int j = i * i; j <= limit; j += i) sieve_[static_cast<std::size_t>(j)] = 0;
  }
  prefix_.assign(static_cast<std::size_t>(limit) + 1, 0);
  int running = 0;
  for (int k = 0; k <= limit; ++k) {
    running += sieve_[static_cast<std::size_t>(k)];
    prefix_[static_cast<std::size_t>(k)] = running;
  }
}

void PrimeTable::check_range(int k) const {
  if (k > limit_) {
    throw TableTooSmall("prime table limit " + std::to_string(limit_) + " is below " + std::to_string(k));
  }
}

bool PrimeTable::is_prime(int k) const {
  if (k < 2) return false;
  check_range(k);
  return sieve_[static_cast<std::size_t>(k)] != 0;
}

int PrimeTable::prime_count(int k) const {
  if (k < 2) return 0;
  check_range(k);
  return prefix_[static_cast<std::size_t>(k)];
}

namespace {

// Largest integer <= f, and smallest integer strictly above f.
std::int64_t floor_of(Fraction f) {
  std::int64_t q = f.num / f.den;
  if ((f.num % f.den != 0) && (f.num < 0)) --q;
  return q;
}

}  // namespace

int PrimeTable::count_in_interval(Fraction lo, Fraction hi) const {
  if (lo.den <= 0 || hi.den <= 0) throw InvalidArgument("fraction denominators must be positive");
  const std::int64_t top = floor_of(hi);
  check_range(static_cast<int>(top));
  const std::int64_t bottom = floor_of(lo);  // p > lo  <=>  p > floor(lo)
  if (top <= bottom) return 0;
  return prime_count(static_cast<int>(top)) - prime_count(static_cast<int>(std::max<std::int64_t>(bottom, 0)));
}

std::vector<int> PrimeTable::primes_in_interval(Fraction lo, Fraction hi) const {
  if (lo.den <= 0 || hi.den <= 0) throw InvalidArgument("fraction denominators must be positive");
  const std::int64_t top = floor_of(hi);
  check_range(static_cast<int>(top));
  std::vector<int> out;
  for (std::int64_t p = std::max<std::int64_t>(floor_of(lo) + 1, 2); p <= top; ++p) {
    // Cross-multiplied form of lo < p <= hi.
    if (p * lo.den > lo.num && p * hi.den <= hi.num && sieve_[static_cast<std::size_t>(p)]) {
      out.push_back(static_cast<int>(p));
    }
  }
  return out;
}

std::vector<int> PrimeTable::large_primes(int n) const { return primes_in_interval({n, 2}, {n, 1}); }

std::vector<int> PrimeTable::third_band_primes(int n) const { return primes_in_interval({n, 4}, {n, 3}); }

PrimeTable build_prime_table(int limit) { return PrimeTable(limit); }

AppendixBoundsReport verify_appendix_bounds(const PrimeTable& table) {
  if (table.limit() < kThreePrimeVerifiedFrom) {
    throw TableTooSmall("interval bounds need a prime table up to " + std::to_string(kThreePrimeVerifiedFrom));
  }
  AppendixBoundsReport report;
  report.checked_up_to = table.limit();
  report.two_prime_checked_up_to = table.limit();
  report.three_prime_checked_up_to = table.limit();
  for (int n = 1; n <= table.limit(); ++n) {
    if (table.count_in_interval({n, 2}, {n, 1}) < 2) report.two_prime_exceptions.insert(n);
    if (table.count_in_interval({n, 4}, {n, 3}) < 3) report.three_prime_exceptions.insert(n);
  }
  return report;
}

}  // namespace juniper
