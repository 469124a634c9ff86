#pragma once

#include <cstdint>
#include <set>
#include <vector>

namespace juniper {

// Prime-in-short-interval bound (Dusart): for real x >= 3275 there is a prime
// in ]x; x(1 + 1/(2 ln^2 x))], and that factor is below 132/131 from 3275 on.
inline constexpr int kDusartThreshold = 3275;
inline constexpr int kDusartRatioNum = 132;
inline constexpr int kDusartRatioDen = 131;

// Past these n the two interval conditions follow from the bound above, so
// only smaller n need an explicit check.
inline constexpr int kTwoPrimeVerifiedFrom = 2 * kDusartThreshold;   // 6550
inline constexpr int kThreePrimeVerifiedFrom = 4 * kDusartThreshold; // 13100

inline constexpr int kDefaultPrimeLimit = 20000;

/// Exact rational bound num/den with den > 0. Interval queries compare by
/// cross-multiplication so boundaries like n/2 or n/3 are never rounded.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// Sieve over [0..limit] with prefix prime counts. Immutable after build.
class PrimeTable {
 public:
  explicit PrimeTable(int limit);

  int limit() const noexcept { return limit_; }
  bool is_prime(int k) const;
  /// pi(k), the number of primes <= k.
  int prime_count(int k) const;

  /// Primes p with lo < p <= hi, ascending.
  std::vector<int> primes_in_interval(Fraction lo_exclusive, Fraction hi_inclusive) const;
  int count_in_interval(Fraction lo_exclusive, Fraction hi_inclusive) const;

  /// Primes in (n/2, n]: the numbers reachable only through 1.
  std::vector<int> large_primes(int n) const;
  /// Primes in (n/4, n/3].
  std::vector<int> third_band_primes(int n) const;

 private:
  void check_range(int k) const;

  int limit_;
  std::vector<std::uint8_t> sieve_;
  std::vector<int> prefix_;
};

PrimeTable build_prime_table(int limit);

struct AppendixBoundsReport {
  /// n in [1, two_prime_checked_up_to] with fewer than two primes in (n/2, n].
  std::set<int> two_prime_exceptions;
  /// n in [1, three_prime_checked_up_to] with fewer than three primes in (n/4, n/3].
  std::set<int> three_prime_exceptions;
  int two_prime_checked_up_to = 0;
  int three_prime_checked_up_to = 0;
  int checked_up_to = 0;
};

/// Scans both prime-existence conditions over every n the table supports
/// (at least up to 6550 and 13100 respectively).
AppendixBoundsReport verify_appendix_bounds(const PrimeTable& table);

}  // namespace juniper
