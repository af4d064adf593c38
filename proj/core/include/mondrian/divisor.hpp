#pragma once

// Exact arithmetic functions on 64-bit unsigned integers: factorization,
// divisor counts, square / squarefree indicators and divisor lists.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace mondrian {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

// Largest n accepted by operations that form n*n internally.
inline constexpr u64 kMaxSquaredInput = 3'000'000'000ULL;

// Default size of the smallest-prime-factor table used for bulk scans.
inline constexpr u64 kDefaultCacheLimit = 10'000'000ULL;

struct PrimePower {
  u64 prime;
  u32 exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// value == product of prime^exponent over `factors`, primes strictly
// increasing, every exponent >= 1. value == 1 iff factors is empty.
struct PrimeFactorization {
  u64 value = 1;
  std::vector<PrimePower> factors;

  // Same primes with doubled exponents; value becomes value^2.
  // Requires value <= kMaxSquaredInput.
  PrimeFactorization squared() const;

  friend bool operator==(const PrimeFactorization&,
                         const PrimeFactorization&) = default;
};

// Smallest-prime-factor table for 2..limit, built by a linear sieve.
// Immutable after construction; safe to share between threads.
class ArithmeticCache {
 public:
  explicit ArithmeticCache(u64 limit = kDefaultCacheLimit);

  u64 limit() const { return limit_; }

  // Least prime dividing k, 2 <= k <= limit.
  u64 smallest_prime_factor(u64 k) const;

  // Primes <= limit in increasing order (by-product of the linear sieve).
  std::span<const u32> primes() const { return primes_; }

 private:
  u64 limit_;
  std::vector<u32> spf_;
  std::vector<u32> primes_;
};

// Throws std::domain_error for n == 0 and std::out_of_range when a cache is
// given but n exceeds its limit.
PrimeFactorization factorize(u64 n, const ArithmeticCache* cache = nullptr);

u64 tau2(const PrimeFactorization& f);
u64 tau2(u64 n);

// Number of unordered pairs {a, b} with a*b == n: (tau2 + s) / 2.
u64 tau2_star(const PrimeFactorization& f);
u64 tau2_star(u64 n);

bool is_square(u64 n);
bool is_square(const PrimeFactorization& f);
bool is_squarefree(u64 n);
bool is_squarefree(const PrimeFactorization& f);

// Number of distinct prime factors.
inline u32 omega(const PrimeFactorization& f) {
  return static_cast<u32>(f.factors.size());
}

// All divisors in strictly increasing order.
std::vector<u64> divisors(const PrimeFactorization& f);
std::vector<u64> divisors(u64 n);

// D(n): the least divisor of n exceeding 1. Always prime. n >= 2.
u64 smallest_nonunit_divisor(u64 n, const ArithmeticCache* cache = nullptr);

// True iff every prime factor of n exceeds z (n == 1 vacuously rough).
bool is_rough(const PrimeFactorization& f, double z);
bool is_rough(u64 n, double z);

u64 isqrt(u64 n);

}  // namespace mondrian
