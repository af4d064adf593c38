#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "mondrian/divisor.hpp"

namespace mondrian {

inline constexpr std::size_t kSegmentBytes = 1u << 18;

// Primes <= limit by segmented sieve of Eratosthenes. limit < 2^32.
std::vector<u32> primes_up_to(u64 limit);

// Calls visit(lo, flags) for consecutive segments covering [lo_bound, hi],
// lo_bound >= 1. flags[i] != 0 iff lo + i is divisible by none of
// `sieving_primes`.
void sieve_segments(u64 lo_bound, u64 hi, std::span<const u32> sieving_primes,
                    const std::function<void(u64, std::span<const char>)>& visit,
                    std::size_t segment_size = kSegmentBytes);

// pi(hi) - pi(lo - 1): number of primes in [lo, hi].
u64 count_primes_in(u64 lo, u64 hi);

// An immutable list of every prime <= limit, with pi() lookup.
struct PrimeList {
  u64 limit = 1;
  std::vector<u32> primes;

  // Number of primes <= y; requires y <= limit.
  u64 pi(u64 y) const;
};

// Process-wide prime list that grows on demand. Snapshots are immutable and
// stay valid after later growth, so readers never block on extension.
class PrimeTable {
 public:
  static PrimeTable& shared();

  // A list whose limit is at least `limit` (limit < 2^32).
  std::shared_ptr<const PrimeList> covering(u64 limit);

 private:
  PrimeTable() = default;

  std::mutex mutex_;
  std::shared_ptr<const PrimeList> current_;
};

}  // namespace mondrian
