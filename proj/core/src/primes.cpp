#include "mondrian/primes.hpp"

#include <algorithm>
#include <stdexcept>

namespace mondrian {

namespace {

std::vector<u32> small_sieve(u64 limit) {
  std::vector<char> composite(limit + 1, 0);
  std::vector<u32> out;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<u32>(i));
    for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

}  // namespace

void sieve_segments(u64 lo_bound, u64 hi, std::span<const u32> sieving_primes,
                    const std::function<void(u64, std::span<const char>)>& visit,
                    std::size_t segment_size) {
  if (lo_bound == 0) throw std::domain_error("sieve_segments: lo must be >= 1");
  if (hi < lo_bound) return;
  std::vector<char> flags(segment_size);
  for (u64 lo = lo_bound;; lo += segment_size) {
    const u64 top = std::min<u64>(hi, lo + segment_size - 1);
    const std::size_t len = static_cast<std::size_t>(top - lo + 1);
    std::fill(flags.begin(), flags.begin() + static_cast<std::ptrdiff_t>(len), 1);
    for (u32 p : sieving_primes) {
      u64 first = (lo + p - 1) / p * p;
      for (u64 m = first; m <= top; m += p) flags[m - lo] = 0;
    }
    visit(lo, std::span<const char>(flags.data(), len));
    if (top == hi) break;
  }
}

std::vector<u32> primes_up_to(u64 limit) {
  if (limit > 0xFFFFFFFFULL) {
    throw std::out_of_range("primes_up_to: limit must fit in 32 bits");
  }
  if (limit < 2) return {};
  const u64 root = isqrt(limit);
  std::vector<u32> out = small_sieve(root);
  const std::vector<u32> base = out;
  sieve_segments(root + 1, limit, base, [&](u64 lo, std::span<const char> f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i]) out.push_back(static_cast<u32>(lo + i));
    }
  });
  return out;
}

u64 count_primes_in(u64 lo, u64 hi) {
  lo = std::max<u64>(lo, 2);
  if (hi < lo) return 0;
  const u64 root = isqrt(hi);
  const std::vector<u32> base = small_sieve(root);
  u64 count = 0;
  // Sieving primes inside the window are cleared by the sieve; add them back.
  for (u32 p : base) {
    if (p >= lo && p <= hi) ++count;
  }
  sieve_segments(lo, hi, base, [&](u64, std::span<const char> f) {
    count += static_cast<u64>(std::count(f.begin(), f.end(), 1));
  });
  return count;
}

u64 PrimeList::pi(u64 y) const {
  if (y > limit) throw std::out_of_range("PrimeList::pi: beyond table limit");
  return static_cast<u64>(
      std::upper_bound(primes.begin(), primes.end(), y) - primes.begin());
}

PrimeTable& PrimeTable::shared() {
  static PrimeTable table;
  return table;
}

std::shared_ptr<const PrimeList> PrimeTable::covering(u64 limit) {
  std::lock_guard lock(mutex_);
  if (current_ && current_->limit >= limit) return current_;
  // Grow geometrically so a sequence of slightly larger requests stays cheap.
  u64 target = std::max<u64>(limit, 1u << 16);
  if (current_) target = std::max(target, std::min<u64>(2 * current_->limit, 0xFFFFFFFFULL));
  auto next = std::make_shared<PrimeList>();
  next->limit = target;
  next->primes = primes_up_to(target);
  current_ = std::move(next);
  return current_;
}

}  // namespace mondrian
