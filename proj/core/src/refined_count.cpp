#include "mondrian/refined_count.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mondrian/criterion.hpp"
#include "mondrian/primes.hpp"

namespace mondrian {

namespace {

constexpr u64 kRefinedTableCap = 1ULL << 26;

// p^m, or 0 when it would exceed `limit`.
u64 bounded_power(u64 p, u32 m, u64 limit) {
  u64 v = 1;
  for (u32 i = 0; i < m; ++i) {
    if (v > limit / p) return 0;
    v *= p;
  }
  return v;
}

class TupleCounter {
 public:
  TupleCounter(std::shared_ptr<const PrimeList> table, const RefinedOptions& options)
      : table_(std::move(table)), primes_(table_->primes), options_(options) {}

  // Increasing m-tuples drawn from primes_[start..] with product <= rem.
  u64 count(std::size_t start, u32 m, u64 rem) {
    if (++nodes_ > options_.node_budget) {
      throw BudgetExceeded("count_r_term exceeded node budget");
    }
    if (m == 1) {
      const u64 below = pi(rem);
      return below > start ? below - start : 0;
    }
    u64 total = 0;
    for (std::size_t i = start; i < primes_.size(); ++i) {
      const u64 p = primes_[i];
      // Smallest completion is p * p_{i+1} * ... > p^m.
      if (bounded_power(p, m, rem) == 0) break;
      total += count(i + 1, m - 1, rem / p);
    }
    return total;
  }

 private:
  u64 pi(u64 y) {
    if (y <= table_->limit) return table_->pi(y);
    return primes_.size() + count_primes_in(table_->limit + 1, y);
  }

  std::shared_ptr<const PrimeList> table_;
  const std::vector<u32>& primes_;
  RefinedOptions options_;
  u64 nodes_ = 0;
};

}  // namespace

int indicator_T(u64 n, u64 j) { return tau2(n) == j ? 1 : 0; }

int indicator_P(u64 n, double z) { return is_rough(n, z) ? 1 : 0; }

RefinedTermRecord count_r_term(u64 x, u32 r, const RefinedOptions& options) {
  if (x == 0) throw std::domain_error("count_r_term: x must be >= 1");
  if (r == 0) throw std::domain_error("count_r_term: r must be >= 1");
  RefinedTermRecord rec{r, x, 0};
  const u64 floor_prime = bounded_power(3, r, x);
  if (floor_prime == 0) return rec;  // 3^r > x, so no admissible prime fits
  const u64 limit = std::min<u64>(x, kRefinedTableCap);
  const auto table = PrimeTable::shared().covering(std::max<u64>(limit, floor_prime + 1));
  const auto& ps = table->primes;
  const std::size_t start = static_cast<std::size_t>(
      std::upper_bound(ps.begin(), ps.end(), floor_prime) - ps.begin());
  TupleCounter counter(table, options);
  rec.count = counter.count(start, r, x);
  return rec;
}

u32 refined_r_cap(u64 x, double epsilon) {
  if (x < 16) throw std::domain_error("refined_r_cap: x must be >= 16");
  const double xd = static_cast<double>(x);
  const long double g = g_eps(xd * xd, epsilon);
  const long double cap = std::floor(std::log(g) / std::log(3.0L));
  return cap < 0 ? 0 : static_cast<u32>(cap);
}

RefinedTotal refined_total(u64 x, double epsilon, const RefinedOptions& options) {
  RefinedTotal out;
  out.x = x;
  out.epsilon = epsilon;
  out.r_cap = refined_r_cap(x, epsilon);
  for (u32 r = 1; r <= out.r_cap; ++r) {
    out.terms.push_back(count_r_term(x, r, options));
    out.total += out.terms.back().count;
  }
  return out;
}

bool verify_identity_tau_square(u64 n, const ArithmeticCache* cache) {
  const PrimeFactorization f =
      (cache != nullptr && n <= cache->limit()) ? factorize(n, cache) : factorize(n);
  if (!is_squarefree(f)) {
    throw std::domain_error("verify_identity_tau_square: n = " + std::to_string(n) +
                            " is not squarefree");
  }
  const u32 w = omega(f);
  u64 three = 1;
  u64 two = 1;
  for (u32 i = 0; i < w; ++i) {
    three *= 3;
    two *= 2;
  }
  return tau2(f.squared()) == three && tau2(f) == two;
}

}  // namespace mondrian
