#pragma once

// Counting z-rough integers F(x, z) = #{n <= x : every prime factor of n
// exceeds z}, with n = 1 counted vacuously, plus the Mertens product and the
// sieve main term it is compared against.

#include <optional>

#include "mondrian/divisor.hpp"
#include "mondrian/errors.hpp"

namespace mondrian {

// Euler-Mascheroni constant, 30 significant digits.
inline constexpr long double kEulerGamma = 0.577215664901532860606512090082L;

struct RoughCountOptions {
  // Legendre recursion nodes before BudgetExceeded.
  u64 node_budget = 400'000'000;
  // Memoized (y, a) entries for the Legendre recursion; inserts stop when full.
  std::size_t memo_capacity = 1u << 22;
  // rough_count_exact uses the segmented sieve for x at or below this.
  u64 sieve_crossover = 1u << 16;
  // Largest window the segmented sieve (or a prime count) may walk.
  u64 sieve_budget = 4'000'000'000ULL;
};

// Legendre recurrence phi(x, a) = phi(x, a-1) - phi(x / p_a, a-1).
u64 rough_count_phi(u64 x, double z, const RoughCountOptions& options = {});

// Segmented sieve of [1, x] by every prime <= z.
u64 rough_count_sieve(u64 x, double z, const RoughCountOptions& options = {});

// 1 <= x <= 3e9, z >= 0.
u64 rough_count_exact(u64 x, double z, const RoughCountOptions& options = {});

// prod_{p <= z} (1 - 1/p) over primes enumerated exactly; z >= 2.
long double mertens_product(double z);

// e^{-log x / (2 log z)}: the relative size of the sieve error term.
double lemma5_envelope(u64 x, double z);

struct Lemma5Estimate {
  double estimate = 0;  // x * prod_{p <= z} (1 - 1/p)
  double envelope = 0;
};

// x > 2, 1 < z <= x.
Lemma5Estimate lemma5_estimate(u64 x, double z);

struct RoughCountResult {
  u64 x = 0;
  double z = 0;
  u64 exact = 0;
  double mertens_product = 1;
  double lemma5_estimate = 0;
  double ratio = 0;  // exact / lemma5_estimate
  double envelope = 0;
};

// Exact count together with the main-term comparison; lemma5 domain applies.
RoughCountResult rough_count(u64 x, double z, const RoughCountOptions& options = {});

struct BoundConstants {
  long double gamma = kEulerGamma;
  double epsilon = 0.1;
  double c_eps = 0;

  // c_eps = 1 / (e^gamma (2 log 2 + epsilon)).
  static BoundConstants make(double epsilon);
  double recompute() const;
  bool consistent() const;
};

struct LowerBoundEstimate {
  u64 x = 0;
  double epsilon = 0;
  double c_eps = 0;
  double estimate = 0;  // c_eps * x * log log x / log x
  double cutoff = 0;    // g_eps(x^2)
  std::optional<u64> rough_at_cutoff;  // F(x, g_eps(x^2)) when computed
};

// x >= 16. The companion exact count is attempted when with_companion is
// set; a budget overrun leaves it empty rather than throwing.
LowerBoundEstimate lower_bound_estimate(u64 x, double epsilon,
                                        bool with_companion = false,
                                        const RoughCountOptions& options = {});

// The rough set at cutoff g_eps(x^2) against the criterion set on [1, x].
// n0_star is the least n0 >= 4 such that every rough n in [n0, x] satisfies
// tau2(n^2) <= g_eps(n^2); rough members from n0_star on must all satisfy
// the criterion, which gives criterion_count >= rough_count - n0_star.
struct InclusionCheck {
  u64 x = 0;
  double epsilon = 0;
  double cutoff = 0;
  u64 rough_count = 0;      // F(x, cutoff), n = 1 included
  u64 criterion_count = 0;  // #{3 <= n <= x : criterion holds}
  u64 n0_star = 4;
  u64 violations = 0;       // rough n >= n0_star where the criterion fails
  // Least n0 >= 3 with the divisor bound holding on all of [n0, x].
  u64 global_bound_floor = 3;

  bool inclusion_holds() const {
    return violations == 0 && criterion_count + n0_star >= rough_count;
  }
};

// 16 <= x <= 5e7.
InclusionCheck check_rough_inclusion(u64 x, double epsilon);

// sum_{p <= x} 1/p, for comparison with log log x.
long double reciprocal_prime_sum(u64 x);

}  // namespace mondrian
