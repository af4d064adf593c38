#pragma once

// Squarefree refinement of the rough-number lower bound: the count of n <= x
// that are products of exactly r distinct primes, all exceeding 3^r, summed
// over 1 <= r <= floor(log_3 g_eps(x^2)).

#include <vector>

#include "mondrian/divisor.hpp"
#include "mondrian/errors.hpp"

namespace mondrian {

// 1 iff tau2(n) == j.
int indicator_T(u64 n, u64 j);
// 1 iff every prime factor of n exceeds z.
int indicator_P(u64 n, double z);

struct RefinedTermRecord {
  u32 r = 0;
  u64 x = 0;
  u64 count = 0;

  friend bool operator==(const RefinedTermRecord&, const RefinedTermRecord&) = default;
};

struct RefinedOptions {
  u64 node_budget = 500'000'000;
};

// #{p_1 < ... < p_r : p_1 > 3^r, p_1 * ... * p_r <= x}. x >= 1, r >= 1.
RefinedTermRecord count_r_term(u64 x, u32 r, const RefinedOptions& options = {});

// floor(log_3 g_eps(x^2)); x >= 16.
u32 refined_r_cap(u64 x, double epsilon);

struct RefinedTotal {
  u64 x = 0;
  double epsilon = 0;
  u32 r_cap = 0;
  std::vector<RefinedTermRecord> terms;  // r = 1 .. r_cap
  u64 total = 0;
};

RefinedTotal refined_total(u64 x, double epsilon, const RefinedOptions& options = {});

// For squarefree n with w distinct prime factors: tau2(n^2) == 3^w and
// tau2(n) == 2^w. Throws std::domain_error when n is not squarefree.
bool verify_identity_tau_square(u64 n, const ArithmeticCache* cache = nullptr);

}  // namespace mondrian
