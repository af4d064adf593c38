#pragma once

// The equal-area tiling obstruction for an n x n square and the chain of
// successively stronger set conditions that reduce it to rough-number
// counting. Every set is evaluated literally from its defining predicate so
// that each reduction step can be checked as a finite set inclusion.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "mondrian/divisor.hpp"
#include "mondrian/errors.hpp"

namespace mondrian {

inline constexpr double kDefaultEpsilon = 0.1;

// holds == true means: every divisor d < n^2 of n^2 has d * tau2*(d) < n^2,
// so no perfect equal-area tiling of the n x n square can exist.
// When holds is false, `witness` is a failing divisor d of n^2 and
// `cofactor` is n^2 / d.
struct CriterionRecord {
  u64 n = 0;
  bool holds = true;
  std::optional<u64> witness;
  std::optional<u64> cofactor;

  friend bool operator==(const CriterionRecord&, const CriterionRecord&) = default;
};

enum class ChainSetId {
  kDirect,       // for all d < n^2, d | n^2: d * tau2*(d) < n^2
  kDual,         // for all k > 1, k | n^2: tau2*(n^2 / k) < k
  kTau2Relaxed,  // for all k > 1, k | n^2: tau2(n^2 / k) < k
  kTau2Global,   // for all k > 1, k | n^2: tau2(n^2) < k
  kTau2OnN,      // for all k > 1, k | n:   tau2(n^2) < k
  kGEpsCutoff,   // for all k > 1, k | n:   g_eps(n^2) < k
};

inline constexpr std::array<ChainSetId, 6> kAllChainSets{
    ChainSetId::kDirect,     ChainSetId::kDual,    ChainSetId::kTau2Relaxed,
    ChainSetId::kTau2Global, ChainSetId::kTau2OnN, ChainSetId::kGEpsCutoff};

std::string_view to_string(ChainSetId id);
// Accepts the names printed by to_string (DIRECT, DUAL, ...), case-sensitive.
std::optional<ChainSetId> parse_chain_set(std::string_view name);

// Witness is the smallest failing d. 3 <= n <= 3e9.
CriterionRecord criterion_direct(u64 n, const ArithmeticCache* cache = nullptr);

// Same verdict via k = n^2 / d; on failure the smallest failing k is
// reported as `cofactor` (witness = n^2 / k).
CriterionRecord criterion_dual(u64 n, const ArithmeticCache* cache = nullptr);

// g_eps(x) = x^((log 2 + eps) / log log x). Requires x > e and eps > 0.
double g_eps(double x, double epsilon);

// Membership of n in the identified set. Throws std::domain_error when n < 3,
// and std::domain_error for kGEpsCutoff when g_eps(n^2) is undefined.
bool member(ChainSetId id, u64 n, double epsilon = kDefaultEpsilon,
            const ArithmeticCache* cache = nullptr);

// Pointwise divisor bound tau2(n^2) <= g_eps(n^2).
bool divisor_bound_holds(u64 n, double epsilon,
                         const ArithmeticCache* cache = nullptr);

struct ScanOptions {
  double epsilon = kDefaultEpsilon;
  unsigned workers = 1;
  u64 max_span = 50'000'000;  // hi - lo + 1 budget
  const ArithmeticCache* cache = nullptr;
};

struct ScanCount {
  u64 lo = 0;
  u64 hi = 0;
  ChainSetId id = ChainSetId::kDirect;
  u64 members = 0;

  friend bool operator==(const ScanCount&, const ScanCount&) = default;
};

// Number of n in [lo, hi] belonging to the set. lo >= 3. Throws
// BudgetExceeded when the span exceeds options.max_span. Result does not
// depend on the worker count.
ScanCount scan(u64 lo, u64 hi, ChainSetId id, const ScanOptions& options = {});

// Membership bits for every n in [lo, hi] (index n - lo).
std::vector<bool> scan_bits(u64 lo, u64 hi, ChainSetId id,
                            const ScanOptions& options = {});

}  // namespace mondrian
