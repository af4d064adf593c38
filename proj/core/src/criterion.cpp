#include "mondrian/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace mondrian {

namespace {

void require_criterion_domain(u64 n) {
  if (n < 3) throw std::domain_error("criterion: n must be >= 3");
  if (n > kMaxSquaredInput) {
    throw std::out_of_range("criterion: n = " + std::to_string(n) +
                            " exceeds 3e9, n^2 would overflow");
  }
}

PrimeFactorization factor_with(u64 n, const ArithmeticCache* cache) {
  if (cache != nullptr && n <= cache->limit()) return factorize(n, cache);
  return factorize(n);
}

// Divisor d of N together with the divisor counts of d and N / d.
struct DivisorPair {
  u64 d;
  u64 tau_d;
  bool square_d;
  u64 tau_co;
  bool square_co;
};

// Visits every divisor of the number whose factorization is `f` (odometer
// over the exponent vector). visit returning false stops the walk.
template <typename Visit>
void for_each_divisor(const PrimeFactorization& f, Visit&& visit) {
  const std::size_t w = f.factors.size();
  std::array<u32, 16> exps{};
  u64 d = 1;
  for (;;) {
    DivisorPair dp{d, 1, true, 1, true};
    for (std::size_t i = 0; i < w; ++i) {
      const u32 e = exps[i];
      const u32 c = f.factors[i].exponent - e;
      dp.tau_d *= e + 1;
      dp.tau_co *= c + 1;
      dp.square_d = dp.square_d && (e % 2 == 0);
      dp.square_co = dp.square_co && (c % 2 == 0);
    }
    if (!visit(dp)) return;
    std::size_t i = 0;
    for (; i < w; ++i) {
      if (exps[i] < f.factors[i].exponent) {
        ++exps[i];
        d *= f.factors[i].prime;
        break;
      }
      for (u32 e = 0; e < exps[i]; ++e) d /= f.factors[i].prime;
      exps[i] = 0;
    }
    if (i == w) return;
  }
}

inline u64 star(u64 tau, bool square) { return (tau + (square ? 1 : 0)) / 2; }

}  // namespace

std::string_view to_string(ChainSetId id) {
  switch (id) {
    case ChainSetId::kDirect: return "DIRECT";
    case ChainSetId::kDual: return "DUAL";
    case ChainSetId::kTau2Relaxed: return "TAU2_RELAXED";
    case ChainSetId::kTau2Global: return "TAU2_GLOBAL";
    case ChainSetId::kTau2OnN: return "TAU2_ON_N";
    case ChainSetId::kGEpsCutoff: return "G_EPS_CUTOFF";
  }
  return "?";
}

std::optional<ChainSetId> parse_chain_set(std::string_view name) {
  for (ChainSetId id : kAllChainSets) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

CriterionRecord criterion_direct(u64 n, const ArithmeticCache* cache) {
  require_criterion_domain(n);
  const PrimeFactorization sq = factor_with(n, cache).squared();
  const u64 area = sq.value;
  CriterionRecord rec{n, true, std::nullopt, std::nullopt};
  u64 best = area;
  for_each_divisor(sq, [&](const DivisorPair& p) {
    if (p.d == area) return true;
    // d * tau2*(d) >= n^2  <=>  tau2*(d) >= n^2 / d, the quotient being exact.
    if (star(p.tau_d, p.square_d) >= area / p.d) best = std::min(best, p.d);
    return true;
  });
  if (best < area) {
    rec.holds = false;
    rec.witness = best;
    rec.cofactor = area / best;
  }
  return rec;
}

CriterionRecord criterion_dual(u64 n, const ArithmeticCache* cache) {
  require_criterion_domain(n);
  const PrimeFactorization sq = factor_with(n, cache).squared();
  const u64 area = sq.value;
  CriterionRecord rec{n, true, std::nullopt, std::nullopt};
  u64 best = 0;
  for_each_divisor(sq, [&](const DivisorPair& p) {
    const u64 k = p.d;
    if (k == 1) return true;
    if (star(p.tau_co, p.square_co) >= k && (best == 0 || k < best)) best = k;
    return true;
  });
  if (best != 0) {
    rec.holds = false;
    rec.cofactor = best;
    rec.witness = area / best;
  }
  return rec;
}

double g_eps(double x, double epsilon) {
  if (!(epsilon > 0.0)) throw std::domain_error("g_eps: epsilon must be > 0");
  const long double lx = std::log(static_cast<long double>(x));
  if (!(lx > 1.0L)) {
    throw std::domain_error("g_eps: requires x > e so that log log x > 0");
  }
  const long double expo =
      (std::numbers::ln2_v<long double> + epsilon) / std::log(lx);
  return static_cast<double>(std::exp(lx * expo));
}

bool divisor_bound_holds(u64 n, double epsilon, const ArithmeticCache* cache) {
  require_criterion_domain(n);
  const u64 t = tau2(factor_with(n, cache).squared());
  return static_cast<double>(t) <=
         g_eps(static_cast<double>(n) * static_cast<double>(n), epsilon);
}

bool member(ChainSetId id, u64 n, double epsilon, const ArithmeticCache* cache) {
  switch (id) {
    case ChainSetId::kDirect: return criterion_direct(n, cache).holds;
    case ChainSetId::kDual: return criterion_dual(n, cache).holds;
    default: break;
  }
  require_criterion_domain(n);
  const PrimeFactorization f = factor_with(n, cache);
  const PrimeFactorization sq = f.squared();
  const u64 tau_sq = tau2(sq);
  bool ok = true;
  switch (id) {
    case ChainSetId::kTau2Relaxed:
      for_each_divisor(sq, [&](const DivisorPair& p) {
        if (p.d > 1 && p.tau_co >= p.d) ok = false;
        return ok;
      });
      break;
    case ChainSetId::kTau2Global:
      for_each_divisor(sq, [&](const DivisorPair& p) {
        if (p.d > 1 && tau_sq >= p.d) ok = false;
        return ok;
      });
      break;
    case ChainSetId::kTau2OnN:
      for_each_divisor(f, [&](const DivisorPair& p) {
        if (p.d > 1 && tau_sq >= p.d) ok = false;
        return ok;
      });
      break;
    case ChainSetId::kGEpsCutoff: {
      const double bound =
          g_eps(static_cast<double>(n) * static_cast<double>(n), epsilon);
      for_each_divisor(f, [&](const DivisorPair& p) {
        if (p.d > 1 && !(bound < static_cast<double>(p.d))) ok = false;
        return ok;
      });
      break;
    }
    default: break;
  }
  return ok;
}

std::vector<bool> scan_bits(u64 lo, u64 hi, ChainSetId id,
                            const ScanOptions& options) {
  if (lo < 3) throw std::domain_error("scan: lo must be >= 3");
  if (hi < lo) throw std::domain_error("scan: hi must be >= lo");
  if (hi > kMaxSquaredInput) throw std::out_of_range("scan: hi exceeds 3e9");
  const u64 span = hi - lo + 1;
  if (span > options.max_span) {
    throw BudgetExceeded("scan: span " + std::to_string(span) +
                         " exceeds budget " + std::to_string(options.max_span));
  }
  // vector<bool> packs bits, so each worker fills a private byte buffer.
  std::vector<char> bytes(static_cast<std::size_t>(span), 0);
  const unsigned workers =
      static_cast<unsigned>(std::clamp<u64>(options.workers, 1, span));
  auto run = [&](u64 a, u64 b) {
    for (u64 n = a; n <= b; ++n) {
      bytes[n - lo] = member(id, n, options.epsilon, options.cache) ? 1 : 0;
    }
  };
  if (workers == 1) {
    run(lo, hi);
  } else {
    std::vector<std::thread> pool;
    const u64 chunk = (span + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const u64 a = lo + w * chunk;
      if (a > hi) break;
      const u64 b = std::min(hi, a + chunk - 1);
      pool.emplace_back(run, a, b);
    }
    for (auto& t : pool) t.join();
  }
  return std::vector<bool>(bytes.begin(), bytes.end());
}

ScanCount scan(u64 lo, u64 hi, ChainSetId id, const ScanOptions& options) {
  const auto bits = scan_bits(lo, hi, id, options);
  ScanCount out{lo, hi, id, 0};
  out.members = static_cast<u64>(std::count(bits.begin(), bits.end(), true));
  return out;
}

}  // namespace mondrian
