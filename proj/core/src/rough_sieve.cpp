#include "mondrian/rough_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include "mondrian/criterion.hpp"
#include "mondrian/primes.hpp"

namespace mondrian {

namespace {

// Largest prime table the Legendre path builds for pi() leaves.
constexpr u64 kPhiTableCap = 1ULL << 26;
constexpr u32 kWheelPrimes = 6;

// floor(z) clamped to [1, cap]; primes <= z are exactly primes <= floor(z).
u64 prime_floor(double z, u64 cap) {
  if (!(z >= 2.0)) return 1;
  const long double f = std::floor(static_cast<long double>(z));
  if (f >= static_cast<long double>(cap)) return cap;
  return static_cast<u64>(f);
}

void check_x(u64 x) {
  if (x == 0) throw std::domain_error("rough count: x must be >= 1");
  if (x > kMaxSquaredInput) throw std::out_of_range("rough count: x exceeds 3e9");
}

void check_z(double z) {
  if (!(z >= 0.0)) throw std::domain_error("rough count: z must be >= 0");
}

class PhiCounter {
 public:
  PhiCounter(u64 x, const RoughCountOptions& options)
      : options_(options),
        table_(PrimeTable::shared().covering(
            std::max<u64>(isqrt(x) + 1, std::min<u64>(x, kPhiTableCap)))),
        primes_(table_->primes) {
    pi_limit_ = table_->limit;
    u64 m = 1;
    wheels_.resize(kWheelPrimes + 1);
    for (u32 a = 1; a <= kWheelPrimes; ++a) {
      m *= primes_[a - 1];
      Wheel& w = wheels_[a];
      w.modulus = m;
      w.counts.assign(m, 0);
      u64 c = 0;
      for (u64 r = 1; r < m; ++r) {
        bool coprime = true;
        for (u32 i = 0; i < a; ++i) {
          if (r % primes_[i] == 0) {
            coprime = false;
            break;
          }
        }
        if (coprime) ++c;
        w.counts[r] = static_cast<u32>(c);
      }
      w.per_period = c;
    }
  }

  // Number of primes <= y, walking the sieve past the table when needed.
  u64 pi(u64 y) {
    if (y <= pi_limit_) return table_->pi(y);
    if (y - pi_limit_ > options_.sieve_budget) {
      throw BudgetExceeded("prime count window exceeds sieve budget");
    }
    return static_cast<u64>(primes_.size()) + count_primes_in(pi_limit_ + 1, y);
  }

  u64 pi_index_of_floor(u64 zf) {
    return zf < 2 ? 0 : pi(zf);
  }

  u64 phi(u64 y, u64 a) {
    if (a == 0) return y;
    if (y == 0) return 0;
    if (primes_[a - 1] >= y) return 1;
    if (a <= kWheelPrimes) {
      const Wheel& w = wheels_[a];
      return (y / w.modulus) * w.per_period + w.counts[y % w.modulus];
    }
    if (y <= pi_limit_) {
      const u64 next = a < primes_.size() ? primes_[a] : pi_limit_ + 1;
      // No composite <= y survives when p_{a+1}^2 > y.
      if (next > y / next) return 1 + table_->pi(y) - a;
    }
    if (++nodes_ > options_.node_budget) {
      throw BudgetExceeded("Legendre phi exceeded node budget");
    }
    const u64 key = (y << 16) | a;
    const bool memoizable = y < (1ULL << 40) && a < (1u << 16);
    if (memoizable) {
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    // phi(y, a) = phi(y, w) - sum_{w < i <= a} phi(y / p_i, i - 1)
    const u64 w = kWheelPrimes;
    u64 result = phi(y, w);
    for (u64 i = w + 1; i <= a; ++i) {
      const u64 p = primes_[i - 1];
      const u64 q = y / p;
      // From here on p_{i-1} >= y / p_i >= 1, so every remaining term is 1.
      if (primes_[i - 2] >= q) {
        result -= a - i + 1;
        break;
      }
      result -= phi(q, i - 1);
    }
    if (memoizable && memo_.size() < options_.memo_capacity) memo_.emplace(key, result);
    return result;
  }

 private:
  struct Wheel {
    u64 modulus = 1;
    u64 per_period = 0;
    std::vector<u32> counts;
  };

  RoughCountOptions options_;
  std::shared_ptr<const PrimeList> table_;
  const std::vector<u32>& primes_;
  u64 pi_limit_ = 0;
  std::vector<Wheel> wheels_;
  std::unordered_map<u64, u64> memo_;
  u64 nodes_ = 0;
};

}  // namespace

u64 rough_count_phi(u64 x, double z, const RoughCountOptions& options) {
  check_x(x);
  check_z(z);
  const u64 zf = prime_floor(z, x);
  if (zf < 2) return x;
  if (zf >= x) return 1;
  PhiCounter counter(x, options);
  if (zf > isqrt(x)) {
    // Survivors are 1 and the primes in (z, x].
    return 1 + counter.pi(x) - counter.pi(zf);
  }
  return counter.phi(x, counter.pi_index_of_floor(zf));
}

u64 rough_count_sieve(u64 x, double z, const RoughCountOptions& options) {
  check_x(x);
  check_z(z);
  if (x > options.sieve_budget) {
    throw BudgetExceeded("segmented sieve window exceeds sieve budget");
  }
  const u64 zf = prime_floor(z, x);
  if (zf < 2) return x;
  const auto table = PrimeTable::shared().covering(zf);
  const auto end =
      std::upper_bound(table->primes.begin(), table->primes.end(), zf);
  const std::span<const u32> sieving(table->primes.data(),
                                     static_cast<std::size_t>(end - table->primes.begin()));
  u64 count = 0;
  sieve_segments(1, x, sieving, [&](u64, std::span<const char> f) {
    count += static_cast<u64>(std::count(f.begin(), f.end(), 1));
  });
  return count;
}

u64 rough_count_exact(u64 x, double z, const RoughCountOptions& options) {
  if (x <= options.sieve_crossover) return rough_count_sieve(x, z, options);
  return rough_count_phi(x, z, options);
}

long double mertens_product(double z) {
  if (!(z >= 2.0)) throw std::domain_error("mertens_product: z must be >= 2");
  const u64 zf = prime_floor(z, 0xFFFFFFFFULL);
  const auto table = PrimeTable::shared().covering(zf);
  long double prod = 1.0L;
  for (u32 p : table->primes) {
    if (p > zf) break;
    prod *= 1.0L - 1.0L / static_cast<long double>(p);
  }
  return prod;
}

double lemma5_envelope(u64 x, double z) {
  return static_cast<double>(
      std::exp(-std::log(static_cast<long double>(x)) /
               (2.0L * std::log(static_cast<long double>(z)))));
}

Lemma5Estimate lemma5_estimate(u64 x, double z) {
  if (x <= 2) throw std::domain_error("lemma5_estimate: x must be > 2");
  if (!(z > 1.0) || z > static_cast<double>(x)) {
    throw std::domain_error("lemma5_estimate: requires 1 < z <= x");
  }
  const long double prod = z >= 2.0 ? mertens_product(z) : 1.0L;
  return {static_cast<double>(static_cast<long double>(x) * prod),
          lemma5_envelope(x, z)};
}

RoughCountResult rough_count(u64 x, double z, const RoughCountOptions& options) {
  const Lemma5Estimate est = lemma5_estimate(x, z);
  RoughCountResult r;
  r.x = x;
  r.z = z;
  r.exact = rough_count_exact(x, z, options);
  r.mertens_product = z >= 2.0 ? static_cast<double>(mertens_product(z)) : 1.0;
  r.lemma5_estimate = est.estimate;
  r.ratio = static_cast<double>(r.exact) / est.estimate;
  r.envelope = est.envelope;
  return r;
}

BoundConstants BoundConstants::make(double epsilon) {
  if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be > 0");
  BoundConstants c;
  c.epsilon = epsilon;
  c.c_eps = c.recompute();
  return c;
}

double BoundConstants::recompute() const {
  return static_cast<double>(
      1.0L / (std::exp(gamma) * (2.0L * std::numbers::ln2_v<long double> + epsilon)));
}

bool BoundConstants::consistent() const {
  const double fresh = recompute();
  return std::abs(fresh - c_eps) <= 1e-12 * std::abs(fresh);
}

LowerBoundEstimate lower_bound_estimate(u64 x, double epsilon, bool with_companion,
                                        const RoughCountOptions& options) {
  if (x < 16) throw std::domain_error("lower_bound_estimate: x must be >= 16");
  const BoundConstants c = BoundConstants::make(epsilon);
  LowerBoundEstimate out;
  out.x = x;
  out.epsilon = epsilon;
  out.c_eps = c.c_eps;
  const long double lx = std::log(static_cast<long double>(x));
  out.estimate = static_cast<double>(c.c_eps * static_cast<long double>(x) *
                                     std::log(lx) / lx);
  const double xd = static_cast<double>(x);
  out.cutoff = g_eps(xd * xd, epsilon);
  if (with_companion) {
    try {
      out.rough_at_cutoff = rough_count_exact(x, out.cutoff, options);
    } catch (const BudgetExceeded&) {
      out.rough_at_cutoff.reset();
    }
  }
  return out;
}

InclusionCheck check_rough_inclusion(u64 x, double epsilon) {
  if (x < 16) throw std::domain_error("check_rough_inclusion: x must be >= 16");
  if (x > 50'000'000) throw BudgetExceeded("check_rough_inclusion: x above 5e7");
  const ArithmeticCache cache(x);
  InclusionCheck out;
  out.x = x;
  out.epsilon = epsilon;
  const double xd = static_cast<double>(x);
  out.cutoff = g_eps(xd * xd, epsilon);
  std::vector<u64> rough_members;
  u64 last_rough_bound_failure = 0;
  u64 last_bound_failure = 0;
  for (u64 n = 1; n <= x; ++n) {
    const PrimeFactorization f = factorize(n, &cache);
    const bool rough = is_rough(f, out.cutoff);
    if (rough) {
      ++out.rough_count;
      rough_members.push_back(n);
    }
    if (n < 3) continue;
    if (criterion_direct(n, &cache).holds) ++out.criterion_count;
    const double nd = static_cast<double>(n);
    const bool bound = static_cast<double>(tau2(f.squared())) <= g_eps(nd * nd, epsilon);
    if (!bound) {
      last_bound_failure = n;
      if (rough) last_rough_bound_failure = n;
    }
  }
  out.n0_star = std::max<u64>(4, last_rough_bound_failure + 1);
  out.global_bound_floor = std::max<u64>(3, last_bound_failure + 1);
  for (u64 n : rough_members) {
    if (n >= out.n0_star && !criterion_direct(n, &cache).holds) ++out.violations;
  }
  return out;
}

long double reciprocal_prime_sum(u64 x) {
  const auto table = PrimeTable::shared().covering(std::max<u64>(x, 2));
  long double s = 0.0L;
  for (u32 p : table->primes) {
    if (p > x) break;
    s += 1.0L / static_cast<long double>(p);
  }
  return s;
}

}  // namespace mondrian
