#include "mondrian/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mondrian {

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

PrimeFactorization PrimeFactorization::squared() const {
  if (value > kMaxSquaredInput) {
    throw std::out_of_range("squared factorization: value " +
                            std::to_string(value) + " exceeds 3e9");
  }
  PrimeFactorization out;
  out.value = value * value;
  out.factors = factors;
  for (auto& pp : out.factors) pp.exponent *= 2;
  return out;
}

ArithmeticCache::ArithmeticCache(u64 limit) : limit_(std::max<u64>(limit, 2)) {
  if (limit_ > 0xFFFFFFFFULL) {
    throw std::out_of_range("ArithmeticCache limit must fit in 32 bits");
  }
  spf_.assign(limit_ + 1, 0);
  for (u64 i = 2; i <= limit_; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<u32>(i);
      primes_.push_back(static_cast<u32>(i));
    }
    const u64 si = spf_[i];
    for (u32 p : primes_) {
      if (p > si || static_cast<u64>(p) * i > limit_) break;
      spf_[p * i] = p;
    }
  }
}

u64 ArithmeticCache::smallest_prime_factor(u64 k) const {
  if (k < 2 || k > limit_) {
    throw std::out_of_range("smallest_prime_factor: argument outside cache");
  }
  return spf_[k];
}

PrimeFactorization factorize(u64 n, const ArithmeticCache* cache) {
  if (n == 0) throw std::domain_error("factorize: n must be positive");
  PrimeFactorization f;
  f.value = n;
  if (cache != nullptr) {
    if (n > cache->limit()) {
      throw std::out_of_range("factorize: n exceeds cache limit");
    }
    while (n > 1) {
      const u64 p = cache->smallest_prime_factor(n);
      u32 e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.factors.push_back({p, e});
    }
    return f;
  }
  auto strip = [&](u64 p) {
    u32 e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) f.factors.push_back({p, e});
  };
  strip(2);
  strip(3);
  // 6k +- 1 wheel
  for (u64 p = 5; p <= n / p; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) f.factors.push_back({n, 1});
  return f;
}

u64 tau2(const PrimeFactorization& f) {
  u64 t = 1;
  for (const auto& pp : f.factors) t *= pp.exponent + 1;
  return t;
}

u64 tau2(u64 n) { return tau2(factorize(n)); }

bool is_square(const PrimeFactorization& f) {
  return std::all_of(f.factors.begin(), f.factors.end(),
                     [](const PrimePower& pp) { return pp.exponent % 2 == 0; });
}

bool is_square(u64 n) {
  const u64 r = isqrt(n);
  return r * r == n;
}

bool is_squarefree(const PrimeFactorization& f) {
  return std::all_of(f.factors.begin(), f.factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

bool is_squarefree(u64 n) { return is_squarefree(factorize(n)); }

u64 tau2_star(const PrimeFactorization& f) {
  return (tau2(f) + (is_square(f) ? 1 : 0)) / 2;
}

u64 tau2_star(u64 n) { return tau2_star(factorize(n)); }

std::vector<u64> divisors(const PrimeFactorization& f) {
  std::vector<u64> out{1};
  out.reserve(tau2(f));
  for (const auto& pp : f.factors) {
    const std::size_t base = out.size();
    u64 power = 1;
    for (u32 e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

u64 smallest_nonunit_divisor(u64 n, const ArithmeticCache* cache) {
  if (n < 2) {
    throw std::domain_error("smallest_nonunit_divisor: n must be >= 2");
  }
  if (cache != nullptr && n <= cache->limit()) {
    return cache->smallest_prime_factor(n);
  }
  if (n % 2 == 0) return 2;
  for (u64 p = 3; p <= n / p; p += 2) {
    if (n % p == 0) return p;
  }
  return n;
}

bool is_rough(const PrimeFactorization& f, double z) {
  return f.factors.empty() ||
         static_cast<long double>(f.factors.front().prime) >
             static_cast<long double>(z);
}

bool is_rough(u64 n, double z) { return is_rough(factorize(n), z); }

}  // namespace mondrian
