#include <doctest.h>

#include <cmath>

#include "mondrian/criterion.hpp"
#include "mondrian/refined_count.hpp"
#include "oracles.hpp"

using namespace mondrian;

TEST_CASE("indicator functions") {
  CHECK(indicator_T(6, 4) == 1);
  CHECK(indicator_T(6, 3) == 0);
  CHECK(indicator_T(1, 1) == 1);
  for (u64 p : {2ULL, 3ULL, 101ULL, 65'537ULL}) CHECK(indicator_T(p * p, 3) == 1);
  CHECK(indicator_P(9, 2) == 1);
  CHECK(indicator_P(9, 3) == 0);
  for (double z : {0.0, 2.0, 1e9}) CHECK(indicator_P(1, z) == 1);
}

TEST_CASE("count_r_term examples") {
  CHECK(count_r_term(100, 1).count == 23);
  CHECK(count_r_term(100, 2).count == 0);
  // 11 * 13 = 143 and 11 * 17 = 187
  CHECK(count_r_term(200, 2).count == 2);
  CHECK(count_r_term(143, 2).count == 1);
  CHECK(count_r_term(142, 2).count == 0);
  CHECK(count_r_term(3, 1).count == 0);
  CHECK(count_r_term(1000, 9).count == 0);
  CHECK(count_r_term(1'000'000, 40).count == 0);
  CHECK_THROWS_AS(count_r_term(100, 0), std::domain_error);

  const auto rec = count_r_term(10'000, 2);
  CHECK(rec.r == 2);
  CHECK(rec.x == 10'000);
  CHECK(rec.count == 943);
}

TEST_CASE("tuple enumeration matches factorization filtering") {
  constexpr u64 kTop = 30'000;
  for (unsigned r = 1; r <= 4; ++r) {
    u64 brute = 0;
    for (u64 n = 1; n <= kTop; ++n) {
      if (oracle::is_r_term(n, r)) ++brute;
      if (n % 1499 == 0 || n == kTop) REQUIRE(count_r_term(n, r).count == brute);
    }
  }
}

TEST_CASE("r cap and refined total") {
  // g_0.1(10^4) ~ 26.8 and log_3(26.8) ~ 2.99
  CHECK(refined_r_cap(100, 0.1) == 2);
  const auto t = refined_total(100, 0.1);
  CHECK(t.terms.size() == 2);
  CHECK(t.total == 23);
  CHECK(t.total == count_r_term(100, 1).count);
  CHECK_THROWS_AS(refined_total(15, 0.1), std::domain_error);
  for (u64 x : {16ULL, 1000ULL, 50'000ULL, 2'000'000ULL}) {
    const auto tot = refined_total(x, 0.1);
    CHECK(tot.total >= count_r_term(x, 1).count);
    u64 sum = 0;
    for (const auto& term : tot.terms) sum += term.count;
    CHECK(sum == tot.total);
  }
}

TEST_CASE("refined total lower-bounds the tau2-on-n set") {
  const ArithmeticCache cache(10'000);
  u64 members = 0;
  for (u64 n = 3; n <= 10'000; ++n) {
    if (member(ChainSetId::kTau2OnN, n, 0.1, &cache)) ++members;
    if (n >= 16 && (n % 500 == 0 || n == 10'000)) {
      REQUIRE(refined_total(n, 0.1).total <= members);
    }
  }
}

TEST_CASE("tau identity on squarefree integers") {
  CHECK(verify_identity_tau_square(6));
  CHECK(verify_identity_tau_square(1));
  CHECK(verify_identity_tau_square(30));
  CHECK(tau2(900) == 27);
  CHECK(tau2(30) == 8);
  CHECK_THROWS_AS(verify_identity_tau_square(12), std::domain_error);
}

TEST_CASE("double sum over indicators equals the direct count") {
  // sum_n sum_{2 <= j <= g} T_j(n^2) P_j(n) drops n = 1 (tau2(1) = 1);
  // summing over the values tau2(n^2) actually takes restores it.
  constexpr u64 kTop = 10'000;
  const double g = g_eps(static_cast<double>(kTop) * kTop, 0.1);
  const u64 j_max = static_cast<u64>(std::floor(g));
  u64 direct = 0;
  u64 double_sum = 0;
  u64 double_sum_all_values = 0;
  u64 squarefree_sum = 0;
  for (u64 n = 1; n <= kTop; ++n) {
    const u64 t = tau2(factorize(n).squared());
    const u64 d = n == 1 ? 0 : oracle::least_prime(n);
    if (n == 1 || d > t) ++direct;
    u64 inner = 0;
    for (u64 j = 2; j <= j_max; ++j) {
      inner += static_cast<u64>(indicator_T(n * n, j) * indicator_P(n, static_cast<double>(j)));
    }
    REQUIRE(inner <= 1);
    double_sum += inner;
    double_sum_all_values +=
        static_cast<u64>(indicator_T(n * n, t) * indicator_P(n, static_cast<double>(t)));
    if (is_squarefree(n)) squarefree_sum += inner;
  }
  CHECK(double_sum + 1 == direct);
  CHECK(double_sum_all_values == direct);
  CHECK(squarefree_sum <= double_sum);
  // The squarefree restriction is exactly the refined sum.
  CHECK(squarefree_sum == refined_total(kTop, 0.1).total);
}
