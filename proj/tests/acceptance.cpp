// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "mondrian/mondrian.hpp"
#include "oracles.hpp"

#ifdef MONDRIAN_HAVE_CLI
#include "commands.hpp"
#endif

using namespace mondrian;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s [%d] %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const u64 top = 2000;
  const auto tau = oracle::tau_table(top * top);
  u64 mismatches = 0;
  u64 holds = 0;
  for (u64 n = 3; n <= top; ++n) {
    const auto direct = criterion_direct(n);
    const auto dual = criterion_dual(n);
    const auto brute = oracle::criterion(n, tau);
    if (direct.holds != dual.holds || direct.holds != brute.holds) ++mismatches;
    if (!brute.holds && direct.witness != brute.smallest_failing_d) ++mismatches;
    if (direct.holds) ++holds;
  }
  const double secs = elapsed_since(t0);
  std::ostringstream s;
  s << mismatches << " mismatches on [3, 2000], " << holds << " members, " << secs << "s";
  return {mismatches == 0 && secs < 60.0, s.str()};
}

Outcome rough_count_correctness() {
  const u64 top = 100'000;
  const double zs[] = {2, 3, 5, 10, 30, 100};
  u64 mismatches = 0;
  u64 checked = 0;
  for (double z : zs) {
    u64 naive = 0;
    for (u64 x = 1; x <= top; ++x) {
      if (oracle::rough(x, z)) ++naive;
      // Every x up to 2000, then a spread of checkpoints.
      if (x <= 2000 || x % 997 == 0 || x == top) {
        ++checked;
        if (rough_count_exact(x, z) != naive) ++mismatches;
        if (x % 997 == 0 && rough_count_phi(x, z) != naive) ++mismatches;
      }
    }
  }
  u64 path_mismatches = 0;
  const double big_z[] = {2, 10, 100, 1000, 10'000, 3300.859772205126, 20'000};
  for (u64 x : {1'000'000ULL, 12'345'678ULL, 100'000'000ULL}) {
    for (double z : big_z) {
      if (rough_count_phi(x, z) != rough_count_sieve(x, z)) ++path_mismatches;
    }
  }
  // sqrt(3e9) < 54773: survivors are 1 and primes in (54773, 3e9];
  // pi(3e9) = 144449537 and pi(54773) = 5572.
  const bool large_pi = rough_count_phi(3'000'000'000ULL, 54773.0) == 1 + 144'449'537ULL - 5572;
  std::ostringstream s;
  s << mismatches << " mismatches in " << checked << " naive comparisons, " << path_mismatches
    << " phi/sieve mismatches up to 1e8, pi(3e9) leaf " << (large_pi ? "ok" : "wrong");
  return {mismatches == 0 && path_mismatches == 0 && large_pi, s.str()};
}

Outcome inclusion_chain() {
  const u64 top = 100'000;
  const double eps = 0.1;
  const ArithmeticCache cache(top);
  u64 violations = 0;
  u64 bound_points = 0;
  u64 cutoff_members = 0;
  for (u64 n = 3; n <= top; ++n) {
    if (!divisor_bound_holds(n, eps, &cache)) continue;
    ++bound_points;
    bool in = member(ChainSetId::kGEpsCutoff, n, eps, &cache);
    if (in) ++cutoff_members;
    for (ChainSetId next : {ChainSetId::kTau2OnN, ChainSetId::kTau2Global,
                            ChainSetId::kTau2Relaxed, ChainSetId::kDual, ChainSetId::kDirect}) {
      const bool m = member(next, n, eps, &cache);
      if (in && !m) ++violations;
      in = m;
    }
  }
  std::ostringstream s;
  s << violations << " violations; bound holds at " << bound_points << " n, "
    << cutoff_members << " of them in G_EPS_CUTOFF";
  return {violations == 0, s.str()};
}

Outcome lemma1_validation() {
  const auto t0 = std::chrono::steady_clock::now();
  const Lemma1Report base = validate_lemma1(12);
  const Lemma1Report stretch = validate_lemma1(16);
  const double secs = elapsed_since(t0);
  std::ostringstream s;
  s << "n <= 12: " << base.criterion_true << " criterion-true, " << base.confirmed_absent
    << " absent, " << base.violations << " violations, " << base.indeterminate
    << " indeterminate; n <= 16: " << stretch.confirmed_absent << " absent, "
    << stretch.violations << " violations, " << stretch.indeterminate << " indeterminate";
  const bool ok = base.violations == 0 && base.indeterminate == 0 &&
                  base.confirmed_absent == base.criterion_true && stretch.violations == 0 &&
                  secs < 600.0;
  return {ok, s.str()};
}

Outcome mertens_numerics() {
  std::ostringstream s;
  bool ok = true;
  const long double eg = std::exp(kEulerGamma);
  for (double z : {1e3, 1e4, 1e5, 1e6}) {
    const long double dev = mertens_product(z) * eg * std::log(static_cast<long double>(z)) - 1;
    ok = ok && std::abs(dev) < 0.05L;
    s << "z=" << z << " dev=" << static_cast<double>(dev) << "; ";
  }
  const auto r = rough_count(1'000'000, 10.0);
  const double tol = 3.0 * r.envelope;
  const double dev = std::abs(r.ratio - 1.0);
  ok = ok && dev < tol;
  s << "F(1e6,10)=" << r.exact << " ratio-1=" << dev << " tol=" << tol;
  return {ok, s.str()};
}

Outcome lower_bound_sanity() {
  bool ok = true;
  std::printf("  %-8s %-10s %-12s %-8s %-14s %-10s %-10s\n", "x", "criterion", "F(x,g(x^2))",
              "n0*", "estimate", "envelope", "exceeds");
  for (u64 x : {10'000ULL, 100'000ULL, 1'000'000ULL}) {
    const InclusionCheck inc = check_rough_inclusion(x, kDefaultEpsilon);
    const LowerBoundEstimate lb = lower_bound_estimate(x, kDefaultEpsilon);
    const u64 exact_rough = rough_count_exact(x, lb.cutoff);
    const bool first = inc.criterion_count + inc.n0_star >= exact_rough &&
                       exact_rough == inc.rough_count;
    ok = ok && first;
    const bool both = static_cast<double>(inc.criterion_count) > lb.estimate &&
                      static_cast<double>(exact_rough) > lb.estimate;
    std::printf("  %-8llu %-10llu %-12llu %-8llu %-14.2f %-10.4f %-10s\n",
                static_cast<unsigned long long>(x),
                static_cast<unsigned long long>(inc.criterion_count),
                static_cast<unsigned long long>(exact_rough),
                static_cast<unsigned long long>(inc.n0_star), lb.estimate,
                lemma5_envelope(x, lb.cutoff), both ? "yes" : "no");
  }
  return {ok, "criterion count >= F(x, g(x^2)) - n0* at x = 1e4, 1e5, 1e6"};
}

Outcome refined_equivalence() {
  const u64 top = 100'000;
  u64 running[5] = {0, 0, 0, 0, 0};
  u64 mismatches = 0;
  u64 checked = 0;
  for (u64 n = 1; n <= top; ++n) {
    for (unsigned r = 1; r <= 4; ++r) {
      if (oracle::is_r_term(n, r)) ++running[r];
    }
    if (n % 499 == 0 || n == top || n < 200) {
      for (unsigned r = 1; r <= 4; ++r) {
        ++checked;
        if (count_r_term(n, r).count != running[r]) ++mismatches;
      }
    }
  }

  const u64 sq_top = 1'000'000;
  const ArithmeticCache cache(sq_top);
  u64 identity_failures = 0;
  u64 squarefree = 0;
  for (u64 n = 1; n <= sq_top; ++n) {
    if (!is_squarefree(factorize(n, &cache))) continue;
    ++squarefree;
    if (!verify_identity_tau_square(n, &cache)) ++identity_failures;
  }

  // Q(x) = sum_k mu(k) floor(x / k^2), mu from a plain sieve.
  const u64 root = 1000;
  std::vector<int> mu(root + 1, 1);
  std::vector<bool> composite(root + 1, false);
  for (u64 p = 2; p <= root; ++p) {
    if (composite[p]) continue;
    for (u64 m = p; m <= root; m += p) {
      if (m > p) composite[m] = true;
      mu[m] = -mu[m];
    }
    for (u64 m = p * p; m <= root; m += p * p) mu[m] = 0;
  }
  long long moebius_q = 0;
  for (u64 k = 1; k <= root; ++k) moebius_q += mu[k] * static_cast<long long>(sq_top / (k * k));

  const double density = static_cast<double>(squarefree) / static_cast<double>(sq_top);
  const double rel = std::abs(density / (6.0 / (std::numbers::pi * std::numbers::pi)) - 1.0);
  std::ostringstream s;
  s << mismatches << " of " << checked << " r-term counts differ; " << identity_failures
    << " identity failures over " << squarefree << " squarefree n; Q(1e6) Moebius="
    << moebius_q << "; density rel err " << rel;
  const bool ok = mismatches == 0 && identity_failures == 0 &&
                  static_cast<long long>(squarefree) == moebius_q && rel < 0.01;
  return {ok, s.str()};
}

Outcome cli_determinism() {
#ifdef MONDRIAN_HAVE_CLI
  const std::vector<std::vector<std::string>> commands{
      {"criterion-scan", "--lo", "3", "--hi", "20000", "--set", "TAU2_RELAXED", "--step", "1000",
       "--workers", "3"},
      {"rough-count", "--x", "1000000", "100000000", "10", "--cutoff-gseps", "0.1", "--workers",
       "2"},
      {"rough-count", "--x", "1000000", "--z", "10"},
      {"lower-bound-table", "--x", "10000", "100000"},
      {"--format", "json", "refined", "--x", "100000", "1000000"},
      {"verify-perfect", "--upto", "12"},
  };
  u64 differing = 0;
  for (const auto& args : commands) {
    std::string outputs[2];
    for (auto& text : outputs) {
      std::vector<const char*> argv{"mondrian"};
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream out;
      std::ostringstream err;
      cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
      text = out.str();
    }
    if (outputs[0] != outputs[1] || outputs[0].empty()) ++differing;
  }
  std::ostringstream s;
  s << differing << " of " << commands.size() << " commands differ between runs";
  return {differing == 0, s.str()};
#else
  return {false, "CLI not built"};
#endif
}

}  // namespace

int main() {
  report(1, "criterion oracle equivalence", criterion_equivalence);
  report(2, "rough count correctness", rough_count_correctness);
  report(3, "inclusion chain", inclusion_chain);
  report(4, "perfect tiling absence", lemma1_validation);
  report(5, "Mertens and sieve main term", mertens_numerics);
  report(6, "lower bound at desk scale", lower_bound_sanity);
  report(7, "refined count equivalence", refined_equivalence);
  report(8, "CLI determinism", cli_determinism);
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
