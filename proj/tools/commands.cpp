#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "mondrian/refined_count.hpp"
#include "mondrian/rough_sieve.hpp"
#include "mondrian/tiling.hpp"

#ifndef MONDRIAN_VERSION
#define MONDRIAN_VERSION "0.0.0"
#endif

namespace mondrian::cli {

namespace {

KeyValues metadata(const GlobalOptions& g) {
  // Timestamp comes from SOURCE_DATE_EPOCH only.
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  return {{"version", MONDRIAN_VERSION},
          {"timestamp", epoch != nullptr ? epoch : "unset"},
          {"epsilon", format_real(g.epsilon)},
          {"budget_nodes", std::to_string(g.budget_nodes)}};
}

std::string join(const std::vector<u64>& xs) {
  std::string s;
  for (u64 x : xs) {
    if (!s.empty()) s += ' ';
    s += std::to_string(x);
  }
  return s;
}

// results[i] = fn(i), computed by up to `workers` threads; order is by index.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, unsigned workers, Fn fn) {
  std::vector<T> results(count);
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < count; i = next++) results[i] = fn(i);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (threads <= 1) {
    drain();
    return results;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(drain);
  for (auto& th : pool) th.join();
  return results;
}

RoughCountOptions rough_options(const GlobalOptions& g) {
  RoughCountOptions o;
  o.node_budget = g.budget_nodes;
  return o;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

ScanReport cmd_criterion_scan(u64 lo, u64 hi, ChainSetId id, u64 step,
                              const GlobalOptions& g) {
  ScanReport r;
  r.command = "criterion-scan";
  r.parameters = {{"lo", std::to_string(lo)},
                  {"hi", std::to_string(hi)},
                  {"set", std::string(to_string(id))},
                  {"step", std::to_string(step)}};
  r.metadata = metadata(g);
  r.extra_columns = {"set", "lo"};
  const std::vector<std::string> extra{std::string(to_string(id)), std::to_string(lo)};
  ScanOptions opts;
  opts.epsilon = g.epsilon;
  opts.workers = g.workers;
  opts.max_span = g.budget_nodes;
  try {
    const auto bits = scan_bits(lo, hi, id, opts);
    u64 count = 0;
    for (u64 n = lo; n <= hi; ++n) {
      if (bits[n - lo]) ++count;
      const bool checkpoint = n == hi || (step > 0 && (n - lo + 1) % step == 0);
      if (checkpoint) {
        ReportRow row;
        row.x = n;
        row.exact_count = count;
        row.extra = extra;
        r.rows.push_back(std::move(row));
      }
    }
  } catch (const BudgetExceeded&) {
    ReportRow row;
    row.x = hi;
    row.status = "INDETERMINATE";
    row.extra = extra;
    r.rows.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

ScanReport cmd_rough_count(const std::vector<u64>& xs, std::optional<double> z,
                           std::optional<double> cutoff_epsilon, const GlobalOptions& g) {
  if (z.has_value() == cutoff_epsilon.has_value()) {
    throw std::invalid_argument("rough-count: give exactly one of --z and --cutoff-gseps");
  }
  ScanReport r;
  r.command = "rough-count";
  r.parameters = {{"x", join(xs)}};
  if (z) r.parameters.emplace_back("z", format_real(*z));
  if (cutoff_epsilon) r.parameters.emplace_back("cutoff_gseps", format_real(*cutoff_epsilon));
  r.metadata = metadata(g);
  r.extra_columns = {"z", "mertens_product"};
  const RoughCountOptions opts = rough_options(g);
  r.rows = parallel_map<ReportRow>(xs.size(), g.workers, [&](std::size_t i) {
    const u64 x = xs[i];
    ReportRow row;
    row.x = x;
    const double xd = static_cast<double>(x);
    const double zz = z ? *z : g_eps(xd * xd, *cutoff_epsilon);
    row.extra = {format_real(zz), zz >= 2.0 ? format_real(static_cast<double>(mertens_product(zz))) : ""};
    try {
      row.exact_count = rough_count_exact(x, zz, opts);
    } catch (const BudgetExceeded&) {
      row.status = "INDETERMINATE";
    }
    if (x > 2 && zz > 1.0 && zz <= xd) {
      const auto est = lemma5_estimate(x, zz);
      row.estimate = est.estimate;
      row.envelope = est.envelope;
    }
    return row;
  });
  r.finalize();
  return r;
}

ScanReport cmd_lower_bound_table(const std::vector<u64>& xs, const GlobalOptions& g) {
  ScanReport r;
  r.command = "lower-bound-table";
  r.parameters = {{"x", join(xs)}};
  r.metadata = metadata(g);
  r.extra_columns = {"cutoff",       "rough_at_cutoff",   "n0_star",
                     "global_bound_floor", "inclusion_holds", "rough_exceeds_estimate",
                     "criterion_exceeds_estimate"};
  const RoughCountOptions opts = rough_options(g);
  r.rows = parallel_map<ReportRow>(xs.size(), g.workers, [&](std::size_t i) {
    const u64 x = xs[i];
    const auto lb = lower_bound_estimate(x, g.epsilon, true, opts);
    ReportRow row;
    row.x = x;
    row.estimate = lb.estimate;
    row.envelope = lemma5_envelope(x, lb.cutoff);
    const std::string rough = lb.rough_at_cutoff ? std::to_string(*lb.rough_at_cutoff) : "";
    try {
      const InclusionCheck inc = check_rough_inclusion(x, g.epsilon);
      row.exact_count = inc.criterion_count;
      row.status = inc.inclusion_holds() ? "OK" : "VIOLATION";
      row.extra = {format_real(lb.cutoff),
                   std::to_string(inc.rough_count),
                   std::to_string(inc.n0_star),
                   std::to_string(inc.global_bound_floor),
                   yes_no(inc.inclusion_holds()),
                   yes_no(static_cast<double>(inc.rough_count) > lb.estimate),
                   yes_no(static_cast<double>(inc.criterion_count) > lb.estimate)};
    } catch (const BudgetExceeded&) {
      row.status = "INDETERMINATE";
      row.extra = {format_real(lb.cutoff), rough, "", "", "", "", ""};
    }
    return row;
  });
  r.finalize();
  return r;
}

ScanReport cmd_refined(const std::vector<u64>& xs, const GlobalOptions& g) {
  ScanReport r;
  r.command = "refined";
  r.parameters = {{"x", join(xs)}};
  r.metadata = metadata(g);
  r.extra_columns = {"r", "prime_floor", "reciprocal_prime_sum", "log_log_x"};
  RefinedOptions opts;
  opts.node_budget = g.budget_nodes;
  const auto blocks = parallel_map<std::vector<ReportRow>>(xs.size(), g.workers, [&](std::size_t i) {
    const u64 x = xs[i];
    std::vector<ReportRow> rows;
    ReportRow total;
    total.x = x;
    const std::string recip = format_real(static_cast<double>(reciprocal_prime_sum(x)));
    const std::string loglog = format_real(std::log(std::log(static_cast<double>(x))));
    try {
      const RefinedTotal t = refined_total(x, g.epsilon, opts);
      u64 floor = 1;
      for (const auto& term : t.terms) {
        floor *= 3;
        ReportRow row;
        row.x = x;
        row.exact_count = term.count;
        row.extra = {std::to_string(term.r), std::to_string(floor), "", ""};
        rows.push_back(std::move(row));
      }
      total.exact_count = t.total;
    } catch (const BudgetExceeded&) {
      total.status = "INDETERMINATE";
    }
    total.extra = {"total", "", recip, loglog};
    rows.push_back(std::move(total));
    return rows;
  });
  for (const auto& b : blocks) r.rows.insert(r.rows.end(), b.begin(), b.end());
  r.finalize();
  return r;
}

ScanReport cmd_verify_perfect(u32 n, bool upto, const GlobalOptions& g) {
  ScanReport r;
  r.command = "verify-perfect";
  r.parameters = {{upto ? "upto" : "n", std::to_string(n)}};
  r.metadata = metadata(g);
  r.extra_columns = {"criterion_holds", "verdict", "search_nodes"};
  if (n < 3 || n > kMaxTilingSide) {
    throw std::invalid_argument("verify-perfect: n must lie in [3, 32]");
  }
  const u32 first = upto ? 3 : n;
  std::vector<u32> sides;
  for (u32 k = first; k <= n; ++k) sides.push_back(k);
  r.rows = parallel_map<ReportRow>(sides.size(), g.workers, [&](std::size_t i) {
    const u32 side = sides[i];
    ReportRow row;
    row.x = side;
    const bool holds = criterion_direct(side).holds;
    Lemma1Verdict verdict = Lemma1Verdict::kSkipped;
    u64 nodes = 0;
    if (holds) {
      SearchOptions opts;
      opts.node_budget = g.budget_nodes;
      opts.necessary_condition_filter = false;
      opts.area_prune = false;
      const TilingOutcome t = perfect_tiling_exists(side, opts);
      nodes = t.nodes;
      verdict = t.status == SearchStatus::kAbsent        ? Lemma1Verdict::kConfirmedAbsent
                : t.status == SearchStatus::kIndeterminate ? Lemma1Verdict::kIndeterminate
                                                           : Lemma1Verdict::kViolation;
    }
    if (verdict == Lemma1Verdict::kIndeterminate) row.status = "INDETERMINATE";
    if (verdict == Lemma1Verdict::kViolation) row.status = "VIOLATION";
    row.extra = {yes_no(holds), std::string(to_string(verdict)), std::to_string(nodes)};
    return row;
  });
  r.finalize();
  return r;
}

int exit_code_for(const ScanReport& r) {
  for (const auto& row : r.rows) {
    if (row.status == "VIOLATION") return kExitError;
  }
  return r.has_indeterminate() ? kExitIndeterminate : kExitClean;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rough-number and perfect-tiling experiments for the Mondrian puzzle", "mondrian"};
  app.fallthrough();
  app.require_subcommand(1);
  GlobalOptions g;
  std::optional<std::string> out_path;
  app.add_option("--epsilon", g.epsilon, "Divisor-bound slack epsilon")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--budget-nodes", g.budget_nodes,
                 "Work budget per row (search nodes, scan span)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  u64 lo = 3;
  u64 hi = 100;
  u64 step = 0;
  std::string set_name = "DIRECT";
  auto* scan_cmd = app.add_subcommand("criterion-scan", "Count members of a chain set on [lo, hi]");
  scan_cmd->add_option("--lo", lo)->required();
  scan_cmd->add_option("--hi", hi)->required();
  scan_cmd->add_option("--set", set_name, "DIRECT, DUAL, TAU2_RELAXED, TAU2_GLOBAL, TAU2_ON_N, G_EPS_CUTOFF")
      ->capture_default_str();
  scan_cmd->add_option("--step", step, "Emit a cumulative row every step values");

  std::vector<u64> xs;
  std::optional<double> z;
  std::optional<double> cutoff;
  auto* rough_cmd = app.add_subcommand("rough-count", "Exact F(x, z) against the sieve main term");
  rough_cmd->add_option("--x", xs)->required();
  auto* z_opt = rough_cmd->add_option("--z", z, "Roughness threshold");
  auto* cut_opt = rough_cmd->add_option("--cutoff-gseps", cutoff, "Use z = g_eps(x^2) with this epsilon");
  z_opt->excludes(cut_opt);

  auto* lb_cmd = app.add_subcommand("lower-bound-table",
                                    "Formula, F(x, g_eps(x^2)) and criterion-set count per x");
  lb_cmd->add_option("--x", xs)->required();

  auto* refined_cmd = app.add_subcommand("refined", "Per-r prime-tuple counts of the refined bound");
  refined_cmd->add_option("--x", xs)->required();

  u32 side = 0;
  u32 upto = 0;
  auto* verify_cmd = app.add_subcommand("verify-perfect", "Exhaustive perfect-tiling check");
  auto* n_opt = verify_cmd->add_option("--n", side);
  auto* upto_opt = verify_cmd->add_option("--upto", upto);
  n_opt->excludes(upto_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitClean : kExitError;
  }
  g.out = out_path;

  ScanReport report;
  try {
    if (*scan_cmd) {
      const auto id = parse_chain_set(set_name);
      if (!id) throw std::invalid_argument("unknown set: " + set_name);
      report = cmd_criterion_scan(lo, hi, *id, step, g);
    } else if (*rough_cmd) {
      report = cmd_rough_count(xs, z, cutoff, g);
    } else if (*lb_cmd) {
      report = cmd_lower_bound_table(xs, g);
    } else if (*refined_cmd) {
      report = cmd_refined(xs, g);
    } else if (*verify_cmd) {
      if ((side == 0) == (upto == 0)) {
        throw std::invalid_argument("verify-perfect: give exactly one of --n and --upto");
      }
      report = upto != 0 ? cmd_verify_perfect(upto, true, g) : cmd_verify_perfect(side, false, g);
    }
  } catch (const std::exception& e) {
    err << "mondrian: " << e.what() << '\n';
    return kExitError;
  }

  const std::string text = g.format == "json" ? to_json(report) : to_csv(report);
  if (g.out) {
    std::ofstream file(*g.out, std::ios::binary);
    if (!file) {
      err << "mondrian: cannot open " << *g.out << '\n';
      return kExitError;
    }
    file << text;
  } else {
    out << text;
  }
  return exit_code_for(report);
}

}  // namespace mondrian::cli
