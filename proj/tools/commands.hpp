#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mondrian/criterion.hpp"
#include "mondrian/report.hpp"

namespace mondrian::cli {

inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitIndeterminate = 2;

struct GlobalOptions {
  double epsilon = kDefaultEpsilon;
  std::optional<std::string> out;
  unsigned workers = 1;
  u64 budget_nodes = 50'000'000;
  std::string format = "csv";
};

ScanReport cmd_criterion_scan(u64 lo, u64 hi, ChainSetId id, u64 step,
                              const GlobalOptions& g);
// Exactly one of z / cutoff_epsilon is set.
ScanReport cmd_rough_count(const std::vector<u64>& xs, std::optional<double> z,
                           std::optional<double> cutoff_epsilon, const GlobalOptions& g);
ScanReport cmd_lower_bound_table(const std::vector<u64>& xs, const GlobalOptions& g);
ScanReport cmd_refined(const std::vector<u64>& xs, const GlobalOptions& g);
// upto == false checks the single side n.
ScanReport cmd_verify_perfect(u32 n, bool upto, const GlobalOptions& g);

// Exit code for a finished report: VIOLATION rows are failures, then
// INDETERMINATE rows, else clean.
int exit_code_for(const ScanReport& r);

// Parses argv, runs the subcommand, writes the report to `out` (or the
// --out file) and diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mondrian::cli
