#pragma once

// Tabular experiment output. CSV layout:
//
//   # command=<name>
//   # param.<key>=<value>      (one per parameter, in insertion order)
//   # meta.<key>=<value>       (version, timestamp, epsilon, budgets)
//   x,exact_count,estimate,ratio,envelope,status[,extra columns...]
//   <rows>
//
// Empty cells stand for absent values. Reals use the shortest decimal form
// that parses back to the same double.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mondrian/divisor.hpp"

namespace mondrian {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct ReportRow {
  u64 x = 0;
  std::optional<u64> exact_count;
  std::optional<double> estimate;
  std::optional<double> ratio;
  std::optional<double> envelope;
  std::string status = "OK";
  std::vector<std::string> extra;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ScanReport {
  std::string command;
  KeyValues parameters;
  KeyValues metadata;
  std::vector<std::string> extra_columns;
  std::vector<ReportRow> rows;

  // Stable-sorts rows by x and fills ratio = exact / estimate where the
  // estimate is positive.
  void finalize();

  bool has_indeterminate() const;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

std::string format_real(double v);

std::string to_csv(const ScanReport& r);
// Throws std::invalid_argument on malformed input.
ScanReport parse_csv(std::string_view text);

std::string to_json(const ScanReport& r);

}  // namespace mondrian
