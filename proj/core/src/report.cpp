#include "mondrian/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mondrian {

namespace {

constexpr std::string_view kFixedColumns = "x,exact_count,estimate,ratio,envelope,status";

void check_cell(std::string_view s) {
  if (s.find_first_of(",\n\r") != std::string_view::npos) {
    throw std::invalid_argument("report cell contains a separator: " + std::string(s));
  }
}

void check_meta(std::string_view s) {
  if (s.find_first_of("\n\r") != std::string_view::npos) {
    throw std::invalid_argument("report header value contains a newline");
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

u64 parse_u64(std::string_view s) {
  u64 v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer cell: " + std::string(s));
  }
  return v;
}

double parse_real(std::string_view s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad real cell: " + std::string(s));
  }
  return v;
}

std::optional<u64> opt_u64(std::string_view s) {
  if (s.empty()) return std::nullopt;
  return parse_u64(s);
}

std::optional<double> opt_real(std::string_view s) {
  if (s.empty()) return std::nullopt;
  return parse_real(s);
}

}  // namespace

void ScanReport::finalize() {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.x < b.x; });
  for (auto& row : rows) {
    if (row.exact_count && row.estimate && *row.estimate > 0) {
      row.ratio = static_cast<double>(*row.exact_count) / *row.estimate;
    }
  }
}

bool ScanReport::has_indeterminate() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const ReportRow& r) { return r.status == "INDETERMINATE"; });
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_real failed");
  return std::string(buf, ptr);
}

std::string to_csv(const ScanReport& r) {
  std::ostringstream out;
  check_meta(r.command);
  out << "# command=" << r.command << '\n';
  for (const auto& [k, v] : r.parameters) {
    check_meta(k);
    check_meta(v);
    out << "# param." << k << '=' << v << '\n';
  }
  for (const auto& [k, v] : r.metadata) {
    check_meta(k);
    check_meta(v);
    out << "# meta." << k << '=' << v << '\n';
  }
  out << kFixedColumns;
  for (const auto& c : r.extra_columns) {
    check_cell(c);
    out << ',' << c;
  }
  out << '\n';
  for (const auto& row : r.rows) {
    if (row.extra.size() != r.extra_columns.size()) {
      throw std::invalid_argument("report row has wrong number of extra cells");
    }
    check_cell(row.status);
    out << row.x << ',';
    if (row.exact_count) out << *row.exact_count;
    out << ',';
    if (row.estimate) out << format_real(*row.estimate);
    out << ',';
    if (row.ratio) out << format_real(*row.ratio);
    out << ',';
    if (row.envelope) out << format_real(*row.envelope);
    out << ',' << row.status;
    for (const auto& e : row.extra) {
      check_cell(e);
      out << ',' << e;
    }
    out << '\n';
  }
  return out.str();
}

ScanReport parse_csv(std::string_view text) {
  ScanReport r;
  bool header_seen = false;
  std::size_t fixed = split(kFixedColumns, ',').size();
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    if (line.starts_with("# ")) {
      if (header_seen) throw std::invalid_argument("metadata after column header");
      const std::string_view body = line.substr(2);
      const std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) throw std::invalid_argument("metadata line without '='");
      const std::string key(body.substr(0, eq));
      const std::string value(body.substr(eq + 1));
      if (key == "command") {
        r.command = value;
      } else if (key.starts_with("param.")) {
        r.parameters.emplace_back(key.substr(6), value);
      } else if (key.starts_with("meta.")) {
        r.metadata.emplace_back(key.substr(5), value);
      } else {
        throw std::invalid_argument("unknown metadata key: " + key);
      }
      continue;
    }
    const auto cells = split(line, ',');
    if (!header_seen) {
      if (cells.size() < fixed ||
          line.substr(0, kFixedColumns.size()) != kFixedColumns) {
        throw std::invalid_argument("missing column header");
      }
      for (std::size_t i = fixed; i < cells.size(); ++i) r.extra_columns.emplace_back(cells[i]);
      header_seen = true;
      continue;
    }
    if (cells.size() != fixed + r.extra_columns.size()) {
      throw std::invalid_argument("row has wrong number of cells");
    }
    ReportRow row;
    row.x = parse_u64(cells[0]);
    row.exact_count = opt_u64(cells[1]);
    row.estimate = opt_real(cells[2]);
    row.ratio = opt_real(cells[3]);
    row.envelope = opt_real(cells[4]);
    row.status = std::string(cells[5]);
    for (std::size_t i = fixed; i < cells.size(); ++i) row.extra.emplace_back(cells[i]);
    r.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::invalid_argument("missing column header");
  return r;
}

std::string to_json(const ScanReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["command"] = r.command;
  auto kv = [](const KeyValues& src) {
    ordered_json o = ordered_json::object();
    for (const auto& [k, v] : src) o[k] = v;
    return o;
  };
  j["parameters"] = kv(r.parameters);
  j["metadata"] = kv(r.metadata);
  auto& rows = j["rows"] = ordered_json::array();
  auto real = [](const std::optional<double>& v) -> ordered_json {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
  };
  for (const auto& row : r.rows) {
    ordered_json o;
    o["x"] = row.x;
    o["exact_count"] = row.exact_count ? ordered_json(*row.exact_count) : ordered_json(nullptr);
    o["estimate"] = real(row.estimate);
    o["ratio"] = real(row.ratio);
    o["envelope"] = real(row.envelope);
    o["status"] = row.status;
    for (std::size_t i = 0; i < row.extra.size() && i < r.extra_columns.size(); ++i) {
      o[r.extra_columns[i]] = row.extra[i];
    }
    rows.push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

}  // namespace mondrian
