#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "commands.hpp"
#include "mondrian/mondrian.hpp"
#include "oracles.hpp"

using namespace mondrian;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mondrian");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const ReportRow& row_at(const ScanReport& r, u64 x) {
  for (const auto& row : r.rows) {
    if (row.x == x) return row;
  }
  FAIL("no row for x = " << x);
  return r.rows.front();
}

std::string extra(const ScanReport& r, const ReportRow& row, const std::string& col) {
  for (std::size_t i = 0; i < r.extra_columns.size(); ++i) {
    if (r.extra_columns[i] == col) return row.extra.at(i);
  }
  FAIL("no column " << col);
  return {};
}

u64 naive_rough(u64 x, double z) {
  u64 c = 0;
  for (u64 n = 1; n <= x; ++n) c += oracle::rough(n, z) ? 1 : 0;
  return c;
}

}  // namespace

TEST_CASE("criterion-scan counts and DIRECT == DUAL") {
  const auto direct = run_cli({"criterion-scan", "--lo", "3", "--hi", "100", "--set", "DIRECT"});
  REQUIRE(direct.code == 0);
  const auto rep = parse_csv(direct.out);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].x == 100);
  CHECK(rep.rows[0].exact_count == 34);

  const auto dual = run_cli({"criterion-scan", "--lo", "3", "--hi", "2000", "--set", "DUAL",
                             "--step", "500"});
  REQUIRE(dual.code == 0);
  const auto drep = parse_csv(dual.out);
  REQUIRE(drep.rows.size() == 4);
  CHECK(drep.rows.back().exact_count == 608);

  const auto tau = oracle::tau_table(2000ULL * 2000);
  u64 brute = 0;
  for (u64 n = 3; n <= 502; ++n) brute += oracle::criterion(n, tau).holds ? 1 : 0;
  CHECK(drep.rows[0].x == 502);
  CHECK(drep.rows[0].exact_count == brute);
}

TEST_CASE("rough-count example row") {
  const auto r = run_cli({"rough-count", "--x", "10", "--z", "2"});
  REQUIRE(r.code == 0);
  const auto rep = parse_csv(r.out);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].exact_count == 5);
  CHECK(rep.rows[0].estimate == doctest::Approx(5.0));
  CHECK(extra(rep, rep.rows[0], "z") == "2");

  const auto multi = run_cli({"rough-count", "--x", "1000", "100", "--z", "10", "--workers", "2"});
  REQUIRE(multi.code == 0);
  const auto mrep = parse_csv(multi.out);
  CHECK(row_at(mrep, 1000).exact_count == naive_rough(1000, 10));
  CHECK(row_at(mrep, 100).exact_count == naive_rough(100, 10));
  CHECK(mrep.rows[0].x == 100);
}

TEST_CASE("rough-count with the g_eps cutoff") {
  const auto r = run_cli({"rough-count", "--x", "10000", "--cutoff-gseps", "0.1"});
  REQUIRE(r.code == 0);
  const auto rep = parse_csv(r.out);
  const double z = std::stod(extra(rep, rep.rows[0], "z"));
  CHECK(z == doctest::Approx(g_eps(1e8, 0.1)));
  CHECK(rep.rows[0].exact_count == naive_rough(10000, z));
}

TEST_CASE("lower-bound-table reports the inclusion") {
  const auto r = run_cli({"lower-bound-table", "--x", "10000"});
  REQUIRE(r.code == 0);
  const auto rep = parse_csv(r.out);
  REQUIRE(rep.rows.size() == 1);
  const auto& row = rep.rows[0];
  CHECK(row.status == "OK");
  CHECK(extra(rep, row, "inclusion_holds") == "yes");
  const u64 rough = std::stoull(extra(rep, row, "rough_at_cutoff"));
  const u64 n0 = std::stoull(extra(rep, row, "n0_star"));
  CHECK(*row.exact_count + n0 >= rough);
  CHECK(row.estimate == doctest::Approx(lower_bound_estimate(10000, 0.1).estimate));
}

TEST_CASE("refined rows per r plus a total") {
  const auto r = run_cli({"refined", "--x", "10000"});
  REQUIRE(r.code == 0);
  const auto rep = parse_csv(r.out);
  const auto t = refined_total(10000, 0.1);
  REQUIRE(rep.rows.size() == t.terms.size() + 1);
  u64 sum = 0;
  for (std::size_t i = 0; i < t.terms.size(); ++i) {
    CHECK(rep.rows[i].exact_count == t.terms[i].count);
    CHECK(extra(rep, rep.rows[i], "r") == std::to_string(i + 1));
    sum += *rep.rows[i].exact_count;
  }
  CHECK(extra(rep, rep.rows.back(), "r") == "total");
  CHECK(rep.rows.back().exact_count == sum);
}

TEST_CASE("verify-perfect --upto 10 finds no violation") {
  const auto r = run_cli({"verify-perfect", "--upto", "10"});
  REQUIRE(r.code == 0);
  const auto rep = parse_csv(r.out);
  REQUIRE(rep.rows.size() == 8);
  for (const auto& row : rep.rows) {
    CHECK(row.status == "OK");
    const bool holds = extra(rep, row, "criterion_holds") == "yes";
    CHECK(extra(rep, row, "verdict") == (holds ? "ABSENT" : "SKIPPED"));
  }
}

TEST_CASE("budget overrun gives INDETERMINATE and exit code 2") {
  const auto r = run_cli({"verify-perfect", "--n", "9", "--budget-nodes", "3"});
  CHECK(r.code == cli::kExitIndeterminate);
  const auto rep = parse_csv(r.out);
  CHECK(rep.rows[0].status == "INDETERMINATE");

  const auto s = run_cli({"criterion-scan", "--lo", "3", "--hi", "1000", "--budget-nodes", "10"});
  CHECK(s.code == cli::kExitIndeterminate);
}

TEST_CASE("usage and domain errors exit 1") {
  CHECK(run_cli({}).code == cli::kExitError);
  CHECK(run_cli({"rough-count", "--x", "10"}).code == cli::kExitError);
  CHECK(run_cli({"rough-count", "--x", "10", "--z", "2", "--cutoff-gseps", "0.1"}).code ==
        cli::kExitError);
  CHECK(run_cli({"criterion-scan", "--lo", "3", "--hi", "10", "--set", "NOPE"}).code ==
        cli::kExitError);
  const auto bad = run_cli({"criterion-scan", "--lo", "1", "--hi", "10"});
  CHECK(bad.code == cli::kExitError);
  CHECK(!bad.err.empty());
  CHECK(run_cli({"verify-perfect", "--n", "40"}).code == cli::kExitError);
  CHECK(run_cli({"--format", "xml", "refined", "--x", "100"}).code == cli::kExitError);
  CHECK(run_cli({"--help"}).code == cli::kExitClean);
}

TEST_CASE("reruns are byte-identical and round trip") {
  const std::vector<std::string> args{"--workers", "3", "rough-count", "--x", "100000", "1000",
                                      "50000", "--cutoff-gseps", "0.1"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto rep = parse_csv(a.out);
  CHECK(to_csv(rep) == a.out);

  const auto j1 = run_cli({"--format", "json", "refined", "--x", "5000"});
  const auto j2 = run_cli({"refined", "--x", "5000", "--format", "json"});
  CHECK(j1.code == 0);
  CHECK(j1.out == j2.out);
  CHECK(j1.out.find("\"command\"") != std::string::npos);
}

TEST_CASE("--out writes the report file") {
  const auto path = std::filesystem::temp_directory_path() / "mondrian_test_cli_out.csv";
  const auto r = run_cli({"--out", path.string(), "refined", "--x", "1000"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == run_cli({"refined", "--x", "1000"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("installed binary exit codes") {
  const std::string bin = MONDRIAN_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("rough-count --x 10 --z 2") == 0);
  CHECK(status("rough-count --x 10") == 1);
  CHECK(status("verify-perfect --n 9 --budget-nodes 3") == 2);
}
