#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "pvtsi/study.hpp"

using namespace pvtsi;

namespace {

StudyConfig base_config() {
  StudyConfig cfg;
  cfg.example = "poly_m1";
  cfg.transform = "rational";
  cfg.p = 10.0;
  cfg.t = 0.3;
  cfg.s_levels = {0, 1};
  cfg.n0 = 2;
  cfg.doublings = 10;
  return cfg;
}

// minimal csv reader for the round-trip check
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST_CASE("study reproduces the p=10 ladder") {
  const ConvergenceReport r = run_study(base_config());
  REQUIRE(r.rows.size() == 10);
  CHECK(r.exact_source == "printed");
  const ConvergenceRow& last = r.rows.back();
  CHECK(last.n == 1024);
  for (double e : last.relative_errors) CHECK(e <= 1e-10);
  for (const ConvergenceRow& row : r.rows)
    for (double e : row.relative_errors) CHECK(e >= 0.0);
}

TEST_CASE("error decreases until the roundoff floor") {
  StudyConfig cfg = base_config();
  cfg.example = "cheb_m2";
  cfg.p = 5.0;
  cfg.s_levels = {1, 2};
  const ConvergenceReport r = run_study(cfg);
  // monotone decrease until the roundoff floor (~1e-11) is reached
  for (size_t i = 2; i + 1 < r.rows.size(); ++i) {
    if (r.rows[i].relative_errors[0] <= 1e-11) break;
    CHECK(r.rows[i + 1].relative_errors[0] <= r.rows[i].relative_errors[0]);
  }
}

TEST_CASE("inline polynomial integrand uses the oracle") {
  StudyConfig cfg = base_config();
  cfg.example.clear();
  cfg.poly_coeffs = {1.0, 1.0, -1.0};
  cfg.m = 1;
  cfg.doublings = 8;
  const ConvergenceReport r = run_study(cfg);
  CHECK(r.exact_source == "oracle");
  CHECK(r.rows.back().relative_errors.back() <= 1e-9);
}

TEST_CASE("config validation") {
  StudyConfig cfg = base_config();
  cfg.s_levels = {2};  // m = 1 allows s <= 1
  CHECK_THROWS_AS(run_study(cfg), std::invalid_argument);

  cfg = base_config();
  cfg.doublings = 15;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = base_config();
  cfg.example = "nope";
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = base_config();
  cfg.example.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("csv emission and round trip") {
  StudyConfig cfg = base_config();
  cfg.doublings = 3;
  const ConvergenceReport r = run_study(cfg);
  const std::string csv = emit_report(r, "csv");
  const auto rows = parse_csv(csv);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"k", "n", "err_s0", "err_s1"});
  for (size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 4);
    CHECK(std::stoi(rows[i][0]) == r.rows[i - 1].k);
    CHECK(std::stoi(rows[i][1]) == r.rows[i - 1].n);
    for (size_t j = 0; j < 2; ++j) {
      const double parsed = std::stod(rows[i][2 + j]);
      const double orig = r.rows[i - 1].relative_errors[j];
      CHECK(std::abs(parsed - orig) <= 5e-4 * std::max(orig, 1e-300));
    }
  }

  // determinism: identical config gives byte-identical csv
  CHECK(emit_report(run_study(cfg), "csv") == csv);
}

TEST_CASE("empty and tiny reports") {
  ConvergenceReport empty;
  empty.config = base_config();
  CHECK(emit_report(empty, "csv") == "k,n,err_s0,err_s1\n");

  ConvergenceRow row;
  row.k = 0;
  row.n = 2;
  row.relative_errors = {1.0, 0.5};
  empty.rows.push_back(row);
  const auto lines = parse_csv(emit_report(empty, "csv"));
  CHECK(lines.size() == 2);
}

TEST_CASE("markdown layout") {
  StudyConfig cfg = base_config();
  cfg.doublings = 2;
  const std::string md = emit_report(run_study(cfg), "markdown");
  CHECK(md.find("E^(0)_{1,n}") != std::string::npos);
  CHECK(md.find("E^(1)_{1,n}") != std::string::npos);
  CHECK(md.find("| k | n |") != std::string::npos);
}
