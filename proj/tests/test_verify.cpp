#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "lomo/verify.hpp"

using namespace lomo;

namespace {

VerifyOptions small_options() {
  VerifyOptions o;
  o.grid = 64;
  o.corpus_size = 6;
  o.radii_count = 16;
  return o;
}

const nlohmann::json* find_row(const CheckReport& rep, const std::string& key, const std::string& value) {
  for (const auto& row : rep.rows) {
    if (row.contains(key) && row.at(key) == value) return &row;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("suite registry") {
  const auto& names = suite_names();
  CHECK(names.size() == 8);
  CHECK(std::find(names.begin(), names.end(), "all") == names.end());
  CHECK_THROWS_AS(run_suite("lemma99", small_options()), std::invalid_argument);
  CHECK_THROWS_AS(run_suites({}, small_options()), std::invalid_argument);
  CHECK_THROWS_AS(run_suites({"sandwich", "nope"}, small_options()), std::invalid_argument);
}

TEST_CASE("exact identities suite passes and is deterministic") {
  const auto o = small_options();
  const auto a = run_suites({"lemma21"}, o);
  const auto b = run_suites({"lemma21"}, o);
  CHECK(a.passed);
  CHECK(a.report.contains("timing"));
  CHECK(without_timing(a.report).dump(2) == without_timing(b.report).dump(2));
  const auto& suite = a.report.at("suites").at(0);
  CHECK(suite.at("constants").at("subadditivity_violations") == 0);
  CHECK(suite.at("parameters").at("corpus_members") == 50);
}

TEST_CASE("report CSV export") {
  const auto run = run_suites({"lemma21"}, small_options());
  const std::string csv = report_csv(run.report);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "suite,row,key,value");
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(line.rfind("lemma21,", 0) == 0);
  }
  CHECK(lines > 5);
  CHECK(csv.find("lemma21,summary,passed,true") != std::string::npos);
  CHECK(csv.find("timestamp") == std::string::npos);
}

TEST_CASE("maximal boundedness suite rejects p <= 1") {
  auto o = small_options();
  o.p_values = {0.9};
  CHECK_THROWS_WITH_AS(check_maximal_ratio(o), doctest::Contains("1 < p < inf"), std::invalid_argument);
}

TEST_CASE("dilation suite: balanced exponents stay flat, large shifts drift") {
  auto o = small_options();
  o.grid = 128;
  const auto rep = check_exponent_frontier(o, {0.6, 0.25});
  const auto* balanced = find_row(rep, "case", "balanced");
  const auto* alpha0 = find_row(rep, "case", "alpha0_p_eq_q");
  const auto* plus = find_row(rep, "case", "plus");
  REQUIRE(balanced);
  REQUIRE(alpha0);
  REQUIRE(plus);
  CHECK(balanced->at("spread").get<double>() < 2.0);
  CHECK(alpha0->at("spread").get<double>() < 2.0);
  CHECK(plus->at("spread").get<double>() >= 2.0);
  CHECK(plus->at("monotone") == -1);
  CHECK_THROWS_AS(check_exponent_frontier(o, {0.15, 0.35}), std::invalid_argument);
}

TEST_CASE("condition suite separates balanced and shifted exponents") {
  const auto rep = check_weight_condition(small_options());
  CHECK(rep.passed);
  CHECK(find_row(rep, "case", "balanced")->at("verdict") == "finite");
  CHECK(find_row(rep, "case", "plus")->at("verdict") == "infinite");
  CHECK(find_row(rep, "case", "minus")->at("verdict") == "infinite");
}

TEST_CASE("sandwich and rearrangement bounds on a small grid") {
  const auto o = small_options();
  const auto sandwich = check_sandwich(o);
  CHECK(sandwich.passed);
  CHECK(sandwich.constants.at("c_emp").get<double>() > 0.0);
  CHECK(sandwich.constants.at("c_emp").get<double>() <= sandwich.constants.at("C_emp").get<double>());
  CHECK(check_localized_strong_bound(o).passed);
  CHECK(check_rearrangement_bounds(o).passed);
}
