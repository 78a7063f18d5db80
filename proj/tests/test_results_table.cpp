#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "gradopt/results_table.hpp"

using gradopt::CellStats;
using gradopt::ResultsTable;
using gradopt::TableFormat;
using gradopt::emit_results;

namespace {

ResultsTable two_by_one() {
  ResultsTable t;
  t.problems = {"housing"};
  t.algorithms = {"PRS", "GradOpt"};
  t.targets = {0.9};
  t.cells[{"housing", "PRS", 0.9}] = {332.13, 225.0, 3, 0, false};
  t.cells[{"housing", "GradOpt", 0.9}] = {10.38, 6.0, 0, 0, false};
  return t;
}

}  // namespace

TEST_CASE("markdown cells read mean(± std)") {
  std::string md = emit_results(two_by_one(), TableFormat::kMarkdown);
  REQUIRE(md.find("10.38(± 6)") != std::string::npos);
  REQUIRE(md.find("332.13(± 225)") != std::string::npos);
  REQUIRE(md.find("| 90% Target |") != std::string::npos);
}

TEST_CASE("censored cells format as 1000.0(± 0)") {
  ResultsTable t;
  t.problems = {"slump"};
  t.algorithms = {"HOO"};
  t.targets = {0.9};
  t.cells[{"slump", "HOO", 0.9}] = {1000.0, 0.0, 100, 0, false};
  std::string md = emit_results(t, TableFormat::kMarkdown);
  REQUIRE(md.find("1000.0(± 0)") != std::string::npos);
}

TEST_CASE("the smaller mean is bolded") {
  std::string md = emit_results(two_by_one(), TableFormat::kMarkdown);
  REQUIRE(md.find("**10.38(± 6)**") != std::string::npos);
  REQUIRE(md.find("**332.13") == std::string::npos);
}

TEST_CASE("empty table renders csv header only") {
  ResultsTable t;
  REQUIRE(emit_results(t, TableFormat::kCsv) ==
          "problem,algorithm,target,mean,std,censored\n");
}

TEST_CASE("csv is long-form with one row per cell") {
  std::string csv = emit_results(two_by_one(), TableFormat::kCsv);
  REQUIRE(csv.find("housing,PRS,0.9,") != std::string::npos);
  REQUIRE(csv.find("housing,GradOpt,0.9,") != std::string::npos);
  REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 cells
}

TEST_CASE("undefined cells emit N/A in markdown and empty fields in csv") {
  ResultsTable t;
  t.problems = {"p"};
  t.algorithms = {"a"};
  t.targets = {0.5};
  CellStats cell;
  cell.undefined = true;
  t.cells[{"p", "a", 0.5}] = cell;
  REQUIRE(emit_results(t, TableFormat::kMarkdown).find("N/A") != std::string::npos);
  REQUIRE(emit_results(t, TableFormat::kCsv).find("p,a,0.5,,,0") != std::string::npos);
}

TEST_CASE("mean formatting keeps at least one decimal and drops noise zeros") {
  REQUIRE(gradopt::detail::format_mean(1000.0) == "1000.0");
  REQUIRE(gradopt::detail::format_mean(8.1) == "8.1");
  REQUIRE(gradopt::detail::format_mean(10.38) == "10.38");
  REQUIRE(gradopt::detail::format_mean(62.0) == "62.0");
  REQUIRE(gradopt::detail::format_mean(7.56) == "7.56");
}
