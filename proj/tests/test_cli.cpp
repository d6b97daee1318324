#include <doctest.h>

#include <json.hpp>

#include "support/run_cli.hpp"

using fmeda::testing::run_cli;
using nlohmann::json;

namespace {

const std::string kWorked = std::string("'") + FMEDA_FIXTURE_DIR + "/worked_two_fm.csv'";

}  // namespace

TEST_CASE("cli analyze: exit codes follow the verdict") {
  CHECK(run_cli("analyze --input " + kWorked).exit_code == 0);
  CHECK(run_cli("analyze --input " + kWorked + " --asil B").exit_code == 0);
  CHECK(run_cli("analyze --input " + kWorked + " --asil C").exit_code == 3);

  const auto fragile = run_cli("analyze --input " + kWorked + " --spfm-threshold 0.93");
  CHECK(fragile.exit_code == 2);
  CHECK(fragile.err.find("warning") != std::string::npos);

  CHECK(run_cli("analyze --input /nonexistent.csv").exit_code == 1);
  CHECK(run_cli("analyze --input " + kWorked + " --confidence 0.8").exit_code == 1);
  CHECK(run_cli("analyze --input " + kWorked + " --mode both").exit_code == 1);
  CHECK(run_cli("analyze").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
}

TEST_CASE("cli analyze: stdout carries only the document") {
  const auto run = run_cli("analyze --input " + kWorked + " --asil B");
  REQUIRE(run.exit_code == 0);
  const auto doc = json::parse(run.out);
  CHECK(doc["spfm"]["value"].get<double>() == doctest::Approx(0.945));
  CHECK(doc["verdict"] == "PassRobust");
  CHECK(run.err.empty());

  const auto bad = run_cli("analyze --input -", "part,subpart\n");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.empty());
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("cli analyze: repeated runs are byte-identical in every format") {
  for (const char* format : {"json", "markdown", "csv"}) {
    const std::string args = "analyze --input " + kWorked + " --format " + format;
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK_FALSE(a.out.empty());
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cli analyze: provenance stamp is opt-in") {
  const auto plain = json::parse(run_cli("analyze --input " + kWorked).out);
  CHECK_FALSE(plain.contains("provenance"));
  const auto stamped = json::parse(run_cli("analyze --input " + kWorked + " --stamp").out);
  CHECK(stamped["provenance"]["tool"] == "fmeda-uq");
}

TEST_CASE("cli analyze: stdin input") {
  const std::string csv = fmeda::testing::slurp(std::string(FMEDA_FIXTURE_DIR) + "/worked_two_fm.csv");
  const auto from_stdin = run_cli("analyze --input -", csv);
  const auto from_file = run_cli("analyze --input " + kWorked);
  CHECK(from_stdin.exit_code == 0);
  CHECK(from_stdin.out == from_file.out);
}

TEST_CASE("cli sample-size") {
  const auto run = run_cli("sample-size --population 1000000 --margin 0.01 --confidence 0.95");
  REQUIRE(run.exit_code == 0);
  CHECK(json::parse(run.out)["sample_size"] == 9513);

  const auto small = run_cli("sample-size --population 1000 --margin 0.05 --confidence 0.95");
  CHECK(json::parse(small.out)["sample_size"] == 278);

  const auto text = run_cli("sample-size --population 1000 --margin 0.05 --confidence 0.95 --format text");
  CHECK(text.out.find("278") != std::string::npos);

  CHECK(run_cli("sample-size --population 1000 --margin 1.5 --confidence 0.95").exit_code == 1);
  CHECK(run_cli("sample-size --population 1000 --margin 0.05 --confidence 0.97").exit_code == 1);
  CHECK(run_cli("sample-size --population 0 --margin 0.05 --confidence 0.95").exit_code == 1);
}

TEST_CASE("cli verify: agreement, determinism and the negative control") {
  const std::string args = "verify --input " + kWorked + " --samples 20000 --seed 7";
  const auto a = run_cli(args);
  CHECK(a.exit_code == 0);
  const auto doc = json::parse(a.out);
  REQUIRE(doc["verdicts"].size() == 2);
  CHECK(doc["verdicts"][0]["pass"] == true);
  CHECK(run_cli(args).out == a.out);

  // A corrupted analytic sigma must be caught.
  CHECK(run_cli(args + " --analytic-scale 1.5").exit_code == 4);
  CHECK(run_cli("verify --input " + kWorked + " --samples 10").exit_code == 1);
}
