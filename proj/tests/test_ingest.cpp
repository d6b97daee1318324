#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fmeda/ingest.hpp"
#include "support/random_tables.hpp"

using namespace fmeda;

namespace {

const std::string kHeader =
    "part,subpart,failure_mode,lambda_fit,sigma_lambda_fit,fmd_fraction,dc,sigma_dc,dc_latent,sigma_dc_latent,"
    "dc_source,sm_list\n";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Parse errors carry line and column; return them as "line:column".
std::string parse_error_at(std::string_view text) {
  try {
    parse_table(text);
  } catch (const ParseError& e) {
    return std::to_string(e.line()) + ":" + e.column();
  }
  return "no error";
}

std::string parse_error_message(std::string_view text) {
  try {
    parse_table(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("csv: a single example row") {
  const auto t = parse_csv(kHeader + "CPU,EXEC,FM1,100,0,,0.9,0.02,0,0,expert,\n");
  REQUIRE(t.parts.size() == 1);
  const auto& row = t.parts[0].subparts[0].failure_modes.at(0);
  CHECK(row.id == "CPU/EXEC/FM1");
  CHECK(row.lambda_fm == 100.0);
  CHECK(row.dc == 0.9);
  CHECK(row.sigma_dc == 0.02);
  CHECK(row.safety_mechanisms.empty());
  CHECK(std::holds_alternative<ExpertJudgment>(row.dc_source));
  CHECK(total_lambda(t) == 100.0);
}

TEST_CASE("csv: malformed cells report line and column") {
  CHECK(parse_error_at(kHeader + "CPU,EXEC,FM1,100,0,,abc,0.02,0,0,expert,\n") == "2:dc");
  CHECK(parse_error_at(kHeader + "CPU,EXEC,FM1,100,0,,0.9,0.02,0,0,expert,\nCPU,EXEC,FM2,x,0,,0.9,0,0,0,expert,\n") ==
        "3:lambda_fit");
  CHECK(parse_error_at(kHeader + "CPU,EXEC,FM1,100,0,,0.9,0.02,0,0,guess,\n") == "2:dc_source");
  CHECK(parse_error_at(kHeader + "CPU,EXEC,FM1,100,0,,0.9,0.02,0,0\n") != "no error");
  CHECK(parse_error_at(kHeader + "CPU,EXEC,FM1,inf,0,,0.9,0.02,0,0,expert,\n") == "2:lambda_fit");
}

TEST_CASE("csv: structural errors") {
  CHECK(parse_error_message("").find("no data rows") != std::string::npos);
  CHECK(parse_error_message(kHeader).find("no data rows") != std::string::npos);
  const std::string extra_column =
      "part,subpart,failure_mode,lambda_fit,sigma_lambda_fit,fmd_fraction,dc,sigma_dc,dc_latent,sigma_dc_latent,"
      "dc_source,sm_list,owner\nCPU,EXEC,FM1,100,0,,0.9,0.02,0,0,expert,,me\n";
  CHECK(parse_error_at(extra_column) != "no error");
  CHECK_THROWS_AS(parse_csv(kHeader + "CPU,EXEC,FM1,100,0,,0.9,0.02,0,0,expert,\n"
                                      "CPU,EXEC,FM1,10,0,,0.9,0.02,0,0,expert,\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_csv(kHeader + "CPU,EXEC,FM1,100,0,,1.2,0.02,0,0,expert,\n"), ValidationError);
}

TEST_CASE("csv: quoting, comments and distribution subparts") {
  const std::string text =
      "# version: fmeda-uq/1\n"
      "# asil_target: C\n" +
      kHeader +
      "\"RAM, bank 0\",ARRAY,,200,,,,,,,,\n"
      "\"RAM, bank 0\",ARRAY,stuck-at,,0.01,0.6,0.99,0,0.9,0,\"faultsim:e=0.01:cl=0.95\",\"SM_ECC;SM_\"\"X\"\"\"\n"
      "\"RAM, bank 0\",ARRAY,transient,,,0.4,0.9,0.01,0.5,0,expert,SM_ECC\n";
  const auto t = parse_csv(text);
  CHECK(t.asil_target == Asil::C);
  const auto& sub = t.parts.at(0).subparts.at(0);
  CHECK(t.parts[0].name == "RAM, bank 0");
  CHECK(sub.fmd_mode == FmdMode::Distribution);
  CHECK(sub.lambda_subpart == 200.0);
  REQUIRE(sub.failure_modes.size() == 2);
  CHECK(sub.failure_modes[0].lambda_fm == doctest::Approx(120.0));
  CHECK(sub.failure_modes[0].sigma_lambda_fm == doctest::Approx(2.0));
  CHECK(sub.failure_modes[0].safety_mechanisms == std::vector<std::string>{"SM_ECC", "SM_\"X\""});
  const auto& fs = std::get<FaultSimulation>(sub.failure_modes[0].dc_source);
  CHECK(fs.margin == 0.01);
  CHECK(fs.confidence == ConfidenceLevel::P95);
  CHECK(parse_csv(emit_csv(t)) == t);
}

TEST_CASE("json: equivalent to the csv form") {
  const auto csv = parse_csv(kHeader + "CPU,EXEC,FM1,100,0,,0.9,0.02,0,0,expert,\n");
  const auto json = parse_json(R"({"version": "fmeda-uq/1", "parts": [{"name": "CPU", "subparts": [
    {"name": "EXEC", "fmd_mode": "DirectLambda", "failure_modes": [
      {"name": "FM1", "lambda_fit": 100, "dc": 0.9, "sigma_dc": 0.02, "dc_source": "expert"}]}]}]})");
  CHECK(json == csv);
}

TEST_CASE("json: distribution fractions must sum to one") {
  const std::string doc = R"({"version": "fmeda-uq/1", "parts": [{"name": "P", "subparts": [
    {"name": "S", "fmd_mode": "Distribution", "lambda_fit": 100, "failure_modes": [
      {"name": "A", "fmd_fraction": 0.5, "dc": 0.9, "dc_source": "expert"},
      {"name": "B", "fmd_fraction": 0.4, "dc": 0.9, "dc_source": "expert"}]}]}]})";
  try {
    parse_json(doc);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    bool found = false;
    for (const auto& v : e.violations()) found = found || v.rule == "fmd-sum";
    CHECK(found);
  }
}

TEST_CASE("json: schema errors name the offending key") {
  CHECK(parse_error_at(R"({"version": "fmeda-uq/1", "parts": [{"name": "P", "subparts": [
    {"name": "S", "failure_modes": [{"name": "A", "lambda_fit": 1, "dc": 0.9, "dc_source": "expert",
     "colour": "red"}]}]}]})")
            .find("colour") != std::string::npos);
  CHECK(parse_error_at(R"({"version": "fmeda-uq/2", "parts": []})") != "no error");
  CHECK(parse_error_at("{\"parts\": [\n,]}") .rfind("2:", 0) == 0);
}

TEST_CASE("property: parse(emit(table)) round-trips in both formats") {
  testing::TableGenerator gen(61);
  for (int trial = 0; trial < 100; ++trial) {
    auto t = gen.table(testing::acceptance_shape());
    if (trial % 3 == 0) t.asil_target = Asil::D;
    if (trial % 4 == 0) t.parts[0].subparts[0].failure_modes[0].dc_source = FaultSimulation{0.02, ConfidenceLevel::P99};
    if (trial % 5 == 0) t.parts[0].subparts[0].failure_modes[0].safety_mechanisms = {"SM, one", "SM\"two\""};
    CHECK(parse_csv(emit_csv(t)) == t);
    CHECK(parse_json(emit_json(t)) == t);
    CHECK(emit_csv(parse_csv(emit_csv(t))) == emit_csv(t));
  }
}

TEST_CASE("emit_csv refuses tables it cannot carry") {
  testing::TableGenerator gen(63);
  auto t = gen.table(testing::acceptance_shape());
  CHECK_FALSE(csv_unrepresentable(t).has_value());
  auto custom_id = t;
  custom_id.parts[0].subparts[0].failure_modes[0].id = "X-1";
  CHECK(csv_unrepresentable(custom_id).has_value());
  CHECK_THROWS_AS(emit_csv(custom_id), ParameterError);
  CHECK(parse_json(emit_json(custom_id)) == custom_id);
  auto semicolon = t;
  semicolon.parts[0].subparts[0].failure_modes[0].safety_mechanisms = {"A;B"};
  CHECK_THROWS_AS(emit_csv(semicolon), ParameterError);
}

TEST_CASE("fixture corpus round-trips") {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(FMEDA_FIXTURE_DIR)) {
    CAPTURE(entry.path().string());
    const auto t = parse_table(read_file(entry.path().string()));
    CHECK(parse_json(emit_json(t)) == t);
    if (entry.path().extension() == ".csv") CHECK(parse_csv(emit_csv(t)) == t);
    ++count;
  }
  CHECK(count >= 20);
}

TEST_CASE("csv and json inputs give byte-identical result documents") {
  testing::TableGenerator gen(62);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = gen.table(testing::small_sigma_shape());
    const auto a = emit_result(analyze(parse_csv(emit_csv(t))), OutputFormat::Json);
    const auto b = emit_result(analyze(parse_json(emit_json(t))), OutputFormat::Json);
    CHECK(a == b);
  }
}

TEST_CASE("result documents") {
  const auto t = parse_table(read_file(FMEDA_FIXTURE_DIR "/worked_two_fm.csv"));
  AnalysisOptions options;
  options.asil = Asil::B;
  const auto result = analyze(t, options);

  const auto text = emit_result(result, OutputFormat::Json);
  const auto json = nlohmann::json::parse(text);
  CHECK(json["spfm"]["value"].get<double>() == doctest::Approx(0.945).epsilon(1e-12));
  // Canonical form: sorted keys, two-space indent.
  CHECK(json.dump(2) + "\n" == text);

  const auto md = emit_result(result, OutputFormat::Markdown);
  CHECK(md.find("100.00") != std::string::npos);
  CHECK(md.find("99.75") != std::string::npos);

  const auto csv = emit_result(result, OutputFormat::Csv);
  CHECK(csv.find("CPU/EXEC/FM1") != std::string::npos);
}

TEST_CASE("a zero sigma gives a zero-width interval in the result") {
  const auto t = parse_csv(kHeader + "CPU,EXEC,FM1,100,0,,0.9,0,0.5,0,expert,\n");
  const auto json = nlohmann::json::parse(emit_result(analyze(t), OutputFormat::Json));
  CHECK(json["spfm"]["interval"]["lo"] == json["spfm"]["interval"]["hi"]);
  CHECK(json["spfm"]["sigma"]["full"].get<double>() == 0.0);
}

TEST_CASE("round_sig12") {
  CHECK(round_sig12(0.1234567890123456) == 0.123456789012);
  CHECK(round_sig12(0.0) == 0.0);
  CHECK(round_sig12(123456789012345.0) == 123456789012000.0);
}
