// fmeda-uq: FMEDA metrics with uncertainty, campaign sizing and Monte Carlo
// verification.
//
// Exit codes
//   analyze      0 robust pass or no target, 2 fragile pass, 3 fail, 1 input error
//   sample-size  0 ok, 1 invalid parameters
//   verify       0 both checks pass, 4 oracle mismatch, 1 input error
//
// Standard output carries only the requested document; diagnostics go to
// standard error.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fmeda/analysis.hpp"
#include "fmeda/ingest.hpp"
#include "fmeda/mc_oracle.hpp"
#include "fmeda/sampling.hpp"
#include "fmeda/uncertainty.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitFragile = 2;
constexpr int kExitFail = 3;
constexpr int kExitOracleMismatch = 4;

struct AnalyzeArgs {
  std::string input;
  std::string format = "json";
  double confidence = 0.95;
  std::string mode = "full";
  std::string asil;
  std::optional<double> spfm_threshold;
  std::optional<double> lfm_threshold;
  bool no_faultsim_sigmas = false;
  bool stamp = false;
};

struct SampleSizeArgs {
  std::uint64_t population = 0;
  double margin = 0.0;
  double confidence = 0.95;
  double proportion = 0.5;
  std::string format = "json";
};

struct VerifyArgs {
  std::string input;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  bool no_truncate = false;
  bool no_faultsim_sigmas = false;
  double analytic_scale = 1.0;  // test harness only: corrupts the analytic sigma
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fmeda::Error("cannot open input file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fmeda::FmedaTable load_table(const std::string& path) {
  const std::string text = read_input(path);
  if (path.ends_with(".json")) return fmeda::parse_json(text);
  if (path.ends_with(".csv")) return fmeda::parse_csv(text);
  return fmeda::parse_table(text);
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string stamp(const std::string& doc, fmeda::OutputFormat format, const std::string& input) {
  const std::string when = utc_now();
  switch (format) {
    case fmeda::OutputFormat::Json: {
      auto j = nlohmann::json::parse(doc);
      j["provenance"] = {{"tool", "fmeda-uq"}, {"tool_version", kToolVersion}, {"input", input},
                         {"generated_at", when}};
      return j.dump(2) + "\n";
    }
    case fmeda::OutputFormat::Markdown:
      return doc + "\n---\nGenerated by fmeda-uq " + kToolVersion + " from `" + input + "` at " + when + "\n";
    case fmeda::OutputFormat::Csv:
      return "# fmeda-uq " + std::string(kToolVersion) + ", input " + input + ", generated " + when + "\n" + doc;
  }
  return doc;
}

void report_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
}

int run_analyze(const AnalyzeArgs& args) {
  try {
    fmeda::AnalysisOptions options;
    options.confidence = fmeda::require_confidence(args.confidence);
    const auto mode = fmeda::propagation_mode_from_string(args.mode);
    if (!mode) throw fmeda::ParameterError("unknown propagation mode \"" + args.mode + "\"");
    options.mode = *mode;
    const auto format = fmeda::output_format_from_string(args.format);
    if (!format) throw fmeda::ParameterError("unknown output format \"" + args.format + "\"");
    if (!args.asil.empty()) {
      options.asil = fmeda::asil_from_string(args.asil);
      if (!options.asil) throw fmeda::ParameterError("unknown ASIL \"" + args.asil + "\"");
    }
    for (const auto& t : {args.spfm_threshold, args.lfm_threshold}) {
      if (t && !(*t >= 0.0 && *t <= 1.0)) throw fmeda::ParameterError("thresholds must lie in [0,1]");
    }
    options.spfm_threshold = args.spfm_threshold;
    options.lfm_threshold = args.lfm_threshold;
    options.apply_faultsim_sigmas = !args.no_faultsim_sigmas;

    const auto table = load_table(args.input);
    const auto result = fmeda::analyze(table, options);
    std::string doc = fmeda::emit_result(result, *format);
    if (args.stamp) doc = stamp(doc, *format, args.input);
    std::cout << doc;

    if (!result.verdict) return kExitOk;
    switch (*result.verdict) {
      case fmeda::Verdict::PassRobust:
        return kExitOk;
      case fmeda::Verdict::PassFragile:
        std::cerr << "warning: target met only at the nominal value; the confidence interval crosses the threshold\n";
        return kExitFragile;
      case fmeda::Verdict::Fail:
        std::cerr << "target not met\n";
        return kExitFail;
    }
    return kExitOk;
  } catch (const fmeda::Error& e) {
    report_error(e);
    return kExitInputError;
  }
}

int run_sample_size(const SampleSizeArgs& args) {
  try {
    const auto level = fmeda::require_confidence(args.confidence);
    if (args.format != "json" && args.format != "text") {
      throw fmeda::ParameterError("unknown output format \"" + args.format + "\" (json or text)");
    }
    const auto plan = fmeda::sample_size(args.population, args.margin, level, args.proportion);
    std::cout << (args.format == "json" ? fmeda::emit_plan_json(plan) : fmeda::emit_plan_text(plan));
    return kExitOk;
  } catch (const fmeda::Error& e) {
    report_error(e);
    return kExitInputError;
  }
}

int run_verify(const VerifyArgs& args) {
  try {
    if (args.samples < fmeda::kMinVerdictSamples) {
      throw fmeda::ParameterError("--samples must be at least " + std::to_string(fmeda::kMinVerdictSamples));
    }
    auto table = load_table(args.input);
    if (!args.no_faultsim_sigmas) table = fmeda::apply_faultsim_sigmas(std::move(table));

    fmeda::McConfig config;
    config.samples = args.samples;
    config.seed = args.seed;
    config.truncate = !args.no_truncate;

    const double total = fmeda::total_lambda(table);
    const auto modes = fmeda::flatten(table);
    std::vector<fmeda::McVerdict> verdicts;

    const auto spfm_estimate = fmeda::estimate_sigma(modes, total, fmeda::MetricKind::SPFM, config);
    const double spfm_sigma = fmeda::sigma_spfm(modes, total) * args.analytic_scale;
    verdicts.push_back(fmeda::judge(spfm_estimate, spfm_sigma, fmeda::kSpfmTolerance, config));

    if (fmeda::latent_pool(modes, total) > 0.0) {
      const auto lfm_estimate = fmeda::estimate_sigma(modes, total, fmeda::MetricKind::LFM, config);
      const double lfm_sigma = fmeda::sigma_lfm(modes, total) * args.analytic_scale;
      verdicts.push_back(fmeda::judge(lfm_estimate, lfm_sigma, fmeda::kLfmTolerance, config));
    } else {
      std::cerr << "note: LFM is undefined for this table; only SPFM was verified\n";
    }

    std::cout << fmeda::emit_verdicts(verdicts);
    bool pass = true;
    for (const auto& v : verdicts) {
      if (!v.warning.empty()) std::cerr << "warning (" << fmeda::to_string(v.metric) << "): " << v.warning << "\n";
      pass = pass && v.pass;
    }
    return pass ? kExitOk : kExitOracleMismatch;
  } catch (const fmeda::Error& e) {
    report_error(e);
    return kExitInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FMEDA hardware metrics with uncertainty propagation"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "SPFM/LFM with sigma, intervals, EII and ASIL verdict");
  cmd_analyze->add_option("--input", analyze.input, "FMEDA table (.csv or .json, - for stdin)")->required();
  cmd_analyze->add_option("--format", analyze.format, "json | markdown | csv")->capture_default_str();
  cmd_analyze->add_option("--confidence", analyze.confidence, "0.90 | 0.95 | 0.99")->capture_default_str();
  cmd_analyze->add_option("--mode", analyze.mode, "sigma driving intervals and verdict: full | dc-only | lambda-only")
      ->capture_default_str();
  cmd_analyze->add_option("--asil", analyze.asil, "target A | B | C | D (overrides the table)");
  cmd_analyze->add_option("--spfm-threshold", analyze.spfm_threshold, "override the SPFM target");
  cmd_analyze->add_option("--lfm-threshold", analyze.lfm_threshold, "override the LFM target");
  cmd_analyze->add_flag("--no-faultsim-sigmas", analyze.no_faultsim_sigmas,
                        "do not derive sigma_dc from fault-simulation margins");
  cmd_analyze->add_flag("--stamp", analyze.stamp, "add provenance metadata (tool version, time)");

  SampleSizeArgs sizing;
  auto* cmd_size = app.add_subcommand("sample-size", "faults to inject for a given margin and confidence");
  cmd_size->add_option("--population", sizing.population, "faults in the full fault list")->required();
  cmd_size->add_option("--margin", sizing.margin, "margin of error e in (0,1)")->required();
  cmd_size->add_option("--confidence", sizing.confidence, "0.90 | 0.95 | 0.99")->required();
  cmd_size->add_option("--proportion", sizing.proportion, "estimated proportion p in (0,1)")->capture_default_str();
  cmd_size->add_option("--format", sizing.format, "json | text")->capture_default_str();

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand("verify", "Monte Carlo check of the analytic sigma_SPFM and sigma_LFM");
  cmd_verify->add_option("--input", verify.input, "FMEDA table (.csv or .json, - for stdin)")->required();
  cmd_verify->add_option("--samples", verify.samples, "Monte Carlo samples")->capture_default_str();
  cmd_verify->add_option("--seed", verify.seed, "generator seed")->capture_default_str();
  cmd_verify->add_flag("--no-truncate", verify.no_truncate, "do not clamp draws to physical bounds");
  cmd_verify->add_flag("--no-faultsim-sigmas", verify.no_faultsim_sigmas,
                       "do not derive sigma_dc from fault-simulation margins");
  cmd_verify->add_option("--analytic-scale", verify.analytic_scale)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  if (cmd_analyze->parsed()) return run_analyze(analyze);
  if (cmd_size->parsed()) return run_sample_size(sizing);
  if (cmd_verify->parsed()) return run_verify(verify);
  return kExitInputError;
}
