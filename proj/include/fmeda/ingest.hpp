#pragma once

// Text formats of the tool.
//
// Tables (input):
//   CSV, flat, one row per failure mode, columns in this exact order:
//     part, subpart, failure_mode, lambda_fit, sigma_lambda_fit, fmd_fraction,
//     dc, sigma_dc, dc_latent, sigma_dc_latent, dc_source, sm_list
//   A row with an empty failure_mode cell declares the subpart rate
//   (lambda_fit only). Rows with fmd_fraction put their subpart in
//   distribution mode; sigma_lambda_fit then holds the sigma of the fraction.
//   Lines starting with '#' before the header are comments; "# asil_target: B"
//   and "# version: fmeda-uq/1" are recognized.
//
//   JSON, nested parts -> subparts -> failure_modes, "version": "fmeda-uq/1".
//
// Results (output): JSON with sorted keys and 12 significant digits,
// Markdown report, or CSV.

#include <string>
#include <string_view>
#include <vector>

#include "fmeda/analysis.hpp"
#include "fmeda/mc_oracle.hpp"
#include "fmeda/model.hpp"
#include "fmeda/sampling.hpp"

namespace fmeda {

inline constexpr const char* kFormatVersion = "fmeda-uq/1";

/// The CSV schema, in column order.
const std::vector<std::string>& csv_columns();

/// Throws ParseError on malformed text and ValidationError when the parsed
/// table breaks an invariant.
FmedaTable parse_csv(std::string_view text);
FmedaTable parse_json(std::string_view text);

/// Dispatches on the first non-space character ('{' means JSON).
FmedaTable parse_table(std::string_view text);

/// Table serializers; numbers use the shortest round-trip representation so
/// parse(emit(t)) == t. The CSV schema has no id column and a ';'-joined
/// mechanism list, so emit_csv throws ParameterError on tables it cannot
/// carry losslessly.
std::string emit_csv(const FmedaTable& table);
std::string emit_json(const FmedaTable& table);

/// Why the table cannot be written as CSV, or nullopt if it can.
std::optional<std::string> csv_unrepresentable(const FmedaTable& table);

enum class OutputFormat { Json, Markdown, Csv };

std::optional<OutputFormat> output_format_from_string(std::string_view text) noexcept;

std::string emit_result(const AnalysisResult& result, OutputFormat format);

/// JSON document for one or more Monte Carlo verdicts.
std::string emit_verdicts(const std::vector<McVerdict>& verdicts);

std::string emit_plan_json(const SampleSizePlan& plan);
std::string emit_plan_text(const SampleSizePlan& plan);

/// Rounds to 12 significant digits (the result-document precision).
double round_sig12(double value);

}  // namespace fmeda
