#pragma once

// Hierarchical FMEDA table: part -> subpart -> failure mode.
//
// Rates are in FIT (failures per 1e9 device-hours). Coverages are fractions
// in [0,1]. The canonical per-mode rate is always `lambda_fm` in FIT; when a
// subpart is authored as a failure-mode distribution the authored fractions
// are kept in `fmd` so they survive serialization.

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fmeda/confidence.hpp"
#include "fmeda/error.hpp"

namespace fmeda {

struct ExpertJudgment {
  bool operator==(const ExpertJudgment&) const = default;
};

/// DC measured by a statistical fault-injection campaign.
struct FaultSimulation {
  double margin = 0.0;  // e, half-width of the campaign estimate
  ConfidenceLevel confidence = ConfidenceLevel::P95;

  bool operator==(const FaultSimulation&) const = default;
};

using DcSource = std::variant<ExpertJudgment, FaultSimulation>;

/// Failure-mode distribution share as authored (fraction of lambda_subpart).
struct FmdShare {
  double fraction = 0.0;
  double sigma = 0.0;

  bool operator==(const FmdShare&) const = default;
};

struct FailureModeRow {
  std::string id;
  std::string name;
  double lambda_fm = 0.0;        // FIT
  double sigma_lambda_fm = 0.0;  // FIT
  double dc = 0.0;
  double sigma_dc = 0.0;
  double dc_latent = 0.0;
  double sigma_dc_latent = 0.0;
  DcSource dc_source = ExpertJudgment{};
  std::vector<std::string> safety_mechanisms;
  std::optional<FmdShare> fmd;

  bool operator==(const FailureModeRow&) const = default;
};

enum class FmdMode { DirectLambda, Distribution };

struct Subpart {
  std::string name;
  std::optional<double> lambda_subpart;  // FIT
  FmdMode fmd_mode = FmdMode::DirectLambda;
  std::vector<FailureModeRow> failure_modes;

  bool operator==(const Subpart&) const = default;
};

struct Part {
  std::string name;
  std::vector<Subpart> subparts;

  bool operator==(const Part&) const = default;
};

enum class Asil { A, B, C, D };

std::string to_string(Asil asil);
std::optional<Asil> asil_from_string(std::string_view text) noexcept;

struct FmedaTable {
  std::vector<Part> parts;
  std::optional<Asil> asil_target;

  bool operator==(const FmedaTable&) const = default;
};

/// The numeric inputs of one failure mode, flattened out of the hierarchy.
/// This is the form every numeric kernel works on.
struct ModeInputs {
  double lambda = 0.0;
  double sigma_lambda = 0.0;
  double dc = 0.0;
  double sigma_dc = 0.0;
  double dc_latent = 0.0;
  double sigma_dc_latent = 0.0;
};

/// Absolute tolerance on the sum of FMD fractions of one subpart.
inline constexpr double kFmdSumTolerance = 1e-9;
/// Relative tolerance between lambda_subpart and the sum of its direct rates.
inline constexpr double kSubpartSumTolerance = 1e-9;

/// Every broken invariant; empty iff the table is valid. Pure.
std::vector<Violation> validate(const FmedaTable& table);

/// Throws ValidationError if validate() reports anything.
void require_valid(const FmedaTable& table);

/// Sum of lambda_fm over every failure mode. Throws ValidationError on an
/// invalid table.
double total_lambda(const FmedaTable& table);

/// Row-order flattening of all failure modes. Does not validate.
std::vector<ModeInputs> flatten(const FmedaTable& table);

/// Row-order view of (part, subpart, row) for reporting.
struct RowRef {
  const Part* part;
  const Subpart* subpart;
  const FailureModeRow* row;
};
std::vector<RowRef> rows(const FmedaTable& table);

/// For Distribution subparts, recompute lambda_fm = lambda_subpart * fraction
/// and sigma_lambda_fm = lambda_subpart * sigma_fraction.
void derive_distribution_rates(FmedaTable& table);

/// Materializes every Distribution subpart as DirectLambda (drops the
/// authored fractions and the subpart total).
FmedaTable to_direct_lambda(FmedaTable table);

/// Default identifier of a failure mode: "part/subpart/name".
std::string default_id(std::string_view part, std::string_view subpart, std::string_view mode);

/// Shortest round-trip decimal rendering of a double.
std::string format_number(double value);

}  // namespace fmeda
