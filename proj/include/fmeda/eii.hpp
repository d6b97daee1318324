#pragma once

// Error Importance Identifier: which input uncertainty dominates sigma_SPFM.
//
// For DC inputs        raw = lambda_i^2 sigma_DC_i^2 / (lambda_tot^2 sigma_SPFM)
// For lambda inputs    raw = (1-DC_i)^2 sigma_lambda_i^2 / (lambda_tot^2 sigma_SPFM)
//
// raw_eii divides by sigma_SPFM to the first power and therefore does not sum
// to anything meaningful. variance_share divides the same numerators by
// lambda_tot^2 sigma_SPFM^2, so shares partition the variance and sum to 1.
// Both orderings are identical.

#include <string>
#include <vector>

#include "fmeda/model.hpp"

namespace fmeda {

enum class InputKind { DC, LambdaFm };

std::string to_string(InputKind kind);

struct EiiEntry {
  std::size_t row_index = 0;  // position in row-order flattening
  std::string failure_mode_id;
  InputKind input = InputKind::DC;
  double raw_eii = 0.0;
  double variance_share = 0.0;
  double percent = 0.0;
};

struct EiiTable {
  std::vector<EiiEntry> entries;  // descending by variance_share, ties in table order
  std::string note;               // set when there is nothing to attribute
};

inline constexpr const char* kNoUncertaintyNote = "no uncertainty to attribute";

/// One entry per (failure mode, input kind) with a nonzero sigma.
/// Returns an empty table with kNoUncertaintyNote when sigma_SPFM is zero.
EiiTable eii_table(const FmedaTable& table);

struct ModeTotal {
  std::string failure_mode_id;
  double percent = 0.0;

  bool operator==(const ModeTotal&) const = default;
};

/// Per failure mode, the sum of its DC and lambda percents, in first-seen
/// order of the entries.
std::vector<ModeTotal> total_per_failure_mode(const std::vector<EiiEntry>& entries);

/// As above, but one total per row of `table` (zero for rows with no entry),
/// in table order.
std::vector<ModeTotal> total_per_failure_mode(const FmedaTable& table, const std::vector<EiiEntry>& entries);

}  // namespace fmeda
