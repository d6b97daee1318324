#pragma once

#include <optional>
#include <string>

namespace fmeda {

/// Two-sided confidence levels supported throughout the tool.
enum class ConfidenceLevel { P90, P95, P99 };

/// Standard-normal two-sided cut-off, carried to 5 significant digits.
constexpr double cutoff(ConfidenceLevel level) noexcept {
  switch (level) {
    case ConfidenceLevel::P90:
      return 1.6449;
    case ConfidenceLevel::P95:
      return 1.9600;
    case ConfidenceLevel::P99:
      return 2.5758;
  }
  return 0.0;
}

constexpr double probability(ConfidenceLevel level) noexcept {
  switch (level) {
    case ConfidenceLevel::P90:
      return 0.90;
    case ConfidenceLevel::P95:
      return 0.95;
    case ConfidenceLevel::P99:
      return 0.99;
  }
  return 0.0;
}

/// Maps 0.90 / 0.95 / 0.99 (within 1e-9) to a level; nullopt otherwise.
std::optional<ConfidenceLevel> confidence_from_probability(double p) noexcept;

/// Same as confidence_from_probability but throws ParameterError.
ConfidenceLevel require_confidence(double p);

/// "0.90", "0.95", "0.99"
std::string to_string(ConfidenceLevel level);

}  // namespace fmeda
