#include "fmeda/confidence.hpp"

#include <cmath>

#include "fmeda/error.hpp"

namespace fmeda {

std::optional<ConfidenceLevel> confidence_from_probability(double p) noexcept {
  for (auto level : {ConfidenceLevel::P90, ConfidenceLevel::P95, ConfidenceLevel::P99}) {
    if (std::abs(p - probability(level)) <= 1e-9) return level;
  }
  return std::nullopt;
}

ConfidenceLevel require_confidence(double p) {
  if (auto level = confidence_from_probability(p)) return *level;
  throw ParameterError("unsupported confidence level " + std::to_string(p) +
                       " (expected 0.90, 0.95 or 0.99)");
}

std::string to_string(ConfidenceLevel level) {
  switch (level) {
    case ConfidenceLevel::P90:
      return "0.90";
    case ConfidenceLevel::P95:
      return "0.95";
    case ConfidenceLevel::P99:
      return "0.99";
  }
  return "?";
}

}  // namespace fmeda
