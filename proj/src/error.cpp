#include "fmeda/error.hpp"

namespace fmeda {

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string msg = "table failed validation with " + std::to_string(violations.size()) +
                    " violation(s)";
  for (const auto& v : violations) {
    msg += "\n  ";
    msg += to_string(v);
  }
  return msg;
}

std::string locate(std::size_t line, const std::string& column, const std::string& message) {
  std::string msg = "line " + std::to_string(line);
  if (!column.empty()) msg += ", column \"" + column + "\"";
  return msg + ": " + message;
}

}  // namespace

std::string to_string(const Violation& v) {
  return v.location + ": " + v.rule + " (observed " + v.observed + ")";
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

ParseError::ParseError(std::size_t line, std::string column, const std::string& message)
    : Error(locate(line, column, message)), line_(line), column_(std::move(column)) {}

}  // namespace fmeda
