#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmeda {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter outside its documented domain (confidence level, margin, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A metric that has no value for the given table (zero denominator).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

/// One broken structural invariant of an FMEDA table.
struct Violation {
  std::string location;  // e.g. "CPU/EXEC/FM1.dc"
  std::string rule;      // e.g. "dc-range"
  std::string observed;  // offending value, rendered as text

  bool operator==(const Violation&) const = default;
};

std::string to_string(const Violation& v);

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Malformed input text. Line numbers are 1-based; column is the schema
/// column (CSV) or JSON pointer-ish path (JSON) where the problem was found.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::string column_;
};

}  // namespace fmeda
