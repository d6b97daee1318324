#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmeda/model.hpp"

namespace fmeda {

/// Whole-string finite decimal; nullopt otherwise.
std::optional<double> parse_number(std::string_view text);

/// "expert" | "faultsim:e=<float>:cl=<0.90|0.95|0.99>"
std::optional<DcSource> parse_dc_source(std::string_view text);
std::string format_dc_source(const DcSource& source);

/// ';'-separated, entries trimmed, empty entries dropped.
std::vector<std::string> split_mechanisms(std::string_view text);
std::string join_mechanisms(const std::vector<std::string>& mechanisms);

}  // namespace fmeda
