#include "ingest_common.hpp"

#include <charconv>
#include <cmath>

namespace fmeda {

namespace {

std::string_view trim_view(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  text = trim_view(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<DcSource> parse_dc_source(std::string_view text) {
  text = trim_view(text);
  if (text == "expert") return ExpertJudgment{};
  constexpr std::string_view prefix = "faultsim:e=";
  if (!text.starts_with(prefix)) return std::nullopt;
  text.remove_prefix(prefix.size());
  const auto sep = text.find(":cl=");
  if (sep == std::string_view::npos) return std::nullopt;
  const auto margin = parse_number(text.substr(0, sep));
  const auto level = parse_number(text.substr(sep + 4));
  if (!margin || !level) return std::nullopt;
  const auto confidence = confidence_from_probability(*level);
  if (!confidence) return std::nullopt;
  return FaultSimulation{*margin, *confidence};
}

std::string format_dc_source(const DcSource& source) {
  if (const auto* sim = std::get_if<FaultSimulation>(&source)) {
    return "faultsim:e=" + format_number(sim->margin) + ":cl=" + to_string(sim->confidence);
  }
  return "expert";
}

std::vector<std::string> split_mechanisms(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const auto sep = text.find(';');
    const auto item = trim_view(text.substr(0, sep));
    if (!item.empty()) out.emplace_back(item);
    if (sep == std::string_view::npos) break;
    text.remove_prefix(sep + 1);
  }
  return out;
}

std::string join_mechanisms(const std::vector<std::string>& mechanisms) {
  std::string out;
  for (const auto& m : mechanisms) {
    if (!out.empty()) out += ';';
    out += m;
  }
  return out;
}

}  // namespace fmeda
