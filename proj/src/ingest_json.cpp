#include <algorithm>
#include <cmath>
#include <initializer_list>

#include <json.hpp>

#include "fmeda/ingest.hpp"
#include "ingest_common.hpp"

namespace fmeda {

namespace {

using nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw ParseError(0, path, message);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      schema_error(path + "." + key, "unknown key");
    }
  }
}

const json& object_at(const json& parent, const std::string& key, const std::string& path) {
  if (!parent.contains(key)) schema_error(path + "." + key, "key is required");
  return parent.at(key);
}

std::string string_at(const json& parent, const std::string& key, const std::string& path) {
  const json& v = object_at(parent, key, path);
  if (!v.is_string()) schema_error(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::optional<double> optional_number(const json& parent, const std::string& key, const std::string& path) {
  if (!parent.contains(key) || parent.at(key).is_null()) return std::nullopt;
  const json& v = parent.at(key);
  if (!v.is_number()) schema_error(path + "." + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(path + "." + key, "expected a finite number");
  return d;
}

double required_number(const json& parent, const std::string& key, const std::string& path) {
  auto v = optional_number(parent, key, path);
  if (!v) schema_error(path + "." + key, "key is required");
  return *v;
}

const json& array_at(const json& parent, const std::string& key, const std::string& path) {
  const json& v = object_at(parent, key, path);
  if (!v.is_array()) schema_error(path + "." + key, "expected an array");
  return v;
}

void require_object(const json& v, const std::string& path) {
  if (!v.is_object()) schema_error(path, "expected an object");
}

FailureModeRow parse_mode(const json& j, const std::string& path, const std::string& part,
                          const std::string& subpart, bool& has_direct, bool& has_fmd) {
  require_object(j, path);
  reject_unknown(j, path,
                 {"id", "name", "lambda_fit", "sigma_lambda_fit", "fmd_fraction", "sigma_fmd", "dc", "sigma_dc",
                  "dc_latent", "sigma_dc_latent", "dc_source", "safety_mechanisms"});
  FailureModeRow fm;
  fm.name = string_at(j, "name", path);
  fm.id = j.contains("id") ? string_at(j, "id", path) : default_id(part, subpart, fm.name);

  const auto lambda = optional_number(j, "lambda_fit", path);
  const auto fraction = optional_number(j, "fmd_fraction", path);
  if (lambda.has_value() == fraction.has_value()) {
    schema_error(path, "exactly one of lambda_fit and fmd_fraction must be set");
  }
  if (lambda) {
    if (optional_number(j, "sigma_fmd", path)) schema_error(path + ".sigma_fmd", "only valid with fmd_fraction");
    has_direct = true;
    fm.lambda_fm = *lambda;
    fm.sigma_lambda_fm = optional_number(j, "sigma_lambda_fit", path).value_or(0.0);
  } else {
    if (optional_number(j, "sigma_lambda_fit", path)) {
      schema_error(path + ".sigma_lambda_fit", "use sigma_fmd with fmd_fraction");
    }
    has_fmd = true;
    fm.fmd = FmdShare{*fraction, optional_number(j, "sigma_fmd", path).value_or(0.0)};
  }
  fm.dc = required_number(j, "dc", path);
  fm.sigma_dc = optional_number(j, "sigma_dc", path).value_or(0.0);
  fm.dc_latent = optional_number(j, "dc_latent", path).value_or(0.0);
  fm.sigma_dc_latent = optional_number(j, "sigma_dc_latent", path).value_or(0.0);

  const std::string source_text = string_at(j, "dc_source", path);
  auto source = parse_dc_source(source_text);
  if (!source) schema_error(path + ".dc_source", "expected expert or faultsim:e=<e>:cl=<0.90|0.95|0.99>");
  fm.dc_source = *source;

  if (j.contains("safety_mechanisms")) {
    const json& sms = array_at(j, "safety_mechanisms", path);
    for (std::size_t i = 0; i < sms.size(); ++i) {
      if (!sms[i].is_string()) schema_error(path + ".safety_mechanisms[" + std::to_string(i) + "]", "expected a string");
      fm.safety_mechanisms.push_back(sms[i].get<std::string>());
    }
  }
  return fm;
}

Subpart parse_subpart(const json& j, const std::string& path, const std::string& part) {
  require_object(j, path);
  reject_unknown(j, path, {"name", "lambda_fit", "fmd_mode", "failure_modes"});
  Subpart sub;
  sub.name = string_at(j, "name", path);
  sub.lambda_subpart = optional_number(j, "lambda_fit", path);

  bool has_direct = false;
  bool has_fmd = false;
  const json& modes = array_at(j, "failure_modes", path);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    sub.failure_modes.push_back(
        parse_mode(modes[i], path + ".failure_modes[" + std::to_string(i) + "]", part, sub.name, has_direct, has_fmd));
  }
  if (has_direct && has_fmd) schema_error(path, "subpart mixes direct rates and FMD fractions");

  if (j.contains("fmd_mode")) {
    const std::string mode = string_at(j, "fmd_mode", path);
    if (mode == "Distribution") {
      sub.fmd_mode = FmdMode::Distribution;
    } else if (mode == "DirectLambda") {
      sub.fmd_mode = FmdMode::DirectLambda;
    } else {
      schema_error(path + ".fmd_mode", "expected DirectLambda or Distribution");
    }
    if ((sub.fmd_mode == FmdMode::Distribution && has_direct) ||
        (sub.fmd_mode == FmdMode::DirectLambda && has_fmd)) {
      schema_error(path + ".fmd_mode", "does not match the failure-mode fields");
    }
  } else {
    sub.fmd_mode = has_fmd ? FmdMode::Distribution : FmdMode::DirectLambda;
  }
  return sub;
}

}  // namespace

FmedaTable parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_of(text, e.byte == 0 ? 0 : e.byte - 1), "", e.what());
  }
  require_object(doc, "$");
  reject_unknown(doc, "$", {"version", "asil_target", "parts"});

  FmedaTable table;
  const std::string version = string_at(doc, "version", "$");
  if (version != kFormatVersion) schema_error("$.version", "unsupported format version \"" + version + "\"");
  if (doc.contains("asil_target") && !doc.at("asil_target").is_null()) {
    const std::string level = string_at(doc, "asil_target", "$");
    table.asil_target = asil_from_string(level);
    if (!table.asil_target) schema_error("$.asil_target", "expected A, B, C or D");
  }

  const json& parts = array_at(doc, "parts", "$");
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const std::string path = "$.parts[" + std::to_string(p) + "]";
    require_object(parts[p], path);
    reject_unknown(parts[p], path, {"name", "subparts"});
    Part part;
    part.name = string_at(parts[p], "name", path);
    const json& subs = array_at(parts[p], "subparts", path);
    for (std::size_t s = 0; s < subs.size(); ++s) {
      part.subparts.push_back(parse_subpart(subs[s], path + ".subparts[" + std::to_string(s) + "]", part.name));
    }
    table.parts.push_back(std::move(part));
  }
  if (rows(table).empty()) throw ParseError(0, "$.parts", "no data rows");

  derive_distribution_rates(table);
  require_valid(table);
  return table;
}

std::string emit_json(const FmedaTable& table) {
  json doc;
  doc["version"] = kFormatVersion;
  doc["asil_target"] = table.asil_target ? json(to_string(*table.asil_target)) : json(nullptr);
  json parts = json::array();
  for (const auto& part : table.parts) {
    json jp;
    jp["name"] = part.name;
    jp["subparts"] = json::array();
    for (const auto& sub : part.subparts) {
      json js;
      js["name"] = sub.name;
      js["fmd_mode"] = sub.fmd_mode == FmdMode::Distribution ? "Distribution" : "DirectLambda";
      if (sub.lambda_subpart) js["lambda_fit"] = *sub.lambda_subpart;
      js["failure_modes"] = json::array();
      for (const auto& fm : sub.failure_modes) {
        json jf;
        jf["id"] = fm.id;
        jf["name"] = fm.name;
        if (sub.fmd_mode == FmdMode::Distribution && fm.fmd) {
          jf["fmd_fraction"] = fm.fmd->fraction;
          jf["sigma_fmd"] = fm.fmd->sigma;
        } else {
          jf["lambda_fit"] = fm.lambda_fm;
          jf["sigma_lambda_fit"] = fm.sigma_lambda_fm;
        }
        jf["dc"] = fm.dc;
        jf["sigma_dc"] = fm.sigma_dc;
        jf["dc_latent"] = fm.dc_latent;
        jf["sigma_dc_latent"] = fm.sigma_dc_latent;
        jf["dc_source"] = format_dc_source(fm.dc_source);
        jf["safety_mechanisms"] = fm.safety_mechanisms;
        js["failure_modes"].push_back(std::move(jf));
      }
      jp["subparts"].push_back(std::move(js));
    }
    parts.push_back(std::move(jp));
  }
  doc["parts"] = std::move(parts);
  return doc.dump(2) + "\n";
}

FmedaTable parse_table(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text);
  return parse_csv(text);
}

}  // namespace fmeda
