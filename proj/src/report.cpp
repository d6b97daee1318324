#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "fmeda/ingest.hpp"

namespace fmeda {

namespace {

using nlohmann::json;

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_sig12(v);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string pct(double fraction_percent) { return fixed(fraction_percent, 2) + "%"; }

json metric_json(const MetricReport& m) {
  json j;
  j["value"] = num(m.value);
  j["sigma"] = {{"full", num(m.sigma.full)},
                {"dc_only", num(m.sigma.dc_only)},
                {"lambda_only", num(m.sigma.lambda_only)}};
  j["sigma_selected"] = num(m.sigma_selected);
  j["interval"] = {{"lo", num(m.interval.lo)}, {"hi", num(m.interval.hi)}, {"clamped", m.interval.clamped}};
  j["threshold"] = m.threshold ? num(*m.threshold) : json(nullptr);
  j["verdict"] = m.verdict ? json(to_string(*m.verdict)) : json(nullptr);
  return j;
}

std::string result_json(const AnalysisResult& r) {
  json doc;
  doc["version"] = kFormatVersion;
  doc["lambda_tot"] = num(r.lambda_tot);
  doc["propagation_mode"] = to_string(r.mode);
  doc["confidence_level"] = num(probability(r.confidence));
  doc["k"] = num(r.k);
  doc["spfm"] = metric_json(r.spfm);
  doc["lfm"] = r.lfm ? metric_json(*r.lfm) : json(nullptr);
  doc["lfm_note"] = r.lfm_note;
  doc["asil_target"] = r.asil_target ? json(to_string(*r.asil_target)) : json(nullptr);
  doc["verdict"] = r.verdict ? json(to_string(*r.verdict)) : json(nullptr);

  json entries = json::array();
  for (const auto& e : r.eii.entries) {
    entries.push_back({{"failure_mode_id", e.failure_mode_id},
                       {"input", to_string(e.input)},
                       {"raw_eii", num(e.raw_eii)},
                       {"variance_share", num(e.variance_share)},
                       {"percent", num(e.percent)}});
  }
  doc["eii"] = {{"entries", std::move(entries)}, {"note", r.eii.note}};

  json modes = json::array();
  for (const auto& m : r.modes) {
    modes.push_back({{"id", m.id},
                     {"name", m.name},
                     {"part", m.part},
                     {"subpart", m.subpart},
                     {"lambda_fit", num(m.inputs.lambda)},
                     {"sigma_lambda_fit", num(m.inputs.sigma_lambda)},
                     {"dc", num(m.inputs.dc)},
                     {"sigma_dc", num(m.inputs.sigma_dc)},
                     {"dc_latent", num(m.inputs.dc_latent)},
                     {"sigma_dc_latent", num(m.inputs.sigma_dc_latent)},
                     {"eii_dc_percent", num(m.eii_dc_percent)},
                     {"eii_lambda_percent", num(m.eii_lambda_percent)},
                     {"eii_total_percent", num(m.eii_total_percent)}});
  }
  doc["failure_modes"] = std::move(modes);
  return doc.dump(2) + "\n";
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

void md_metric(std::string& out, const std::string& label, const MetricReport& m) {
  out += "| " + label + " | " + fixed(m.value, 6) + " | " + general(m.sigma.full) + " | " + general(m.sigma.dc_only) +
         " | " + general(m.sigma.lambda_only) + " | [" + fixed(m.interval.lo, 6) + ", " + fixed(m.interval.hi, 6) + "]" +
         (m.interval.clamped ? " (clamped)" : "") + " | " +
         (m.threshold ? fixed(*m.threshold, 2) : std::string("-")) + " | " +
         (m.verdict ? to_string(*m.verdict) : std::string("-")) + " |\n";
}

std::string result_markdown(const AnalysisResult& r) {
  std::string out = "# FMEDA uncertainty report\n\n";
  out += "- Total failure rate: " + general(r.lambda_tot) + " FIT\n";
  out += "- Confidence level: " + to_string(r.confidence) + " (k = " + fixed(r.k, 4) + ")\n";
  out += "- Interval sigma: " + to_string(r.mode) + "\n";
  out += "- ASIL target: " + (r.asil_target ? to_string(*r.asil_target) : std::string("none")) + "\n";
  out += "- Verdict: " + (r.verdict ? to_string(*r.verdict) : std::string("n/a")) + "\n\n";

  out += "## Metrics\n\n";
  out += "| Metric | Value | sigma (full) | sigma (DC only) | sigma (lambda only) | Interval | Threshold | Verdict |\n";
  out += "|---|---|---|---|---|---|---|---|\n";
  md_metric(out, "SPFM", r.spfm);
  if (r.lfm) {
    md_metric(out, "LFM", *r.lfm);
  } else {
    out += "| LFM | undefined | - | - | - | - | - | - |\n";
  }
  if (!r.lfm_note.empty()) out += "\n" + r.lfm_note + "\n";

  out += "\n## Error importance distribution\n\n";
  out += "| Failure mode | lambda_fm (FIT) | sigma_lambda_fm (FIT) | DC | sigma_DC | EII from sigma_DC | EII from sigma_lambda_fm | Total EII |\n";
  out += "|---|---|---|---|---|---|---|---|\n";
  double dc_sum = 0.0, lambda_sum = 0.0, total_sum = 0.0;
  for (const auto& m : r.modes) {
    out += "| " + md_escape(m.id) + " | " + general(m.inputs.lambda) + " | " + general(m.inputs.sigma_lambda) + " | " +
           general(m.inputs.dc) + " | " + general(m.inputs.sigma_dc) + " | " + pct(m.eii_dc_percent) + " | " +
           pct(m.eii_lambda_percent) + " | " + pct(m.eii_total_percent) + " |\n";
    dc_sum += m.eii_dc_percent;
    lambda_sum += m.eii_lambda_percent;
    total_sum += m.eii_total_percent;
  }
  out += "| **Total** | " + general(r.lambda_tot) + " | | | | " + pct(dc_sum) + " | " + pct(lambda_sum) + " | " +
         pct(total_sum) + " |\n";
  if (!r.eii.note.empty()) out += "\nNote: " + r.eii.note + "\n";
  return out;
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_metric(std::string& out, const std::string& label, const MetricReport& m) {
  out += label + "," + csv_number(m.value) + "," + csv_number(m.sigma.full) + "," + csv_number(m.sigma.dc_only) + "," +
         csv_number(m.sigma.lambda_only) + "," + csv_number(m.interval.lo) + "," + csv_number(m.interval.hi) + "," +
         (m.interval.clamped ? "true" : "false") + "," + (m.threshold ? csv_number(*m.threshold) : "") + "," +
         (m.verdict ? to_string(*m.verdict) : "") + "\n";
}

std::string result_csv(const AnalysisResult& r) {
  std::string out =
      "metric,value,sigma_full,sigma_dc_only,sigma_lambda_only,interval_lo,interval_hi,clamped,threshold,verdict\n";
  csv_metric(out, "SPFM", r.spfm);
  if (r.lfm) csv_metric(out, "LFM", *r.lfm);
  out += "\nfailure_mode,lambda_fit,sigma_lambda_fit,dc,sigma_dc,eii_dc_percent,eii_lambda_percent,eii_total_percent\n";
  for (const auto& m : r.modes) {
    out += csv_text(m.id) + "," + csv_number(m.inputs.lambda) + "," + csv_number(m.inputs.sigma_lambda) + "," +
           csv_number(m.inputs.dc) + "," + csv_number(m.inputs.sigma_dc) + "," + csv_number(m.eii_dc_percent) + "," +
           csv_number(m.eii_lambda_percent) + "," + csv_number(m.eii_total_percent) + "\n";
  }
  return out;
}

}  // namespace

double round_sig12(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

std::optional<OutputFormat> output_format_from_string(std::string_view text) noexcept {
  if (text == "json") return OutputFormat::Json;
  if (text == "markdown" || text == "md") return OutputFormat::Markdown;
  if (text == "csv") return OutputFormat::Csv;
  return std::nullopt;
}

std::string emit_result(const AnalysisResult& result, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json:
      return result_json(result);
    case OutputFormat::Markdown:
      return result_markdown(result);
    case OutputFormat::Csv:
      return result_csv(result);
  }
  return {};
}

std::string emit_verdicts(const std::vector<McVerdict>& verdicts) {
  json doc;
  doc["version"] = kFormatVersion;
  json list = json::array();
  bool all_pass = true;
  for (const auto& v : verdicts) {
    list.push_back({{"metric", to_string(v.metric)},
                    {"empirical_sigma", num(v.empirical_sigma)},
                    {"analytic_sigma", num(v.analytic_sigma)},
                    {"relative_gap", num(v.relative_gap)},
                    {"tolerance", num(v.tolerance)},
                    {"pass", v.pass},
                    {"truncation_rate", num(v.truncation_rate)},
                    {"samples", v.samples},
                    {"seed", v.seed},
                    {"rng", v.rng},
                    {"warning", v.warning}});
    all_pass = all_pass && v.pass;
  }
  doc["verdicts"] = std::move(list);
  doc["pass"] = all_pass;
  return doc.dump(2) + "\n";
}

std::string emit_plan_json(const SampleSizePlan& plan) {
  json doc = {{"version", kFormatVersion},
              {"population", plan.population},
              {"proportion", num(plan.proportion)},
              {"margin", num(plan.margin)},
              {"confidence_level", num(probability(plan.confidence))},
              {"cutoff", num(plan.cutoff)},
              {"sample_size", plan.sample_size},
              {"unrounded", num(plan.unrounded)}};
  return doc.dump(2) + "\n";
}

std::string emit_plan_text(const SampleSizePlan& plan) {
  std::string out;
  out += "population:       " + std::to_string(plan.population) + "\n";
  out += "margin:           " + format_number(plan.margin) + "\n";
  out += "confidence level: " + to_string(plan.confidence) + " (t = " + fixed(plan.cutoff, 4) + ")\n";
  out += "proportion:       " + format_number(plan.proportion) + "\n";
  out += "sample size:      " + std::to_string(plan.sample_size) + "\n";
  return out;
}

}  // namespace fmeda
