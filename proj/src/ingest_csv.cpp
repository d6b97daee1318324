#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

#include "fmeda/ingest.hpp"
#include "ingest_common.hpp"

namespace fmeda {

namespace {

enum Column : std::size_t {
  kPart,
  kSubpart,
  kFailureMode,
  kLambda,
  kSigmaLambda,
  kFmd,
  kDc,
  kSigmaDc,
  kDcLatent,
  kSigmaDcLatent,
  kDcSource,
  kSmList,
  kColumnCount,
};

struct Field {
  std::string text;
  bool quoted = false;
};

struct Record {
  std::size_t line = 0;
  std::vector<Field> fields;
  bool comment = false;
  std::string raw;  // comment text, without the leading '#'
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

// RFC 4180 records; quoted fields may span lines. Lines whose first character
// is '#' are returned as comments.
std::vector<Record> read_records(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Record> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    Record rec;
    rec.line = line;
    if (text[i] == '#') {
      const auto end = text.find('\n', i);
      const auto stop = end == std::string_view::npos ? text.size() : end;
      std::string_view body = text.substr(i + 1, stop - i - 1);
      if (body.ends_with('\r')) body.remove_suffix(1);
      rec.comment = true;
      rec.raw = trim(body);
      out.push_back(std::move(rec));
      i = stop == text.size() ? stop : stop + 1;
      ++line;
      continue;
    }
    Field field;
    std::string pending;
    bool in_quotes = false;
    bool after_quote = false;
    bool record_done = false;
    auto finish_field = [&] {
      field.text = field.quoted ? field.text : trim(pending);
      rec.fields.push_back(std::move(field));
      field = Field{};
      pending.clear();
      after_quote = false;
    };
    while (i < text.size() && !record_done) {
      const char c = text[i++];
      if (in_quotes) {
        if (c == '"') {
          if (i < text.size() && text[i] == '"') {
            field.text += '"';
            ++i;
          } else {
            in_quotes = false;
            after_quote = true;
          }
        } else {
          if (c == '\n') ++line;
          field.text += c;
        }
        continue;
      }
      switch (c) {
        case '"':
          if (trim(pending).empty() && !field.quoted) {
            field.quoted = true;
            in_quotes = true;
            pending.clear();
          } else {
            throw ParseError(line, "", "unexpected quote inside an unquoted field");
          }
          break;
        case ',':
          finish_field();
          break;
        case '\r':
          break;
        case '\n':
          finish_field();
          ++line;
          record_done = true;
          break;
        default:
          if (after_quote && c != ' ' && c != '\t') {
            throw ParseError(line, "", "unexpected text after a closing quote");
          }
          pending += c;
      }
    }
    if (in_quotes) throw ParseError(rec.line, "", "unterminated quoted field");
    if (!record_done) finish_field();
    const bool blank = rec.fields.size() == 1 && !rec.fields[0].quoted && rec.fields[0].text.empty();
    if (!blank) out.push_back(std::move(rec));
  }
  return out;
}

class RowReader {
 public:
  explicit RowReader(const Record& rec) : rec_(rec) {}

  const std::string& text(Column c) const { return rec_.fields[c].text; }
  bool empty(Column c) const { return text(c).empty(); }

  [[noreturn]] void fail(Column c, const std::string& message) const {
    throw ParseError(rec_.line, csv_columns()[c], message);
  }

  double number(Column c) const {
    const auto value = parse_number(text(c));
    if (!value) fail(c, "expected a finite number, got \"" + text(c) + "\"");
    return *value;
  }

  double number_or_zero(Column c) const { return empty(c) ? 0.0 : number(c); }

  double required(Column c) const {
    if (empty(c)) fail(c, "value is required");
    return number(c);
  }

 private:
  const Record& rec_;
};

struct SubpartBuilder {
  Subpart subpart;
  std::optional<std::size_t> rate_line;
  bool has_direct = false;
  bool has_fmd = false;
};

struct PartBuilder {
  std::string name;
  std::vector<SubpartBuilder> subparts;
  std::map<std::string, std::size_t> index;
};

void apply_directive(const Record& rec, FmedaTable& table) {
  const auto colon = rec.raw.find(':');
  if (colon == std::string::npos) return;
  const std::string key = trim(std::string_view(rec.raw).substr(0, colon));
  const std::string value = trim(std::string_view(rec.raw).substr(colon + 1));
  if (key == "asil_target") {
    auto asil = asil_from_string(value);
    if (!asil) throw ParseError(rec.line, "asil_target", "expected A, B, C or D, got \"" + value + "\"");
    table.asil_target = asil;
  } else if (key == "version") {
    if (value != kFormatVersion) {
      throw ParseError(rec.line, "version", "unsupported format version \"" + value + "\"");
    }
  }
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "part", "subpart",   "failure_mode",    "lambda_fit", "sigma_lambda_fit", "fmd_fraction",
      "dc",   "sigma_dc",  "dc_latent",       "sigma_dc_latent", "dc_source",   "sm_list"};
  return columns;
}

FmedaTable parse_csv(std::string_view text) {
  const auto records = read_records(text);
  FmedaTable table;

  std::size_t next = 0;
  while (next < records.size() && records[next].comment) apply_directive(records[next++], table);
  if (next == records.size()) throw ParseError(1, "", "no data rows");

  const Record& header = records[next++];
  const auto& columns = csv_columns();
  for (std::size_t c = 0; c < header.fields.size(); ++c) {
    const auto& name = header.fields[c].text;
    if (c >= columns.size() || name != columns[c]) {
      const bool known = std::find(columns.begin(), columns.end(), name) != columns.end();
      throw ParseError(header.line, name,
                       known ? "column out of order (expected \"" + (c < columns.size() ? columns[c] : "") + "\")"
                             : "unknown column");
    }
  }
  if (header.fields.size() < columns.size()) {
    throw ParseError(header.line, columns[header.fields.size()], "missing column");
  }

  std::vector<PartBuilder> parts;
  std::map<std::string, std::size_t> part_index;
  std::size_t data_rows = 0;

  for (; next < records.size(); ++next) {
    const Record& rec = records[next];
    if (rec.comment) throw ParseError(rec.line, "", "comment lines are only allowed before the header");
    if (rec.fields.size() != kColumnCount) {
      const std::size_t at = std::min(rec.fields.size(), kColumnCount - 1);
      throw ParseError(rec.line, columns[at],
                       "expected " + std::to_string(kColumnCount) + " fields, found " +
                           std::to_string(rec.fields.size()));
    }
    ++data_rows;
    RowReader row(rec);
    if (row.empty(kPart)) row.fail(kPart, "value is required");
    if (row.empty(kSubpart)) row.fail(kSubpart, "value is required");

    auto [pit, pnew] = part_index.try_emplace(row.text(kPart), parts.size());
    if (pnew) parts.push_back(PartBuilder{row.text(kPart), {}, {}});
    PartBuilder& part = parts[pit->second];
    auto [sit, snew] = part.index.try_emplace(row.text(kSubpart), part.subparts.size());
    if (snew) {
      SubpartBuilder sb;
      sb.subpart.name = row.text(kSubpart);
      part.subparts.push_back(std::move(sb));
    }
    SubpartBuilder& sub = part.subparts[sit->second];

    if (row.empty(kFailureMode)) {
      // Subpart rate declaration: lambda_fit only.
      for (std::size_t c = kSigmaLambda; c < kColumnCount; ++c) {
        if (!row.empty(static_cast<Column>(c))) {
          row.fail(static_cast<Column>(c), "a subpart rate row (empty failure_mode) carries lambda_fit only");
        }
      }
      if (sub.rate_line) row.fail(kLambda, "subpart rate declared twice");
      sub.subpart.lambda_subpart = row.required(kLambda);
      sub.rate_line = rec.line;
      continue;
    }

    const bool has_lambda = !row.empty(kLambda);
    const bool has_fmd = !row.empty(kFmd);
    if (has_lambda == has_fmd) row.fail(kLambda, "exactly one of lambda_fit and fmd_fraction must be set");
    if ((has_fmd && sub.has_direct) || (has_lambda && sub.has_fmd)) {
      row.fail(has_fmd ? kFmd : kLambda, "subpart mixes direct rates and FMD fractions");
    }

    FailureModeRow fm;
    fm.name = row.text(kFailureMode);
    fm.id = default_id(part.name, sub.subpart.name, fm.name);
    if (has_fmd) {
      sub.has_fmd = true;
      fm.fmd = FmdShare{row.number(kFmd), row.number_or_zero(kSigmaLambda)};
    } else {
      sub.has_direct = true;
      fm.lambda_fm = row.number(kLambda);
      fm.sigma_lambda_fm = row.number_or_zero(kSigmaLambda);
    }
    fm.dc = row.required(kDc);
    fm.sigma_dc = row.number_or_zero(kSigmaDc);
    fm.dc_latent = row.number_or_zero(kDcLatent);
    fm.sigma_dc_latent = row.number_or_zero(kSigmaDcLatent);
    if (row.empty(kDcSource)) row.fail(kDcSource, "value is required (expert or faultsim:e=<e>:cl=<level>)");
    auto source = parse_dc_source(row.text(kDcSource));
    if (!source) row.fail(kDcSource, "expected expert or faultsim:e=<e>:cl=<0.90|0.95|0.99>, got \"" +
                                         row.text(kDcSource) + "\"");
    fm.dc_source = *source;
    fm.safety_mechanisms = split_mechanisms(row.text(kSmList));
    sub.subpart.failure_modes.push_back(std::move(fm));
  }
  if (data_rows == 0) throw ParseError(header.line + 1, "", "no data rows");

  for (auto& pb : parts) {
    Part part;
    part.name = pb.name;
    for (auto& sb : pb.subparts) {
      sb.subpart.fmd_mode = sb.has_fmd ? FmdMode::Distribution : FmdMode::DirectLambda;
      part.subparts.push_back(std::move(sb.subpart));
    }
    table.parts.push_back(std::move(part));
  }
  derive_distribution_rates(table);
  require_valid(table);
  return table;
}

namespace {

std::string csv_cell(const std::string& s) {
  const bool needs_quotes = s.find_first_of(",\"\r\n") != std::string::npos ||
                            (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.back() == ' ' ||
                                            s.back() == '\t' || s.front() == '#'));
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::optional<std::string> csv_unrepresentable(const FmedaTable& table) {
  for (const auto& part : table.parts) {
    for (const auto& sub : part.subparts) {
      for (const auto& fm : sub.failure_modes) {
        const std::string where = default_id(part.name, sub.name, fm.name);
        if (fm.name.empty()) return where + ": empty failure-mode name marks a subpart rate row in CSV";
        if (fm.id != where) return where + ": custom id \"" + fm.id + "\" has no CSV column";
        for (const auto& m : fm.safety_mechanisms) {
          if (m.empty() || m.find(';') != std::string::npos || trim(m) != m) {
            return where + ": safety mechanism \"" + m + "\" cannot be written to sm_list";
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::string emit_csv(const FmedaTable& table) {
  if (const auto why = csv_unrepresentable(table)) throw ParameterError("table cannot be written as CSV: " + *why);
  std::string out = std::string("# version: ") + kFormatVersion + "\n";
  if (table.asil_target) out += "# asil_target: " + to_string(*table.asil_target) + "\n";
  const auto& columns = csv_columns();
  for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
  out += "\n";

  for (const auto& part : table.parts) {
    for (const auto& sub : part.subparts) {
      const std::string prefix = csv_cell(part.name) + "," + csv_cell(sub.name) + ",";
      if (sub.lambda_subpart) out += prefix + "," + format_number(*sub.lambda_subpart) + ",,,,,,,,\n";
      for (const auto& fm : sub.failure_modes) {
        out += prefix + csv_cell(fm.name) + ",";
        if (sub.fmd_mode == FmdMode::Distribution && fm.fmd) {
          out += "," + format_number(fm.fmd->sigma) + "," + format_number(fm.fmd->fraction) + ",";
        } else {
          out += format_number(fm.lambda_fm) + "," + format_number(fm.sigma_lambda_fm) + ",,";
        }
        out += format_number(fm.dc) + "," + format_number(fm.sigma_dc) + "," + format_number(fm.dc_latent) +
               "," + format_number(fm.sigma_dc_latent) + "," + format_dc_source(fm.dc_source) + "," +
               csv_cell(join_mechanisms(fm.safety_mechanisms)) + "\n";
      }
    }
  }
  return out;
}

}  // namespace fmeda
