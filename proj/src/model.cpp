#include "fmeda/model.hpp"

#include <charconv>
#include <cmath>
#include <unordered_set>

namespace fmeda {

namespace {

class Checker {
 public:
  explicit Checker(std::vector<Violation>& out) : out_(out) {}

  void fail(std::string location, std::string rule, std::string observed) {
    out_.push_back({std::move(location), std::move(rule), std::move(observed)});
  }

  // Finite and >= 0.
  void non_negative(const std::string& where, const char* field, double v, const char* rule) {
    if (!std::isfinite(v)) {
      fail(where + "." + field, "finite", format_number(v));
    } else if (v < 0.0) {
      fail(where + "." + field, rule, format_number(v));
    }
  }

  void unit_interval(const std::string& where, const char* field, double v, const char* rule) {
    if (!std::isfinite(v)) {
      fail(where + "." + field, "finite", format_number(v));
    } else if (v < 0.0 || v > 1.0) {
      fail(where + "." + field, rule, format_number(v));
    }
  }

 private:
  std::vector<Violation>& out_;
};

void check_row(Checker& check, const std::string& where, const FailureModeRow& row) {
  check.non_negative(where, "lambda_fm", row.lambda_fm, "lambda-nonnegative");
  check.non_negative(where, "sigma_lambda_fm", row.sigma_lambda_fm, "sigma-nonnegative");
  check.unit_interval(where, "dc", row.dc, "dc-range");
  check.non_negative(where, "sigma_dc", row.sigma_dc, "sigma-nonnegative");
  check.unit_interval(where, "dc_latent", row.dc_latent, "dc-latent-range");
  check.non_negative(where, "sigma_dc_latent", row.sigma_dc_latent, "sigma-nonnegative");
  if (const auto* sim = std::get_if<FaultSimulation>(&row.dc_source)) {
    if (!(sim->margin > 0.0 && sim->margin < 1.0)) {
      check.fail(where + ".dc_source", "faultsim-margin-range", format_number(sim->margin));
    }
  }
}

void check_distribution(Checker& check, const std::string& where, const Subpart& sub) {
  if (!sub.lambda_subpart) {
    check.fail(where + ".lambda_subpart", "lambda-subpart-required", "missing");
  } else {
    check.non_negative(where, "lambda_subpart", *sub.lambda_subpart, "lambda-nonnegative");
  }
  double sum = 0.0;
  bool complete = true;
  for (const auto& row : sub.failure_modes) {
    const std::string row_where = where + "/" + row.name;
    if (!row.fmd) {
      check.fail(row_where + ".fmd_fraction", "fmd-missing", "missing");
      complete = false;
      continue;
    }
    check.unit_interval(row_where, "fmd_fraction", row.fmd->fraction, "fmd-range");
    check.non_negative(row_where, "sigma_fmd", row.fmd->sigma, "sigma-nonnegative");
    sum += row.fmd->fraction;
    if (sub.lambda_subpart) {
      const double expected = *sub.lambda_subpart * row.fmd->fraction;
      const double expected_sigma = *sub.lambda_subpart * row.fmd->sigma;
      if (row.lambda_fm != expected || row.sigma_lambda_fm != expected_sigma) {
        check.fail(row_where + ".lambda_fm", "fmd-derived-rate", format_number(row.lambda_fm));
      }
    }
  }
  if (complete && std::isfinite(sum) && std::abs(sum - 1.0) > kFmdSumTolerance) {
    check.fail(where, "fmd-sum", format_number(sum));
  }
}

void check_direct(Checker& check, const std::string& where, const Subpart& sub) {
  double sum = 0.0;
  for (const auto& row : sub.failure_modes) {
    if (row.fmd) check.fail(where + "/" + row.name + ".fmd_fraction", "fmd-unexpected", "present");
    sum += row.lambda_fm;
  }
  if (sub.lambda_subpart) {
    const double declared = *sub.lambda_subpart;
    check.non_negative(where, "lambda_subpart", declared, "lambda-nonnegative");
    const double scale = std::max(std::abs(declared), std::abs(sum));
    if (std::isfinite(sum) && std::abs(declared - sum) > kSubpartSumTolerance * scale) {
      check.fail(where + ".lambda_subpart", "lambda-subpart-sum", format_number(sum));
    }
  }
}

}  // namespace

std::string to_string(Asil asil) {
  switch (asil) {
    case Asil::A:
      return "A";
    case Asil::B:
      return "B";
    case Asil::C:
      return "C";
    case Asil::D:
      return "D";
  }
  return "?";
}

std::optional<Asil> asil_from_string(std::string_view text) noexcept {
  if (text == "A") return Asil::A;
  if (text == "B") return Asil::B;
  if (text == "C") return Asil::C;
  if (text == "D") return Asil::D;
  return std::nullopt;
}

std::vector<Violation> validate(const FmedaTable& table) {
  std::vector<Violation> out;
  Checker check(out);
  std::unordered_set<std::string> ids;
  double total = 0.0;

  for (const auto& part : table.parts) {
    for (const auto& sub : part.subparts) {
      const std::string sub_where = part.name + "/" + sub.name;
      for (const auto& row : sub.failure_modes) {
        const std::string where = sub_where + "/" + row.name;
        check_row(check, where, row);
        if (!ids.insert(row.id).second) check.fail(where + ".id", "id-unique", row.id);
        total += row.lambda_fm;
      }
      if (sub.fmd_mode == FmdMode::Distribution) {
        check_distribution(check, sub_where, sub);
      } else {
        check_direct(check, sub_where, sub);
      }
    }
  }
  if (!(total > 0.0)) check.fail("table", "lambda-tot-positive", format_number(total));
  return out;
}

void require_valid(const FmedaTable& table) {
  auto violations = validate(table);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

double total_lambda(const FmedaTable& table) {
  require_valid(table);
  double total = 0.0;
  for (const auto& part : table.parts)
    for (const auto& sub : part.subparts)
      for (const auto& row : sub.failure_modes) total += row.lambda_fm;
  return total;
}

std::vector<ModeInputs> flatten(const FmedaTable& table) {
  std::vector<ModeInputs> out;
  for (const auto& ref : rows(table)) {
    const auto& r = *ref.row;
    out.push_back({r.lambda_fm, r.sigma_lambda_fm, r.dc, r.sigma_dc, r.dc_latent, r.sigma_dc_latent});
  }
  return out;
}

std::vector<RowRef> rows(const FmedaTable& table) {
  std::vector<RowRef> out;
  for (const auto& part : table.parts)
    for (const auto& sub : part.subparts)
      for (const auto& row : sub.failure_modes) out.push_back({&part, &sub, &row});
  return out;
}

void derive_distribution_rates(FmedaTable& table) {
  for (auto& part : table.parts) {
    for (auto& sub : part.subparts) {
      if (sub.fmd_mode != FmdMode::Distribution || !sub.lambda_subpart) continue;
      for (auto& row : sub.failure_modes) {
        if (!row.fmd) continue;
        row.lambda_fm = *sub.lambda_subpart * row.fmd->fraction;
        row.sigma_lambda_fm = *sub.lambda_subpart * row.fmd->sigma;
      }
    }
  }
}

FmedaTable to_direct_lambda(FmedaTable table) {
  derive_distribution_rates(table);
  for (auto& part : table.parts) {
    for (auto& sub : part.subparts) {
      if (sub.fmd_mode != FmdMode::Distribution) continue;
      sub.fmd_mode = FmdMode::DirectLambda;
      sub.lambda_subpart.reset();
      for (auto& row : sub.failure_modes) row.fmd.reset();
    }
  }
  return table;
}

std::string default_id(std::string_view part, std::string_view subpart, std::string_view mode) {
  std::string id;
  id.reserve(part.size() + subpart.size() + mode.size() + 2);
  id.append(part).append("/").append(subpart).append("/").append(mode);
  return id;
}

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

}  // namespace fmeda
