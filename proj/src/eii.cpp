#include "fmeda/eii.hpp"

#include <algorithm>
#include <unordered_map>

#include "fmeda/uncertainty.hpp"

namespace fmeda {

std::string to_string(InputKind kind) { return kind == InputKind::DC ? "DC" : "LambdaFm"; }

EiiTable eii_table(const FmedaTable& table) {
  const double total = total_lambda(table);
  const auto refs = rows(table);
  const auto modes = flatten(table);
  const double sigma = sigma_spfm(modes, total, PropagationMode::Full);

  EiiTable out;
  if (!(sigma > 0.0)) {
    out.note = kNoUncertaintyNote;
    return out;
  }

  const double scale = total * total;
  const double raw_denominator = scale * sigma;
  // Shares are normalized by the summed numerators rather than by
  // lambda_tot^2 sigma^2 recomputed from the rounded sigma.
  double variance = 0.0;
  for (const auto& m : modes) {
    variance += m.lambda * m.lambda * m.sigma_dc * m.sigma_dc;
    variance += (1.0 - m.dc) * (1.0 - m.dc) * m.sigma_lambda * m.sigma_lambda;
  }

  auto add = [&](std::size_t i, InputKind kind, double numerator) {
    EiiEntry e;
    e.row_index = i;
    e.failure_mode_id = refs[i].row->id;
    e.input = kind;
    e.raw_eii = numerator / raw_denominator;
    e.variance_share = numerator / variance;
    e.percent = e.variance_share * 100.0;
    out.entries.push_back(std::move(e));
  };

  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& m = modes[i];
    if (m.sigma_dc > 0.0) add(i, InputKind::DC, m.lambda * m.lambda * m.sigma_dc * m.sigma_dc);
    if (m.sigma_lambda > 0.0) {
      add(i, InputKind::LambdaFm, (1.0 - m.dc) * (1.0 - m.dc) * m.sigma_lambda * m.sigma_lambda);
    }
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const EiiEntry& a, const EiiEntry& b) { return a.variance_share > b.variance_share; });
  return out;
}

std::vector<ModeTotal> total_per_failure_mode(const std::vector<EiiEntry>& entries) {
  std::vector<ModeTotal> out;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& e : entries) {
    auto [it, inserted] = index.try_emplace(e.failure_mode_id, out.size());
    if (inserted) out.push_back({e.failure_mode_id, 0.0});
    out[it->second].percent += e.percent;
  }
  return out;
}

std::vector<ModeTotal> total_per_failure_mode(const FmedaTable& table, const std::vector<EiiEntry>& entries) {
  const auto refs = rows(table);
  std::vector<ModeTotal> out;
  out.reserve(refs.size());
  for (const auto& ref : refs) out.push_back({ref.row->id, 0.0});
  for (const auto& e : entries) {
    if (e.row_index < out.size()) out[e.row_index].percent += e.percent;
  }
  return out;
}

}  // namespace fmeda
