#include "fmeda/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace fmeda {

SampleSizePlan sample_size(std::uint64_t population, double margin, ConfidenceLevel confidence,
                           double proportion) {
  if (population < 1) throw ParameterError("population must be at least 1");
  if (!(margin > 0.0 && margin < 1.0)) {
    throw ParameterError("margin must lie in (0,1), got " + format_number(margin));
  }
  if (!(proportion > 0.0 && proportion < 1.0)) {
    throw ParameterError("proportion must lie in (0,1), got " + format_number(proportion));
  }

  SampleSizePlan plan;
  plan.population = population;
  plan.proportion = proportion;
  plan.margin = margin;
  plan.confidence = confidence;
  plan.cutoff = cutoff(confidence);

  // Extended precision keeps the ceiling honest for populations up to ~1e18.
  const long double n_pop = static_cast<long double>(population);
  const long double t = plan.cutoff;
  const long double e = margin;
  const long double p = proportion;
  const long double n = n_pop / (1.0L + e * e * (n_pop - 1.0L) / (t * t * p * (1.0L - p)));
  plan.unrounded = static_cast<double>(n);

  const long double rounded = std::ceil(n);
  std::uint64_t size = rounded >= n_pop ? population : static_cast<std::uint64_t>(rounded);
  plan.sample_size = std::max<std::uint64_t>(size, 1);
  return plan;
}

double margin_to_sigma(double margin, ConfidenceLevel confidence) {
  if (!(margin >= 0.0 && margin < 1.0)) {
    throw ParameterError("margin must lie in [0,1), got " + format_number(margin));
  }
  return margin / cutoff(confidence);
}

double margin_to_sigma(double margin, double confidence_level) {
  return margin_to_sigma(margin, require_confidence(confidence_level));
}

FmedaTable apply_faultsim_sigmas(FmedaTable table) {
  for (auto& part : table.parts) {
    for (auto& sub : part.subparts) {
      for (auto& row : sub.failure_modes) {
        const auto* sim = std::get_if<FaultSimulation>(&row.dc_source);
        if (sim == nullptr || row.sigma_dc != 0.0) continue;
        row.sigma_dc = margin_to_sigma(sim->margin, sim->confidence);
      }
    }
  }
  return table;
}

}  // namespace fmeda
