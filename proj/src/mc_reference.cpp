#include "fmeda/mc_reference.hpp"

#include <vector>

#include "fmeda/detail/sample_stream.hpp"

namespace fmeda::reference {

McEstimate estimate_sigma_serial(std::span<const ModeInputs> modes, double lambda_tot, MetricKind metric,
                                 const McConfig& config) {
  McEstimate estimate;
  estimate.metric = metric;
  detail::DrawCounters counters;
  std::vector<double> values;
  values.reserve(config.samples);

  for (std::uint64_t begin = 0, batch = 0; begin < config.samples; begin += kMcBatchSize, ++batch) {
    const std::uint64_t end = std::min(begin + kMcBatchSize, config.samples);
    detail::Perturber perturb(detail::batch_seed(config.seed, batch), config.truncate);
    for (std::uint64_t s = begin; s < end; ++s) {
      double value = 0.0;
      if (detail::sample_metric(modes, lambda_tot, metric, perturb, counters, value)) {
        values.push_back(value);
      } else {
        ++estimate.undefined;
      }
    }
  }

  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  double m2 = 0.0;
  for (double v : values) m2 += (v - mean) * (v - mean);

  estimate.moments.count = values.size();
  estimate.moments.mean = mean;
  estimate.moments.m2 = m2;
  estimate.draws = counters.draws;
  estimate.clamped = counters.clamped;
  return estimate;
}

}  // namespace fmeda::reference
