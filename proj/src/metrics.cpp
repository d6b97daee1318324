#include "fmeda/metrics.hpp"

namespace fmeda {

std::string to_string(MetricKind kind) { return kind == MetricKind::SPFM ? "SPFM" : "LFM"; }

double residual_rate(std::span<const ModeInputs> modes) {
  double x = 0.0;
  for (const auto& m : modes) x += (1.0 - m.dc) * m.lambda;
  return x;
}

double latent_pool(std::span<const ModeInputs> modes, double lambda_tot) {
  return lambda_tot - residual_rate(modes);
}

double spfm(std::span<const ModeInputs> modes, double lambda_tot) {
  if (!(lambda_tot > 0.0)) throw UndefinedMetricError("SPFM is undefined: total failure rate is zero");
  return 1.0 - residual_rate(modes) / lambda_tot;
}

double lfm(std::span<const ModeInputs> modes, double lambda_tot) {
  const double pool = latent_pool(modes, lambda_tot);
  if (!(pool > 0.0)) {
    throw UndefinedMetricError(
        "LFM is undefined: every failure mode is a residual fault (no detected pool left for "
        "latent faults)");
  }
  double latent = 0.0;
  for (const auto& m : modes) latent += (1.0 - m.dc_latent) * (m.lambda - (1.0 - m.dc) * m.lambda);
  return 1.0 - latent / pool;
}

MetricValue spfm(const FmedaTable& table) {
  const double total = total_lambda(table);
  const auto modes = flatten(table);
  return {spfm(modes, total), MetricKind::SPFM};
}

MetricValue lfm(const FmedaTable& table) {
  const double total = total_lambda(table);
  const auto modes = flatten(table);
  return {lfm(modes, total), MetricKind::LFM};
}

MetricThresholds default_thresholds(Asil asil) noexcept {
  switch (asil) {
    case Asil::A:
      return {};
    case Asil::B:
      return {0.90, 0.60};
    case Asil::C:
      return {0.97, 0.80};
    case Asil::D:
      return {0.99, 0.90};
  }
  return {};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::PassRobust:
      return "PassRobust";
    case Verdict::PassFragile:
      return "PassFragile";
    case Verdict::Fail:
      return "Fail";
  }
  return "?";
}

Verdict worst(Verdict a, Verdict b) noexcept {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

Verdict classify(double value, double sigma, double k, double threshold) noexcept {
  if (!(value >= threshold)) return Verdict::Fail;
  if (value - k * sigma >= threshold) return Verdict::PassRobust;
  return Verdict::PassFragile;
}

}  // namespace fmeda
