#include "fmeda/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "fmeda/metrics.hpp"

namespace fmeda {

std::string to_string(PropagationMode mode) {
  switch (mode) {
    case PropagationMode::Full:
      return "full";
    case PropagationMode::DcOnly:
      return "dc-only";
    case PropagationMode::LambdaOnly:
      return "lambda-only";
  }
  return "?";
}

std::optional<PropagationMode> propagation_mode_from_string(std::string_view text) noexcept {
  if (text == "full") return PropagationMode::Full;
  if (text == "dc-only") return PropagationMode::DcOnly;
  if (text == "lambda-only") return PropagationMode::LambdaOnly;
  return std::nullopt;
}

namespace {

bool uses_dc(PropagationMode mode) { return mode != PropagationMode::LambdaOnly; }
bool uses_lambda(PropagationMode mode) { return mode != PropagationMode::DcOnly; }

void require_total(double lambda_tot) {
  if (!(lambda_tot > 0.0)) throw UndefinedMetricError("sigma_SPFM is undefined: total failure rate is zero");
}

}  // namespace

std::vector<Partials> spfm_partials(std::span<const ModeInputs> modes, double lambda_tot) {
  require_total(lambda_tot);
  std::vector<Partials> out;
  out.reserve(modes.size());
  for (const auto& m : modes) out.push_back({m.lambda / lambda_tot, -(1.0 - m.dc) / lambda_tot, 0.0});
  return out;
}

std::vector<Partials> lfm_partials(std::span<const ModeInputs> modes, double lambda_tot) {
  // LFM = 1 - N/D, N = sum (1-DCL_i) DC_i lambda_i, D = lambda_tot - sum (1-DC_i) lambda_i
  //   dN/dDC_i = (1-DCL_i) lambda_i      dD/dDC_i = lambda_i
  //   dN/dlambda_i = (1-DCL_i) DC_i      dD/dlambda_i = -(1-DC_i)
  //   dN/dDCL_i = -DC_i lambda_i         dD/dDCL_i = 0
  const double pool = latent_pool(modes, lambda_tot);
  if (!(pool > 0.0)) throw UndefinedMetricError("sigma_LFM is undefined: the latent-fault pool is empty");
  double latent = 0.0;
  for (const auto& m : modes) latent += (1.0 - m.dc_latent) * (m.lambda - (1.0 - m.dc) * m.lambda);

  const double inv = 1.0 / pool;
  const double ratio = latent * inv * inv;
  std::vector<Partials> out;
  out.reserve(modes.size());
  for (const auto& m : modes) {
    Partials p;
    p.d_dc = -(1.0 - m.dc_latent) * m.lambda * inv + ratio * m.lambda;
    p.d_lambda = -(1.0 - m.dc_latent) * m.dc * inv - ratio * (1.0 - m.dc);
    p.d_dc_latent = m.dc * m.lambda * inv;
    out.push_back(p);
  }
  return out;
}

double sigma_spfm(std::span<const ModeInputs> modes, double lambda_tot, PropagationMode mode) {
  require_total(lambda_tot);
  double dc_sum = 0.0;
  double lambda_sum = 0.0;
  for (const auto& m : modes) {
    dc_sum += m.lambda * m.lambda * m.sigma_dc * m.sigma_dc;
    const double residual = 1.0 - m.dc;
    lambda_sum += residual * residual * m.sigma_lambda * m.sigma_lambda;
  }
  double variance = 0.0;
  if (uses_dc(mode)) variance += dc_sum;
  if (uses_lambda(mode)) variance += lambda_sum;
  return std::sqrt(variance) / lambda_tot;
}

double sigma_spfm(const FmedaTable& table, PropagationMode mode) {
  const double total = total_lambda(table);
  return sigma_spfm(flatten(table), total, mode);
}

double sigma_lfm(std::span<const ModeInputs> modes, double lambda_tot, PropagationMode mode) {
  const auto partials = lfm_partials(modes, lambda_tot);
  double variance = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& m = modes[i];
    const auto& p = partials[i];
    if (uses_dc(mode)) {
      variance += p.d_dc * p.d_dc * m.sigma_dc * m.sigma_dc;
      variance += p.d_dc_latent * p.d_dc_latent * m.sigma_dc_latent * m.sigma_dc_latent;
    }
    if (uses_lambda(mode)) variance += p.d_lambda * p.d_lambda * m.sigma_lambda * m.sigma_lambda;
  }
  return std::sqrt(variance);
}

double sigma_lfm(const FmedaTable& table, PropagationMode mode) {
  const double total = total_lambda(table);
  return sigma_lfm(flatten(table), total, mode);
}

Interval confidence_interval(double value, double sigma, ConfidenceLevel level) {
  if (!(sigma >= 0.0)) throw ParameterError("sigma must be non-negative, got " + format_number(sigma));
  const double half = cutoff(level) * sigma;
  Interval out{value - half, value + half, false};
  if (out.lo < 0.0) {
    out.lo = 0.0;
    out.clamped = true;
  }
  if (out.hi > 1.0) {
    out.hi = 1.0;
    out.clamped = true;
  }
  return out;
}

Interval confidence_interval(double value, double sigma, double confidence_level) {
  return confidence_interval(value, sigma, require_confidence(confidence_level));
}

UncertaintyResult propagate(const FmedaTable& table, PropagationMode mode, ConfidenceLevel level) {
  const double total = total_lambda(table);
  const auto modes = flatten(table);

  UncertaintyResult out;
  out.mode = mode;
  out.confidence = level;
  out.k = cutoff(level);
  out.sigma_spfm = sigma_spfm(modes, total, mode);
  out.interval_spfm = confidence_interval(spfm(modes, total), out.sigma_spfm, level);
  if (latent_pool(modes, total) > 0.0) {
    out.sigma_lfm = sigma_lfm(modes, total, mode);
    out.interval_lfm = confidence_interval(lfm(modes, total), *out.sigma_lfm, level);
  }
  return out;
}

}  // namespace fmeda
