#pragma once

// First-order propagation of input standard deviations into the metrics.
//
// Inputs are treated as uncorrelated, so every covariance term is dropped and
//   sigma_f^2 = sum_u (df/du)^2 * sigma_u^2.
// lambda_tot is held at its nominal value while individual failure-mode rates
// move; that is what makes sigma_SPFM = sigma_x / lambda_tot with
// x = sum((1 - DC_i) * lambda_i).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fmeda/confidence.hpp"
#include "fmeda/model.hpp"

namespace fmeda {

enum class PropagationMode {
  Full,        // DC and lambda uncertainties
  DcOnly,      // lambda uncertainties assumed zero
  LambdaOnly,  // DC uncertainties assumed zero
};

std::string to_string(PropagationMode mode);
std::optional<PropagationMode> propagation_mode_from_string(std::string_view text) noexcept;

/// Partial derivatives of a metric with respect to one failure mode's inputs.
struct Partials {
  double d_dc = 0.0;
  double d_lambda = 0.0;
  double d_dc_latent = 0.0;
};

/// dSPFM/dDC_i = lambda_i / lambda_tot, dSPFM/dlambda_i = -(1 - DC_i) / lambda_tot.
std::vector<Partials> spfm_partials(std::span<const ModeInputs> modes, double lambda_tot);

/// Analytic partials of the LFM closed form (lambda_tot fixed).
std::vector<Partials> lfm_partials(std::span<const ModeInputs> modes, double lambda_tot);

/// Closed form:
///   (1/lambda_tot) * sqrt(sum lambda_i^2 sigma_DC_i^2 + sum (1-DC_i)^2 sigma_lambda_i^2)
/// DcOnly drops the second sum, LambdaOnly the first.
double sigma_spfm(std::span<const ModeInputs> modes, double lambda_tot,
                  PropagationMode mode = PropagationMode::Full);
double sigma_spfm(const FmedaTable& table, PropagationMode mode = PropagationMode::Full);

/// sqrt(sum over DC, DC_latent and lambda inputs of (dLFM/du)^2 sigma_u^2).
/// DcOnly drops lambda terms; LambdaOnly drops both coverage terms.
/// Throws UndefinedMetricError where LFM itself is undefined.
double sigma_lfm(std::span<const ModeInputs> modes, double lambda_tot,
                 PropagationMode mode = PropagationMode::Full);
double sigma_lfm(const FmedaTable& table, PropagationMode mode = PropagationMode::Full);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool clamped = false;  // true if either bound was pulled back into [0,1]

  bool operator==(const Interval&) const = default;
};

/// [value - k*sigma, value + k*sigma] clamped to [0,1].
Interval confidence_interval(double value, double sigma, ConfidenceLevel level);
/// Throws ParameterError for levels other than 0.90/0.95/0.99 or sigma < 0.
Interval confidence_interval(double value, double sigma, double confidence_level);

struct UncertaintyResult {
  double sigma_spfm = 0.0;
  std::optional<double> sigma_lfm;  // nullopt where LFM is undefined
  PropagationMode mode = PropagationMode::Full;
  ConfidenceLevel confidence = ConfidenceLevel::P95;
  double k = 0.0;
  Interval interval_spfm;
  std::optional<Interval> interval_lfm;
};

UncertaintyResult propagate(const FmedaTable& table, PropagationMode mode, ConfidenceLevel level);

}  // namespace fmeda
