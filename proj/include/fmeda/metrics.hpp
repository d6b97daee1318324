#pragma once

// Point-estimate hardware architectural metrics.
//
//   SPFM = 1 - sum((1 - DC_i) * lambda_i) / lambda_tot
//   LFM  = 1 - sum((1 - DCL_i) * DC_i * lambda_i) / (lambda_tot - sum((1 - DC_i) * lambda_i))
//
// The span overloads take lambda_tot explicitly so perturbation studies can
// hold it at its nominal value.

#include <optional>
#include <span>
#include <string>

#include "fmeda/model.hpp"

namespace fmeda {

enum class MetricKind { SPFM, LFM };

struct MetricValue {
  double value = 0.0;
  MetricKind kind = MetricKind::SPFM;
};

std::string to_string(MetricKind kind);

MetricValue spfm(const FmedaTable& table);
MetricValue lfm(const FmedaTable& table);

double spfm(std::span<const ModeInputs> modes, double lambda_tot);
double lfm(std::span<const ModeInputs> modes, double lambda_tot);

/// sum((1 - DC_i) * lambda_i): residual (dangerous undetected) rate, FIT.
double residual_rate(std::span<const ModeInputs> modes);

/// lambda_tot minus the residual rate: the pool LFM is measured over.
double latent_pool(std::span<const ModeInputs> modes, double lambda_tot);

/// Target thresholds for one integrity level. nullopt means "no target".
struct MetricThresholds {
  std::optional<double> spfm;
  std::optional<double> lfm;
};

/// Default targets: B 0.90/0.60, C 0.97/0.80, D 0.99/0.90, A none.
MetricThresholds default_thresholds(Asil asil) noexcept;

enum class Verdict { PassRobust, PassFragile, Fail };

std::string to_string(Verdict v);

/// Worst of two verdicts (Fail > PassFragile > PassRobust).
Verdict worst(Verdict a, Verdict b) noexcept;

/// PassRobust if value - k*sigma >= threshold, PassFragile if only the
/// nominal value reaches it, Fail otherwise.
Verdict classify(double value, double sigma, double k, double threshold) noexcept;

}  // namespace fmeda
